#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "minspec/connectivity.hpp"
#include "minspec/families.hpp"
#include "minspec/graph.hpp"
#include "minspec/spectral.hpp"

namespace minspec {

// Slack allowed when comparing Perron entries in a transform hypothesis; exact
// ties (from symmetry) show up as differences of a few ulps.
inline constexpr double kPerronComparisonSlack = 1e-12;

struct TransformOutcome {
    Graph before;
    Graph after;
    double rho_before = 0.0;
    double rho_after = 0.0;
    bool hypothesis_held = false;
    // False when the operation left the edge set unchanged.
    bool changed = false;
};

class TransformError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline TransformOutcome finish(const Graph& before, Graph after, const SpectrumResult& sr, bool hypothesis) {
    TransformOutcome out;
    out.before = before;
    out.changed = !(after == before);
    out.rho_before = sr.rho;
    out.rho_after = out.changed ? spectral_radius_value(after) : sr.rho;
    out.after = std::move(after);
    out.hypothesis_held = hypothesis;
    return out;
}

inline void require_vertex(const Graph& g, int v, const char* what) {
    if (!g.contains(v)) throw TransformError(std::string(what) + ": vertex " + std::to_string(v) + " out of range");
}

}  // namespace detail

// Moves the edges v-s (s in moved) onto u. Hypothesis: x_u >= x_v.
inline TransformOutcome rotate(const Graph& g, int u, int v, const std::vector<int>& moved) {
    detail::require_vertex(g, u, "rotate");
    detail::require_vertex(g, v, "rotate");
    if (u == v) throw TransformError("rotate: u and v must differ");
    if (!is_connected(g)) throw TransformError("rotate: graph must be connected");
    VertexSet allowed = g.neighbors(v) - g.neighbors(u);
    allowed.reset(u);
    Graph after = g;
    for (int s : moved) {
        detail::require_vertex(g, s, "rotate");
        if (!allowed.test(s)) throw TransformError("rotate: vertex " + std::to_string(s) + " not in N(v) \\ N(u)");
        after.remove_edge(v, s);
        after.add_edge(u, s);
    }
    SpectrumResult sr = spectral_radius(g);
    const auto& x = sr.perron;
    bool hyp = x[static_cast<std::size_t>(u)] >= x[static_cast<std::size_t>(v)] - kPerronComparisonSlack;
    return detail::finish(g, std::move(after), sr, hyp);
}

// Deletes all V-U edges and adds all V-W edges. Hypothesis: sum x_U <= sum x_W.
inline TransformOutcome kelmans_move(const Graph& g, const std::vector<int>& U, const std::vector<int>& V,
                                     const std::vector<int>& W) {
    if (!is_connected(g)) throw TransformError("kelmans_move: graph must be connected");
    VertexSet su, sv, sw;
    auto load = [&](const std::vector<int>& xs, VertexSet& s) {
        for (int x : xs) {
            detail::require_vertex(g, x, "kelmans_move");
            s.set(x);
        }
    };
    load(U, su);
    load(V, sv);
    load(W, sw);
    if (!(su & sv).empty() || !(su & sw).empty() || !(sv & sw).empty())
        throw TransformError("kelmans_move: U, V, W must be pairwise disjoint");
    for (int v : V)
        if (!(g.neighbors(v) & sw).empty()) throw TransformError("kelmans_move: V and W must have no edges between them");
    Graph after = g;
    for (int v : V) {
        (g.neighbors(v) & su).for_each([&](int x) { after.remove_edge(v, x); });
        sw.for_each([&](int w) { after.add_edge(v, w); });
    }
    SpectrumResult sr = spectral_radius(g);
    double sum_u = 0.0, sum_w = 0.0;
    for (int x : U) sum_u += sr.perron[static_cast<std::size_t>(x)];
    for (int x : W) sum_w += sr.perron[static_cast<std::size_t>(x)];
    return detail::finish(g, std::move(after), sr, sum_u <= sum_w + kPerronComparisonSlack);
}

struct CoalescenceBound {
    double lhs = 0.0;  // rho of the coalescence
    double rhs = 0.0;  // sqrt(rho(g)^2 + rho(h)^2)
    bool equality = false;
};

inline CoalescenceBound coalescence_bound(const Graph& g, int u, const Graph& h, int v) {
    if (!is_connected(g) || !is_connected(h)) throw TransformError("coalescence_bound: operands must be connected");
    CoalescenceBound b;
    b.lhs = spectral_radius(coalescence(g, u, h, v)).rho;
    const double rg = spectral_radius(g).rho, rh = spectral_radius(h).rho;
    b.rhs = std::sqrt(rg * rg + rh * rh);
    b.equality = std::abs(b.lhs - b.rhs) <= kRhoEqualityTolerance;
    return b;
}

// Star K_{1,k} (k >= 1) rooted at its center.
inline bool is_star_rooted_at_center(const Graph& g, int root) {
    if (g.order() < 2 || !is_connected(g) || g.size() != g.order() - 1) return false;
    return g.degree(root) == g.order() - 1;
}

// Re-roots the leaf block `block_index` from its cut vertex u onto `target`.
inline Graph leaf_block_transfer(const Graph& g, int block_index, int target) {
    if (!is_minimally_2_edge_connected(g)) throw TransformError("leaf_block_transfer: graph is not minimally 2-edge-connected");
    detail::require_vertex(g, target, "leaf_block_transfer");
    const BlockDecomposition d = blocks(g);
    if (block_index < 0 || block_index >= static_cast<int>(d.blocks.size()))
        throw TransformError("leaf_block_transfer: block index out of range");
    if (std::find(d.leaf_blocks.begin(), d.leaf_blocks.end(), block_index) == d.leaf_blocks.end())
        throw TransformError("leaf_block_transfer: block " + std::to_string(block_index) + " is not a leaf block");
    const auto& members = d.blocks[static_cast<std::size_t>(block_index)];
    int cut = -1;
    for (int v : members)
        if (std::find(d.cut_vertices.begin(), d.cut_vertices.end(), v) != d.cut_vertices.end()) cut = v;
    if (target == cut) throw TransformError("leaf_block_transfer: target equals the block's cut vertex");
    VertexSet block;
    for (int v : members) block.set(v);
    if (block.test(target))
        throw TransformError("leaf_block_transfer: target " + std::to_string(target) +
                             " lies in the leaf block; re-rooted edges would duplicate existing edges");
    Graph out = g;
    (g.neighbors(cut) & block).for_each([&](int w) {
        out.remove_edge(cut, w);
        out.add_edge(target, w);
    });
    return out;
}

}  // namespace minspec
