#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "minspec/graph.hpp"
#include "minspec/io.hpp"
#include "minspec/refinement.hpp"

namespace minspec {

struct CanonicalForm {
    std::vector<int> labeling;                  // vertex v -> canonical position
    std::string key;                            // graph6 of the canonically relabeled graph
    std::vector<std::vector<int>> automorphisms;  // generators found during search
};

namespace detail {

class CanonicalSearch {
public:
    explicit CanonicalSearch(const Graph& g) : g_(g), n_(g.order()) {}

    CanonicalForm run(const Coloring& seed) {
        CanonicalForm out;
        if (n_ == 0) {
            out.key = to_graph6(g_);
            return out;
        }
        Coloring c = refine(g_, seed);
        std::vector<int> prefix;
        search(c, prefix);
        out.labeling = best_labeling_;
        out.key = best_key_;
        out.automorphisms = std::move(automorphisms_);
        return out;
    }

private:
    static constexpr int kNoJump = 1 << 30;

    std::string leaf_key(const Coloring& c) const { return to_graph6(g_.relabeled(c)); }

    // Position-i vertex of a discrete coloring.
    static std::vector<int> inverse(const Coloring& c) {
        std::vector<int> inv(c.size());
        for (std::size_t v = 0; v < c.size(); ++v) inv[static_cast<std::size_t>(c[v])] = static_cast<int>(v);
        return inv;
    }

    static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
        std::size_t i = 0;
        while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
        return static_cast<int>(i);
    }

    // gamma maps the vertex at position i of `from` to the vertex at position i of `to`.
    void record_automorphism(const Coloring& from, const Coloring& to) {
        auto inv_to = inverse(to);
        std::vector<int> gamma(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) gamma[static_cast<std::size_t>(v)] = inv_to[static_cast<std::size_t>(from[static_cast<std::size_t>(v)])];
        automorphisms_.push_back(std::move(gamma));
    }

    int leaf(const Coloring& c, const std::vector<int>& prefix) {
        std::string key = leaf_key(c);
        if (first_key_.empty()) {
            first_key_ = best_key_ = key;
            first_coloring_ = best_coloring_ = c;
            first_path_ = best_path_ = prefix;
            best_labeling_ = c;
            return kNoJump;
        }
        if (key == first_key_) {
            record_automorphism(c, first_coloring_);
            return common_prefix(prefix, first_path_);
        }
        if (key == best_key_) {
            record_automorphism(c, best_coloring_);
            return common_prefix(prefix, best_path_);
        }
        if (key < best_key_) {
            best_key_ = std::move(key);
            best_coloring_ = c;
            best_path_ = prefix;
            best_labeling_ = c;
        }
        return kNoJump;
    }

    // Orbit representative map under stored automorphisms fixing prefix pointwise.
    std::vector<int> orbits(const std::vector<int>& prefix) const {
        std::vector<int> parent(static_cast<std::size_t>(n_));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        for (const auto& gamma : automorphisms_) {
            bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return gamma[static_cast<std::size_t>(p)] == p; });
            if (!fixes) continue;
            for (int v = 0; v < n_; ++v) {
                int a = find(v), b = find(gamma[static_cast<std::size_t>(v)]);
                if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
        }
        for (int v = 0; v < n_; ++v) parent[static_cast<std::size_t>(v)] = find(v);
        return parent;
    }

    // Returns the depth to resume at, or kNoJump.
    int search(const Coloring& c, std::vector<int>& prefix) {
        std::vector<int> size(static_cast<std::size_t>(n_), 0);
        for (int col : c) ++size[static_cast<std::size_t>(col)];
        int target = -1;
        for (int k = 0; k < n_; ++k)
            if (size[static_cast<std::size_t>(k)] > 1) {
                target = k;
                break;
            }
        if (target < 0) return leaf(c, prefix);

        const int depth = static_cast<int>(prefix.size());
        std::vector<int> explored;
        for (int v = 0; v < n_; ++v) {
            if (c[static_cast<std::size_t>(v)] != target) continue;
            if (!explored.empty()) {
                auto orb = orbits(prefix);
                bool seen = std::any_of(explored.begin(), explored.end(), [&](int u) {
                    return orb[static_cast<std::size_t>(u)] == orb[static_cast<std::size_t>(v)];
                });
                if (seen) continue;
            }
            explored.push_back(v);
            // Individualize v: it keeps the cell's rank, the rest of the cell moves after it.
            Coloring child(c.size());
            for (int w = 0; w < n_; ++w) {
                int col = c[static_cast<std::size_t>(w)];
                child[static_cast<std::size_t>(w)] = 2 * col + ((col == target && w != v) ? 1 : 0);
            }
            prefix.push_back(v);
            int jump = search(refine(g_, std::move(child)), prefix);
            prefix.pop_back();
            if (jump < depth) return jump;
        }
        return kNoJump;
    }

    const Graph& g_;
    int n_;
    std::string first_key_, best_key_;
    Coloring first_coloring_, best_coloring_;
    std::vector<int> first_path_, best_path_;
    std::vector<int> best_labeling_;
    std::vector<std::vector<int>> automorphisms_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g, const Coloring& seed) {
    return detail::CanonicalSearch(g).run(seed);
}

inline CanonicalForm canonical_form(const Graph& g) {
    return canonical_form(g, Coloring(static_cast<std::size_t>(g.order()), 0));
}

// Equal keys iff the graphs are isomorphic.
inline std::string canonical_key(const Graph& g) { return canonical_form(g).key; }

inline Graph canonical_graph(const Graph& g) { return from_graph6(canonical_key(g)); }

inline bool isomorphic(const Graph& a, const Graph& b) {
    return a.order() == b.order() && a.size() == b.size() && canonical_key(a) == canonical_key(b);
}

}  // namespace minspec
