#pragma once

// Slow, independent reference implementations used only by the tests.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "minspec/graph.hpp"

namespace oracle {

using minspec::Edge;
using minspec::Graph;

inline bool connected_without(const Graph& g, std::uint64_t removed_vertices) {
    int n = g.order();
    int start = -1, alive = 0;
    for (int v = 0; v < n; ++v)
        if (!(removed_vertices >> v & 1)) {
            if (start < 0) start = v;
            ++alive;
        }
    if (alive <= 1) return true;
    std::vector<int> stack{start};
    std::uint64_t seen = 1ULL << start;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w)
            if (g.has_edge(v, w) && !(removed_vertices >> w & 1) && !(seen >> w & 1)) {
                seen |= 1ULL << w;
                ++count;
                stack.push_back(w);
            }
    }
    return count == alive;
}

// Smallest vertex set whose removal disconnects g or leaves one vertex.
inline int vertex_connectivity(const Graph& g) {
    const int n = g.order();
    if (!connected_without(g, 0)) return 0;
    for (int k = 0; k < n; ++k) {
        for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
            if (std::popcount(s) != k) continue;
            if (n - k <= 1 || !connected_without(g, s)) return k;
        }
    }
    return n - 1;
}

inline bool connected_edges(int n, const std::vector<Edge>& es) {
    Graph h(n);
    for (const auto& e : es) h.add_edge(e.u, e.v);
    return minspec::is_connected(h);
}

// Smallest edge set whose removal disconnects g; 0 for a single vertex.
inline int edge_connectivity(const Graph& g) {
    const int n = g.order();
    if (n <= 1) return 0;
    const auto es = g.edges();
    const int m = static_cast<int>(es.size());
    for (int k = 0; k <= m; ++k)
        for (std::uint64_t s = 0; s < (1ULL << m); ++s) {
            if (std::popcount(s) != k) continue;
            std::vector<Edge> keep;
            for (int i = 0; i < m; ++i)
                if (!(s >> i & 1)) keep.push_back(es[static_cast<std::size_t>(i)]);
            if (!connected_edges(n, keep)) return k;
        }
    return m;
}

struct Cycle {
    std::uint64_t vertices = 0;
    std::vector<Edge> edges;
};

// All cycles, found as edge subsets that are connected and 2-regular on their support.
inline std::vector<Cycle> all_cycles(const Graph& g) {
    const auto es = g.edges();
    const int m = static_cast<int>(es.size());
    std::vector<Cycle> out;
    for (std::uint64_t s = 1; s < (1ULL << m); ++s) {
        if (std::popcount(s) < 3) continue;
        std::vector<int> deg(static_cast<std::size_t>(g.order()), 0);
        std::vector<Edge> chosen;
        std::uint64_t verts = 0;
        for (int i = 0; i < m; ++i)
            if (s >> i & 1) {
                const Edge& e = es[static_cast<std::size_t>(i)];
                ++deg[static_cast<std::size_t>(e.u)];
                ++deg[static_cast<std::size_t>(e.v)];
                verts |= 1ULL << e.u | 1ULL << e.v;
                chosen.push_back(e);
            }
        bool two_regular = true;
        for (int v = 0; v < g.order(); ++v)
            if ((verts >> v & 1) && deg[static_cast<std::size_t>(v)] != 2) two_regular = false;
        if (!two_regular) continue;
        // Connected on its support.
        Graph h(g.order());
        for (const auto& e : chosen) h.add_edge(e.u, e.v);
        int start = std::countr_zero(verts);
        if ((minspec::reachable(h, start).to_vector().size()) != static_cast<std::size_t>(std::popcount(verts))) continue;
        out.push_back({verts, chosen});
    }
    return out;
}

inline bool has_chorded_cycle(const Graph& g) {
    for (const auto& c : all_cycles(g))
        for (const auto& e : g.edges())
            if ((c.vertices >> e.u & 1) && (c.vertices >> e.v & 1) &&
                std::find(c.edges.begin(), c.edges.end(), e) == c.edges.end())
                return true;
    return false;
}

inline int min_degree2_on_cycles(const Graph& g) {
    int best = 1 << 30;
    for (const auto& c : all_cycles(g)) {
        int k = 0;
        for (int v = 0; v < g.order(); ++v)
            if ((c.vertices >> v & 1) && g.degree(v) == 2) ++k;
        best = std::min(best, k);
    }
    return best;
}

inline double eigen_rho(const Graph& g) {
    const int n = g.order();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

// Plain bisection of a sign change of f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Backtracking isomorphism test respecting degrees.
inline bool isomorphic(const Graph& a, const Graph& b) {
    const int n = a.order();
    if (n != b.order() || a.size() != b.size()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < n; ++v) {
        da.push_back(a.degree(v));
        db.push_back(b.degree(v));
    }
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<bool(int)> extend = [&](int v) {
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)] || db[static_cast<std::size_t>(w)] != da[static_cast<std::size_t>(v)]) continue;
            bool ok = true;
            for (int p = 0; p < v && ok; ++p)
                if (a.has_edge(p, v) != b.has_edge(map[static_cast<std::size_t>(p)], w)) ok = false;
            if (!ok) continue;
            map[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = true;
            if (extend(v + 1)) return true;
            used[static_cast<std::size_t>(w)] = false;
        }
        return false;
    };
    return extend(0);
}

// Isomorphism classes, one representative each, of every labeled graph on
// n <= max_order vertices with exactly m edges, minimum degree >= 2, accepted by keep.
inline std::vector<Graph> labeled_min_degree2_classes(int m, int max_order, const std::function<bool(const Graph&)>& keep) {
    std::map<std::vector<int>, std::vector<Graph>> buckets;
    std::vector<Graph> reps;
    for (int n = 2; n <= max_order; ++n) {
        std::vector<Edge> all;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
        if (static_cast<int>(all.size()) < m) continue;
        Graph g(n);
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        // Edges run row by row, so after (u, n-1) the degree of u is final.
        auto final_too_small = [&](const Edge& e) { return e.v == n - 1 && deg[static_cast<std::size_t>(e.u)] < 2; };
        std::function<void(std::size_t, int)> choose = [&](std::size_t i, int left) {
            if (left == 0) {
                if (g.min_degree() < 2 || !keep(g)) return;
                std::vector<int> inv = deg;
                std::sort(inv.begin(), inv.end());
                auto& bucket = buckets[inv];
                for (const auto& r : bucket)
                    if (oracle::isomorphic(r, g)) return;
                bucket.push_back(g);
                reps.push_back(g);
                return;
            }
            if (all.size() - i < static_cast<std::size_t>(left)) return;
            const Edge e = all[i];
            g.add_edge(e.u, e.v);
            ++deg[static_cast<std::size_t>(e.u)];
            ++deg[static_cast<std::size_t>(e.v)];
            if (!final_too_small(e)) choose(i + 1, left - 1);
            g.remove_edge(e.u, e.v);
            --deg[static_cast<std::size_t>(e.u)];
            --deg[static_cast<std::size_t>(e.v)];
            if (!final_too_small(e)) choose(i + 1, left);
        };
        choose(0, m);
    }
    return reps;
}

inline Graph random_connected_graph(std::mt19937_64& rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    while (true) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng)) g.add_edge(u, v);
        if (minspec::is_connected(g)) return g;
    }
}

}  // namespace oracle
