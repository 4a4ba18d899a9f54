#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "minspec/graph.hpp"

namespace minspec {

struct ConnectivityReport {
    int kappa = 0;
    int kappa_prime = 0;
    int delta = 0;
    std::vector<int> cut_vertices;
    std::vector<Edge> bridges;
};

struct BlockDecomposition {
    // Each block is a sorted vertex list; a bridge appears as a two-vertex block.
    std::vector<std::vector<int>> blocks;
    std::vector<int> cut_vertices;
    std::vector<int> leaf_blocks;
};

struct ChordWitness {
    std::vector<int> cycle;  // closed walk order, first vertex not repeated
    Edge chord;
};

namespace detail {

// Vertices reachable from `start` using only vertices in `allowed`.
inline VertexSet reachable_within(const Graph& g, int start, const VertexSet& allowed) {
    VertexSet seen;
    seen.set(start);
    VertexSet frontier = seen;
    while (!frontier.empty()) {
        VertexSet next;
        frontier.for_each([&](int v) { next |= g.neighbors(v); });
        next &= allowed;
        next -= seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

// Unit-capacity augmenting-path flow on a dense residual matrix.
class UnitFlow {
public:
    explicit UnitFlow(int nodes) : n_(nodes), cap_(static_cast<std::size_t>(nodes * nodes), 0) {}

    int& cap(int a, int b) { return cap_[static_cast<std::size_t>(a * n_ + b)]; }

    // Pushes up to `limit` units from s to t; returns the value reached.
    int run(int s, int t, int limit) {
        int flow = 0;
        std::vector<int> parent(static_cast<std::size_t>(n_));
        while (flow < limit) {
            std::fill(parent.begin(), parent.end(), -1);
            parent[static_cast<std::size_t>(s)] = s;
            std::queue<int> q;
            q.push(s);
            while (!q.empty() && parent[static_cast<std::size_t>(t)] < 0) {
                int a = q.front();
                q.pop();
                for (int b = 0; b < n_; ++b)
                    if (parent[static_cast<std::size_t>(b)] < 0 && cap(a, b) > 0) {
                        parent[static_cast<std::size_t>(b)] = a;
                        q.push(b);
                    }
            }
            if (parent[static_cast<std::size_t>(t)] < 0) break;
            for (int b = t; b != s; b = parent[static_cast<std::size_t>(b)]) {
                int a = parent[static_cast<std::size_t>(b)];
                --cap(a, b);
                ++cap(b, a);
            }
            ++flow;
        }
        return flow;
    }

private:
    int n_;
    std::vector<int> cap_;
};

inline constexpr int kBig = 1 << 20;

// Internally vertex-disjoint s-t paths (s != t, not adjacent), at most `limit`.
inline std::vector<std::vector<int>> disjoint_paths(const Graph& g, int s, int t, int limit) {
    const int n = g.order();
    auto in = [](int v) { return 2 * v; };
    auto out = [](int v) { return 2 * v + 1; };
    UnitFlow f(2 * n);
    for (int v = 0; v < n; ++v) f.cap(in(v), out(v)) = (v == s || v == t) ? kBig : 1;
    for (const Edge& e : g.edges()) {
        f.cap(out(e.u), in(e.v)) = 1;
        f.cap(out(e.v), in(e.u)) = 1;
    }
    // Snapshot arc capacities so flow can be read back as (original - residual).
    UnitFlow original = f;
    int value = f.run(out(s), in(t), limit);

    std::vector<std::vector<int>> paths;
    std::vector<std::vector<int>> used(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (const Edge& e : g.edges()) {
        int uv = original.cap(out(e.u), in(e.v)) - f.cap(out(e.u), in(e.v));
        int vu = original.cap(out(e.v), in(e.u)) - f.cap(out(e.v), in(e.u));
        // Opposite flows on one edge cancel.
        int net = uv - vu;
        if (net > 0) used[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = 1;
        if (net < 0) used[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
    }
    for (int p = 0; p < value; ++p) {
        std::vector<int> path{s};
        int cur = s;
        while (cur != t) {
            int nxt = -1;
            for (int w = 0; w < n && nxt < 0; ++w)
                if (used[static_cast<std::size_t>(cur)][static_cast<std::size_t>(w)]) nxt = w;
            if (nxt < 0) break;
            used[static_cast<std::size_t>(cur)][static_cast<std::size_t>(nxt)] = 0;
            path.push_back(nxt);
            cur = nxt;
        }
        paths.push_back(std::move(path));
    }
    return paths;
}

struct LowpointState {
    std::vector<int> disc, low;
    std::vector<Edge> edge_stack;
    std::vector<std::vector<int>> blocks;
    std::vector<bool> is_cut;
    std::vector<Edge> bridges;
    int time = 0;
};

inline void lowpoint_dfs(const Graph& g, int v, int parent, LowpointState& st) {
    st.disc[static_cast<std::size_t>(v)] = st.low[static_cast<std::size_t>(v)] = st.time++;
    int children = 0;
    g.neighbors(v).for_each([&](int w) {
        auto vi = static_cast<std::size_t>(v);
        auto wi = static_cast<std::size_t>(w);
        if (st.disc[wi] < 0) {
            ++children;
            st.edge_stack.emplace_back(v, w);
            lowpoint_dfs(g, w, v, st);
            st.low[vi] = std::min(st.low[vi], st.low[wi]);
            if (st.low[wi] > st.disc[vi]) st.bridges.emplace_back(v, w);
            if (st.low[wi] >= st.disc[vi]) {
                if (parent >= 0) st.is_cut[vi] = true;
                VertexSet members;
                Edge top;
                do {
                    top = st.edge_stack.back();
                    st.edge_stack.pop_back();
                    members.set(top.u);
                    members.set(top.v);
                } while (!(top == Edge(v, w)));
                st.blocks.push_back(members.to_vector());
            }
        } else if (w != parent && st.disc[wi] < st.disc[vi]) {
            st.edge_stack.emplace_back(v, w);
            st.low[vi] = std::min(st.low[vi], st.disc[wi]);
        }
    });
    if (parent < 0 && children > 1) st.is_cut[static_cast<std::size_t>(v)] = true;
}

inline LowpointState lowpoint(const Graph& g) {
    LowpointState st;
    auto n = static_cast<std::size_t>(g.order());
    st.disc.assign(n, -1);
    st.low.assign(n, -1);
    st.is_cut.assign(n, false);
    for (int v = 0; v < g.order(); ++v)
        if (st.disc[static_cast<std::size_t>(v)] < 0) {
            if (g.degree(v) == 0) st.blocks.push_back({v});
            lowpoint_dfs(g, v, -1, st);
        }
    return st;
}

}  // namespace detail

inline std::vector<int> cut_vertices(const Graph& g) {
    auto st = detail::lowpoint(g);
    std::vector<int> out;
    for (int v = 0; v < g.order(); ++v)
        if (st.is_cut[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

inline std::vector<Edge> bridges(const Graph& g) {
    auto st = detail::lowpoint(g);
    std::sort(st.bridges.begin(), st.bridges.end());
    return st.bridges;
}

// Number of internally disjoint s-t paths for non-adjacent s, t.
inline int local_vertex_connectivity(const Graph& g, int s, int t) {
    return static_cast<int>(detail::disjoint_paths(g, s, t, g.order()).size());
}

// Maximum number of edge-disjoint s-t paths.
inline int local_edge_connectivity(const Graph& g, int s, int t) {
    detail::UnitFlow f(g.order());
    for (const Edge& e : g.edges()) {
        f.cap(e.u, e.v) = 1;
        f.cap(e.v, e.u) = 1;
    }
    return f.run(s, t, g.order());
}

// Minimum vertex cut over non-adjacent pairs; K_n gives n-1 and K_1 gives 0.
inline int vertex_connectivity(const Graph& g) {
    const int n = g.order();
    if (n <= 1) return 0;
    if (!is_connected(g)) return 0;
    int best = n - 1;
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t)
            if (!g.has_edge(s, t)) best = std::min(best, local_vertex_connectivity(g, s, t));
    return best;
}

inline int edge_connectivity(const Graph& g) {
    const int n = g.order();
    if (n <= 1) return 0;
    if (!is_connected(g)) return 0;
    int best = std::numeric_limits<int>::max();
    for (int t = 1; t < n; ++t) best = std::min(best, local_edge_connectivity(g, 0, t));
    return best;
}

inline ConnectivityReport connectivity(const Graph& g) {
    ConnectivityReport r;
    r.kappa = vertex_connectivity(g);
    r.kappa_prime = edge_connectivity(g);
    r.delta = g.order() == 0 ? 0 : g.min_degree();
    r.cut_vertices = cut_vertices(g);
    r.bridges = bridges(g);
    return r;
}

// kappa >= 2 (n >= 3, connected, no cut vertex).
inline bool is_2_connected(const Graph& g) {
    return g.order() >= 3 && is_connected(g) && cut_vertices(g).empty();
}

// kappa' >= 2 (n >= 2, connected, no bridge).
inline bool is_2_edge_connected(const Graph& g) {
    return g.order() >= 2 && is_connected(g) && bridges(g).empty();
}

inline BlockDecomposition blocks(const Graph& g) {
    if (g.order() == 0 || !is_connected(g)) throw Error("blocks: graph is not connected");
    auto st = detail::lowpoint(g);
    BlockDecomposition d;
    d.blocks = std::move(st.blocks);
    std::sort(d.blocks.begin(), d.blocks.end());
    for (int v = 0; v < g.order(); ++v)
        if (st.is_cut[static_cast<std::size_t>(v)]) d.cut_vertices.push_back(v);
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        int cuts = 0;
        for (int v : d.blocks[i])
            if (st.is_cut[static_cast<std::size_t>(v)]) ++cuts;
        if (cuts == 1) d.leaf_blocks.push_back(static_cast<int>(i));
    }
    return d;
}

// Edge uv is a chord of some cycle iff g - uv still joins u and v by two
// internally disjoint paths, i.e. no single vertex separates them.
inline bool is_chord(const Graph& g, const Edge& e) {
    const Graph h = g.without_edge(e.u, e.v);
    VertexSet all = h.vertex_set();
    VertexSet reach = detail::reachable_within(h, e.u, all);
    if (!reach.test(e.v)) return false;
    // Any separating vertex lies on every u-v path; test those of a BFS path.
    std::vector<int> parent(static_cast<std::size_t>(h.order()), -1);
    std::queue<int> q;
    q.push(e.u);
    parent[static_cast<std::size_t>(e.u)] = e.u;
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        h.neighbors(a).for_each([&](int b) {
            if (parent[static_cast<std::size_t>(b)] < 0) {
                parent[static_cast<std::size_t>(b)] = a;
                q.push(b);
            }
        });
    }
    for (int w = parent[static_cast<std::size_t>(e.v)]; w != e.u; w = parent[static_cast<std::size_t>(w)]) {
        VertexSet allowed = all;
        allowed.reset(w);
        if (!detail::reachable_within(h, e.u, allowed).test(e.v)) return false;
    }
    return true;
}

inline std::optional<ChordWitness> find_chorded_cycle(const Graph& g) {
    for (const Edge& e : g.edges()) {
        if (!is_chord(g, e)) continue;
        auto paths = detail::disjoint_paths(g.without_edge(e.u, e.v), e.u, e.v, 2);
        ChordWitness w;
        w.chord = e;
        w.cycle = paths[0];
        w.cycle.pop_back();
        for (auto it = paths[1].rbegin(); it != paths[1].rend() - 1; ++it) w.cycle.push_back(*it);
        return w;
    }
    return std::nullopt;
}

inline bool has_chorded_cycle(const Graph& g) {
    for (const Edge& e : g.edges())
        if (is_chord(g, e)) return true;
    return false;
}

inline bool is_minimally_2_connected(const Graph& g) {
    if (!is_2_connected(g)) return false;
    for (const Edge& e : g.edges())
        if (is_2_connected(g.without_edge(e.u, e.v))) return false;
    return true;
}

inline bool is_minimally_2_edge_connected(const Graph& g) {
    if (!is_2_edge_connected(g)) return false;
    for (const Edge& e : g.edges())
        if (is_2_edge_connected(g.without_edge(e.u, e.v))) return false;
    return true;
}

// First edge whose deletion keeps g 2-edge-connected, if any.
inline std::optional<Edge> redundant_edge_for_2_edge_connectivity(const Graph& g) {
    for (const Edge& e : g.edges())
        if (is_2_edge_connected(g.without_edge(e.u, e.v))) return e;
    return std::nullopt;
}

inline bool is_triangle_free(const Graph& g) {
    for (const Edge& e : g.edges())
        if (!(g.neighbors(e.u) & g.neighbors(e.v)).empty()) return false;
    return true;
}

inline constexpr int kCycleEnumerationMaxOrder = 12;

// Calls f(cycle) once per cycle; cycle starts at its smallest vertex.
inline void for_each_cycle(const Graph& g, const std::function<void(const std::vector<int>&)>& f) {
    const int n = g.order();
    if (n > kCycleEnumerationMaxOrder)
        throw Error("cycle enumeration restricted to n <= " + std::to_string(kCycleEnumerationMaxOrder));
    std::vector<int> path;
    VertexSet on_path;
    std::function<void(int, int)> extend = [&](int start, int v) {
        g.neighbors(v).for_each([&](int w) {
            if (w == start && path.size() >= 3 && path[1] < path.back()) f(path);
            if (w > start && !on_path.test(w)) {
                path.push_back(w);
                on_path.set(w);
                extend(start, w);
                on_path.reset(w);
                path.pop_back();
            }
        });
    };
    for (int s = 0; s < n; ++s) {
        path = {s};
        on_path = VertexSet{};
        on_path.set(s);
        extend(s, s);
    }
}

// Minimum over cycles of the number of degree-2 vertices on the cycle.
inline int cycles_degree2_count(const Graph& g) {
    int best = -1;
    for_each_cycle(g, [&](const std::vector<int>& cycle) {
        int c = 0;
        for (int v : cycle)
            if (g.degree(v) == 2) ++c;
        if (best < 0 || c < best) best = c;
    });
    if (best < 0) throw Error("cycles_degree2_count: graph is acyclic");
    return best;
}

}  // namespace minspec
