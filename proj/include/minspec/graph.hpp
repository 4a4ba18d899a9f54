#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Compile-time vertex cap; one 64-bit word per adjacency row by default.
#ifndef MINSPEC_MAX_VERTICES
#define MINSPEC_MAX_VERTICES 64
#endif

namespace minspec {

inline constexpr int kMaxVertices = MINSPEC_MAX_VERTICES;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by build_graph; carries the index of the offending pair.
class GraphError : public Error {
public:
    GraphError(const std::string& what, std::size_t pair_index)
        : Error(what), pair_index_(pair_index) {}
    std::size_t pair_index() const noexcept { return pair_index_; }

private:
    std::size_t pair_index_;
};

// Fixed-capacity bitset over vertex ids [0, kMaxVertices).
class VertexSet {
public:
    static constexpr int kWords = (kMaxVertices + 63) / 64;

    constexpr VertexSet() = default;

    static VertexSet prefix(int n) {
        VertexSet s;
        for (int w = 0; w < kWords && n > 0; ++w, n -= 64)
            s.words_[w] = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
        return s;
    }

    bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
    void set(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void reset(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    // Smallest member, or -1 when empty.
    int first() const {
        for (int w = 0; w < kWords; ++w)
            if (words_[w]) return (w << 6) + std::countr_zero(words_[w]);
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (int w = 0; w < kWords; ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                f((w << 6) + std::countr_zero(bits));
                bits &= bits - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    VertexSet& operator&=(const VertexSet& o) {
        for (int w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        for (int w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        for (int w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
        return *this;
    }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::array<std::uint64_t, kWords> words_{};
};

// Undirected edge, normalized so that u < v.
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1 stored as adjacency bit rows.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : rows_(static_cast<std::size_t>(check_order(n))) {}

    int order() const { return static_cast<int>(rows_.size()); }
    int size() const { return edges_; }

    const VertexSet& neighbors(int v) const { return rows_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return neighbors(v).count(); }
    bool has_edge(int u, int v) const { return neighbors(u).test(v); }
    bool contains(int v) const { return v >= 0 && v < order(); }

    int min_degree() const {
        int d = order() == 0 ? 0 : kMaxVertices;
        for (int v = 0; v < order(); ++v) d = std::min(d, degree(v));
        return d;
    }
    int max_degree() const {
        int d = 0;
        for (int v = 0; v < order(); ++v) d = std::max(d, degree(v));
        return d;
    }

    // Returns false when the edge was already present.
    bool add_edge(int u, int v) {
        if (u == v || !contains(u) || !contains(v))
            throw Error("add_edge: invalid pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (has_edge(u, v)) return false;
        rows_[static_cast<std::size_t>(u)].set(v);
        rows_[static_cast<std::size_t>(v)].set(u);
        ++edges_;
        return true;
    }

    bool remove_edge(int u, int v) {
        if (!contains(u) || !contains(v) || !has_edge(u, v)) return false;
        rows_[static_cast<std::size_t>(u)].reset(v);
        rows_[static_cast<std::size_t>(v)].reset(u);
        --edges_;
        return true;
    }

    Graph with_edge(int u, int v) const {
        Graph g = *this;
        g.add_edge(u, v);
        return g;
    }
    Graph without_edge(int u, int v) const {
        Graph g = *this;
        g.remove_edge(u, v);
        return g;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(edges_));
        for (int u = 0; u < order(); ++u)
            neighbors(u).for_each([&](int v) {
                if (u < v) out.emplace_back(u, v);
            });
        return out;
    }

    VertexSet vertex_set() const { return VertexSet::prefix(order()); }

    // Relabel: vertex v of this graph becomes perm[v].
    Graph relabeled(const std::vector<int>& perm) const {
        Graph g(order());
        for (const Edge& e : edges()) g.add_edge(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
        return g;
    }

    // Subgraph induced by `keep`, renumbered in increasing vertex order.
    Graph induced(const std::vector<int>& keep) const {
        std::vector<int> index(rows_.size(), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) index[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
        Graph g(static_cast<int>(keep.size()));
        for (const Edge& e : edges()) {
            int a = index[static_cast<std::size_t>(e.u)];
            int b = index[static_cast<std::size_t>(e.v)];
            if (a >= 0 && b >= 0) g.add_edge(a, b);
        }
        return g;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

private:
    static int check_order(int n) {
        if (n < 0 || n > kMaxVertices)
            throw Error("graph order " + std::to_string(n) + " outside [0, " + std::to_string(kMaxVertices) + "]");
        return n;
    }

    std::vector<VertexSet> rows_;
    int edges_ = 0;
};

// Builds a graph from vertex pairs; duplicates are merged.
inline Graph build_graph(int n, const std::vector<std::pair<int, int>>& pairs) {
    if (n < 1 || n > kMaxVertices)
        throw Error("graph order " + std::to_string(n) + " outside [1, " + std::to_string(kMaxVertices) + "]");
    Graph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [u, v] = pairs[i];
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("pair " + std::to_string(i) + " (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") has a vertex outside [0," + std::to_string(n) + ")",
                             i);
        if (u == v) throw GraphError("pair " + std::to_string(i) + " is a self-loop at " + std::to_string(u), i);
        g.add_edge(u, v);
    }
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

// Vertices reachable from `start`.
inline VertexSet reachable(const Graph& g, int start) {
    VertexSet seen;
    seen.set(start);
    VertexSet frontier = seen;
    while (!frontier.empty()) {
        VertexSet next;
        frontier.for_each([&](int v) { next |= g.neighbors(v); });
        next -= seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

inline bool is_connected(const Graph& g) {
    return g.order() <= 1 || reachable(g, 0).count() == g.order();
}

// Connected components as sorted vertex lists, ordered by smallest vertex.
inline std::vector<std::vector<int>> components(const Graph& g) {
    std::vector<std::vector<int>> out;
    VertexSet left = g.vertex_set();
    while (!left.empty()) {
        VertexSet comp = reachable(g, left.first());
        out.push_back(comp.to_vector());
        left -= comp;
    }
    return out;
}

}  // namespace minspec
