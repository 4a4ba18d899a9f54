#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "minspec/canonical.hpp"
#include "minspec/connectivity.hpp"
#include "minspec/families.hpp"
#include "minspec/io.hpp"
#include "minspec/spectral.hpp"

namespace minspec {

enum class GraphClass { Min2Conn, Min2EdgeConn };

inline std::string to_string(GraphClass c) { return c == GraphClass::Min2Conn ? "min2conn" : "min2edgeconn"; }

inline GraphClass parse_graph_class(std::string_view s) {
    if (s == "min2conn") return GraphClass::Min2Conn;
    if (s == "min2edgeconn") return GraphClass::Min2EdgeConn;
    throw ParseError("unknown graph class \"" + std::string(s) + "\" (expected min2conn or min2edgeconn)");
}

inline bool in_class(const Graph& g, GraphClass c) {
    return c == GraphClass::Min2Conn ? is_minimally_2_connected(g) : is_minimally_2_edge_connected(g);
}

inline constexpr int kDefaultEnumerationCap = 13;

// MINSPEC_MAX_M overrides the default cap.
inline int enumeration_cap() {
    if (const char* env = std::getenv("MINSPEC_MAX_M")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 3 && v <= 64) return static_cast<int>(v);
    }
    return kDefaultEnumerationCap;
}

namespace detail {

// Sum over vertices of max(0, 2 - deg): edges still needed for min degree 2 is at least half this.
inline int degree_deficiency(const Graph& g) {
    int d = 0;
    for (int v = 0; v < g.order(); ++v) d += std::max(0, 2 - g.degree(v));
    return d;
}

// Label-invariant edge preference used to pick the canonical deletion edge.
inline std::pair<int, int> edge_invariant(const Graph& g, int u, int v) {
    int a = g.degree(u), b = g.degree(v);
    return {std::max(a, b), std::min(a, b)};
}

}  // namespace detail

struct GenerationNode {
    Graph graph;
    std::string key;
};

// Orderly generation of graphs on a fixed vertex count by canonical edge
// augmentation: a child G+e is accepted only when deleting its canonical
// edge gives a graph isomorphic to the parent, so each isomorphism class is
// reached from exactly one parent class. Partial graphs are pruned when they
// can no longer reach minimum degree 2 within `target_edges`, and, with
// `prune_chorded`, when they contain a chorded cycle (both properties are
// inherited by subgraphs, so no accepted graph loses its parent).
class OrderlyGenerator {
public:
    OrderlyGenerator(int n, int target_edges, bool prune_chorded)
        : n_(n), target_(target_edges), prune_chorded_(prune_chorded) {}

    GenerationNode root() const {
        Graph g(n_);
        return {g, canonical_key(g)};
    }

    // Accepted children of `parent`, in deterministic order.
    std::vector<GenerationNode> children(const GenerationNode& parent) const {
        std::vector<GenerationNode> out;
        const Graph& p = parent.graph;
        const int k = p.size();
        if (k >= target_) return out;
        const int budget = 2 * (target_ - k - 1);
        std::unordered_map<std::string, bool> decided;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v) {
                if (p.has_edge(u, v)) continue;
                Graph child = p.with_edge(u, v);
                if (detail::degree_deficiency(child) > budget) continue;
                if (prune_chorded_ && has_chorded_cycle(child)) continue;

                std::pair<int, int> best_inv{-1, -1};
                for (const Edge& e : child.edges()) best_inv = std::max(best_inv, detail::edge_invariant(child, e.u, e.v));
                if (detail::edge_invariant(child, u, v) != best_inv) continue;

                CanonicalForm cf = canonical_form(child);
                if (auto it = decided.find(cf.key); it != decided.end()) continue;

                Edge deletion;
                std::pair<int, int> best_pos{-1, -1};
                for (const Edge& e : child.edges()) {
                    if (detail::edge_invariant(child, e.u, e.v) != best_inv) continue;
                    int a = cf.labeling[static_cast<std::size_t>(e.u)], b = cf.labeling[static_cast<std::size_t>(e.v)];
                    std::pair<int, int> pos{std::max(a, b), std::min(a, b)};
                    if (pos > best_pos) {
                        best_pos = pos;
                        deletion = e;
                    }
                }
                bool accept = deletion == Edge(u, v) ||
                              canonical_key(child.without_edge(deletion.u, deletion.v)) == parent.key;
                decided.emplace(cf.key, accept);
                if (accept) out.push_back({std::move(child), std::move(cf.key)});
            }
        return out;
    }

    // Depth-first walk below `node`, calling visit on every accepted descendant.
    void walk(const GenerationNode& node, const std::function<void(const GenerationNode&)>& visit) const {
        for (const GenerationNode& c : children(node)) {
            visit(c);
            walk(c, visit);
        }
    }

    int order() const { return n_; }
    int target() const { return target_; }

private:
    int n_;
    int target_;
    bool prune_chorded_;
};

namespace detail {

inline constexpr int kSplitLevel = 4;

inline int effective_workers(int workers) { return std::max(1, workers); }

// Runs `body(i)` for i in [0, count) on `workers` threads.
inline void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
    workers = effective_workers(workers);
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    for (auto& t : pool) t.join();
}

// Visits every accepted node of every generator in `gens`, splitting each
// tree into independent subtrees at a fixed level. `collect(unit, node)` is
// called from worker threads, with unit-local state indexed by `unit`.
struct WorkUnit {
    std::size_t generator;
    GenerationNode node;
    bool expand;  // false for nodes above the split level (visited only)
};

inline std::vector<WorkUnit> split_work(const std::vector<OrderlyGenerator>& gens) {
    std::vector<WorkUnit> units;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        std::vector<GenerationNode> level{gens[gi].root()};
        units.push_back({gi, level.front(), false});
        for (int depth = 0; depth < kSplitLevel && !level.empty(); ++depth) {
            std::vector<GenerationNode> next;
            for (const auto& node : level)
                for (auto& c : gens[gi].children(node)) next.push_back(std::move(c));
            level = std::move(next);
            const bool last = depth + 1 == kSplitLevel;
            for (const auto& node : level) units.push_back({gi, node, last});
        }
    }
    return units;
}

}  // namespace detail

// Calls visit(generator index, node) for every accepted node; results are
// gathered per work unit so callers can merge them deterministically.
template <class Result>
std::vector<Result> run_generation(const std::vector<OrderlyGenerator>& gens, int workers,
                                   const std::function<void(std::size_t, const GenerationNode&, Result&)>& visit) {
    auto units = detail::split_work(gens);
    std::vector<Result> results(units.size());
    detail::parallel_for(units.size(), workers, [&](std::size_t i) {
        const auto& u = units[i];
        visit(u.generator, u.node, results[i]);
        if (u.expand)
            gens[u.generator].walk(u.node, [&](const GenerationNode& node) { visit(u.generator, node, results[i]); });
    });
    return results;
}

struct EnumerationResult {
    std::vector<Graph> graphs;           // canonical forms, sorted by key
    std::vector<std::string> keys;       // graph6 canonical keys, same order
    std::map<int, int> members_per_order;
};

// All nonisomorphic members of the class with m edges.
inline EnumerationResult enumerate_class(int m, GraphClass cls, int workers = 1) {
    const int cap = enumeration_cap();
    if (m < 3 || m > cap)
        throw Error("enumerate_class: m = " + std::to_string(m) + " outside [3, " + std::to_string(cap) + "]");
    std::vector<OrderlyGenerator> gens;
    std::vector<int> orders;
    for (int n = 3; n <= m; ++n)
        if (n * (n - 1) / 2 >= m) {
            gens.emplace_back(n, m, true);
            orders.push_back(n);
        }
    using Found = std::vector<std::pair<std::string, Graph>>;
    auto parts = run_generation<Found>(gens, workers, [&](std::size_t, const GenerationNode& node, Found& out) {
        const Graph& g = node.graph;
        if (g.size() != m || g.min_degree() < 2 || !is_connected(g)) return;
        if (in_class(g, cls)) out.emplace_back(node.key, from_graph6(node.key));
    });
    Found all;
    for (auto& p : parts)
        for (auto& x : p) all.push_back(std::move(x));
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    EnumerationResult r;
    for (int n : orders) r.members_per_order[n] = 0;
    for (auto& [key, g] : all) {
        if (!r.keys.empty() && r.keys.back() == key) throw Error("enumerate_class: duplicate isomorphism class generated");
        ++r.members_per_order[g.order()];
        r.keys.push_back(key);
        r.graphs.push_back(std::move(g));
    }
    return r;
}

// Every nonisomorphic connected graph with minimum degree >= 2 and at most
// max_edges edges (no chord pruning). Sorted by (edges, key).
inline std::vector<Graph> enumerate_connected_min_degree_2(int max_edges, int workers = 1) {
    std::vector<OrderlyGenerator> gens;
    for (int n = 3; n <= max_edges; ++n) gens.emplace_back(n, max_edges, false);
    using Found = std::vector<std::pair<std::string, Graph>>;
    auto parts = run_generation<Found>(gens, workers, [&](std::size_t, const GenerationNode& node, Found& out) {
        const Graph& g = node.graph;
        if (g.min_degree() >= 2 && is_connected(g)) out.emplace_back(node.key, g);
    });
    Found all;
    for (auto& p : parts)
        for (auto& x : p) all.push_back(std::move(x));
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return std::pair(a.second.size(), a.first) < std::pair(b.second.size(), b.first);
    });
    std::vector<Graph> out;
    for (auto& x : all) out.push_back(std::move(x.second));
    return out;
}

struct Prediction {
    FamilySpec family;
    double rho = 0.0;
    std::string source;  // which statement predicts it
};

// Predicted maximizer for the class at size m, when one of the extremal results covers m.
inline std::optional<Prediction> predicted_maximizer(int m, GraphClass cls) {
    if (m >= 4 && m % 2 == 0) return Prediction{FamilySpec::complete_bipartite(2, m / 2), std::sqrt(double(m)), "even m: K_{2,m/2}"};
    if (cls == GraphClass::Min2Conn && m >= 9 && m % 2 == 1)
        return Prediction{FamilySpec::subdivided_k2t((m - 1) / 2), largest_root(sk_cubic(m), std::sqrt(m - 2.0), std::sqrt(double(m))),
                          "odd m >= 9: largest root of x^3-x^2-(m-2)x+m-3"};
    if (cls == GraphClass::Min2EdgeConn && m == 15)
        return Prediction{FamilySpec::friendship(5), (1.0 + std::sqrt(41.0)) / 2.0, "m = 15: F_5, (1+sqrt(41))/2"};
    if (cls == GraphClass::Min2EdgeConn && m >= 11 && m % 2 == 1)
        return Prediction{FamilySpec::k2t_star_k3((m - 3) / 2),
                          largest_root(k2t_k3_quartic(m), std::sqrt(m - 2.0), std::sqrt(double(m))),
                          "odd m >= 11: largest root of x^4-x^3+(1-m)x^2+(m-3)x+m-3"};
    return std::nullopt;
}

struct Candidate {
    std::string graph6;
    double rho = 0.0;
};

struct ExtremalCertificate {
    int m = 0;
    GraphClass graph_class = GraphClass::Min2Conn;
    std::vector<Candidate> candidates;  // sorted by canonical graph6
    std::vector<std::string> maximizers;
    std::map<int, int> generation_stats;
    std::optional<Prediction> predicted;
    std::string notes;

    double max_rho() const {
        double best = 0.0;
        for (const auto& c : candidates) best = std::max(best, c.rho);
        return best;
    }
};

inline ExtremalCertificate extremal_search(int m, GraphClass cls, int workers = 1) {
    EnumerationResult e = enumerate_class(m, cls, workers);
    ExtremalCertificate cert;
    cert.m = m;
    cert.graph_class = cls;
    cert.generation_stats = e.members_per_order;
    cert.candidates.resize(e.graphs.size());
    detail::parallel_for(e.graphs.size(), workers, [&](std::size_t i) {
        cert.candidates[i] = {e.keys[i], spectral_radius(e.graphs[i], kDefaultSpectralTolerance).rho};
    });
    const double best = cert.max_rho();
    for (const auto& c : cert.candidates)
        if (c.rho >= best - kRhoEqualityTolerance) cert.maximizers.push_back(c.graph6);
    cert.predicted = predicted_maximizer(m, cls);
    cert.notes = "exhaustive over n in [3," + std::to_string(m) + "]; enumeration cap " + std::to_string(enumeration_cap()) +
                 "; m = 15 is checked analytically, not by enumeration";
    return cert;
}

inline nlohmann::json to_json(const ExtremalCertificate& c) {
    nlohmann::json j;
    j["m"] = c.m;
    j["class"] = to_string(c.graph_class);
    j["candidates"] = nlohmann::json::array();
    for (const auto& x : c.candidates) j["candidates"].push_back({{"graph6", x.graph6}, {"rho", x.rho}});
    j["maximizers"] = c.maximizers;
    nlohmann::json stats = nlohmann::json::object();
    for (auto [n, count] : c.generation_stats) stats[std::to_string(n)] = count;
    j["stats"] = stats;
    if (c.predicted) {
        j["predicted"] = {{"family", to_string(c.predicted->family)},
                          {"graph6", canonical_key(make_family(c.predicted->family))},
                          {"rho", c.predicted->rho},
                          {"source", c.predicted->source}};
    } else {
        j["predicted"] = nullptr;
    }
    j["notes"] = c.notes;
    return j;
}

inline std::string format_fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

inline std::string csv_header() { return "m,class,count,max_rho,maximizer_graph6\n"; }

inline std::string to_csv_row(const ExtremalCertificate& c) {
    std::string maxs;
    for (const auto& g6 : c.maximizers) maxs += (maxs.empty() ? "" : ";") + g6;
    return std::to_string(c.m) + "," + to_string(c.graph_class) + "," + std::to_string(c.candidates.size()) + "," +
           format_fixed(c.max_rho(), 6) + "," + maxs + "\n";
}

enum class Theorem { T1_1, T1_2 };

inline Theorem parse_theorem(std::string_view s) {
    if (s == "T1_1") return Theorem::T1_1;
    if (s == "T1_2") return Theorem::T1_2;
    throw ParseError("unknown theorem \"" + std::string(s) + "\" (expected T1_1 or T1_2)");
}
inline std::string to_string(Theorem t) { return t == Theorem::T1_1 ? "T1_1" : "T1_2"; }
inline GraphClass theorem_class(Theorem t) { return t == Theorem::T1_1 ? GraphClass::Min2Conn : GraphClass::Min2EdgeConn; }

inline constexpr double kTheoremRhoTolerance = 1e-6;

struct TheoremReport {
    int m = 0;
    Theorem which = Theorem::T1_1;
    bool informational = false;  // m outside the statement's hypotheses
    bool analytic_only = false;  // m = 15 under T1_2
    bool holds = false;
    double enumerated_max = 0.0;
    std::optional<double> predicted_max;
    double gap = 0.0;
    std::vector<std::string> maximizers;
    std::optional<std::string> predicted_family;
    std::string detail;
};

// True when m satisfies the hypotheses of the statement.
inline bool theorem_covers(Theorem t, int m) {
    if (m >= 4 && m % 2 == 0) return true;
    if (t == Theorem::T1_1) return m >= 9 && m % 2 == 1;
    return m >= 11 && m % 2 == 1;
}

inline TheoremReport verify_theorem(int m, Theorem which, int workers = 1) {
    TheoremReport r;
    r.m = m;
    r.which = which;
    if (which == Theorem::T1_2 && m == 15) {
        // Analytic-only: F_5 against F_0(1,6,0), both by formula and by power iteration.
        r.analytic_only = true;
        const double f5 = (1.0 + std::sqrt(41.0)) / 2.0;
        const double quartic = largest_root(k2t_k3_quartic(15), std::sqrt(13.0), std::sqrt(15.0));
        const double f5_numeric = spectral_radius(make_family(FamilySpec::friendship(5))).rho;
        const double f0_numeric = spectral_radius(make_family(FamilySpec::f0(1, 6, 0))).rho;
        r.enumerated_max = f5_numeric;
        r.predicted_max = f5;
        r.gap = f5 - quartic;
        r.predicted_family = "Fr(5)";
        r.holds = f5 > quartic + kRhoEqualityTolerance && std::abs(f5 - f5_numeric) <= kTheoremRhoTolerance &&
                  std::abs(quartic - f0_numeric) <= kTheoremRhoTolerance;
        r.detail = "rho(F_5) = " + format_fixed(f5, 6) + " > rho(F_0(1,6,0)) = " + format_fixed(quartic, 6);
        return r;
    }
    ExtremalCertificate cert = extremal_search(m, theorem_class(which), workers);
    r.enumerated_max = cert.max_rho();
    r.maximizers = cert.maximizers;
    if (!theorem_covers(which, m) || !cert.predicted) {
        r.informational = true;
        r.holds = true;
        r.detail = "outside the statement's range; reported for information";
        return r;
    }
    const std::string want = canonical_key(make_family(cert.predicted->family));
    r.predicted_max = cert.predicted->rho;
    r.predicted_family = to_string(cert.predicted->family);
    r.gap = r.enumerated_max - cert.predicted->rho;
    r.holds = cert.maximizers.size() == 1 && cert.maximizers.front() == want && std::abs(r.gap) <= kTheoremRhoTolerance;
    r.detail = cert.predicted->source;
    return r;
}

}  // namespace minspec
