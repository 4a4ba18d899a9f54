#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minspec/canonical.hpp"
#include "minspec/families.hpp"

namespace minspec {

// Maps canonical keys of named graphs with a fixed edge count to a family
// spec. Lookup order decides the name when several constructions agree:
// simple families, then coalescences of two blocks (so C_3*C_4 is preferred
// over K_{2,2}*K_3), then the composite families, then three-block chains.
class FamilyCatalog {
public:
    explicit FamilyCatalog(int m) : m_(m) {
        add_simple_families();
        add_two_block_coalescences();
        add_composite_families();
        add_three_block_coalescences();
    }

    std::optional<FamilySpec> lookup(const std::string& key) const {
        auto it = names_.find(key);
        if (it == names_.end()) return std::nullopt;
        return it->second;
    }

    std::string name_or_graph6(const std::string& key) const {
        auto spec = lookup(key);
        return spec ? display_name(*spec) : key;
    }

    int edges() const { return m_; }
    std::size_t size() const { return names_.size(); }

private:
    void add(const FamilySpec& spec) {
        names_.emplace(canonical_key(make_family(spec)), spec);
    }

    void add_simple_families() {
        const int m = m_;
        if (m >= 3) add(FamilySpec::cycle(m));
        for (int a = 1; a * a <= m; ++a)
            if (m % a == 0) add(FamilySpec::complete_bipartite(a, m / a));
        if (m % 2 == 1 && m >= 5) add(FamilySpec::subdivided_k2t((m - 1) / 2));
        if (m % 3 == 0) add(FamilySpec::friendship(m / 3));
        for (int s = 1; s <= m; ++s)
            for (int t = s; t <= m; ++t) try_add(FamilySpec::double_star_h(s, t));
        if (m % 2 == 1 && m >= 9 && (m - 1) % 3 == 0) add(FamilySpec::h_graph(m));
    }

    void add_composite_families() {
        const int m = m_;
        if (m % 2 == 1 && m >= 7) add(FamilySpec::k2t_star_k3((m - 3) / 2));
        for (int t1 = 0; 3 * t1 <= m; ++t1)
            for (int t2 = 0; 2 * t2 <= m; ++t2)
                for (int t3 = 0; 2 * t3 <= m; ++t3) {
                    try_add(FamilySpec::f0(t1, t2, t3));
                    try_add(FamilySpec::f1(t1, t2, t3));
                }
    }

    void try_add(const FamilySpec& spec) {
        try {
            if (edge_count(spec) == m_) add(spec);
        } catch (const FamilyError&) {
        }
    }

    // Blocks that occur in small extremal tables.
    static std::vector<FamilySpec> blocks_with(int edges) {
        std::vector<FamilySpec> out;
        if (edges >= 3) out.push_back(FamilySpec::cycle(edges));
        if (edges % 2 == 0 && edges >= 6) out.push_back(FamilySpec::complete_bipartite(2, edges / 2));
        if (edges % 2 == 1 && edges >= 7) out.push_back(FamilySpec::subdivided_k2t((edges - 1) / 2));
        return out;
    }

    // Every distinct graph obtained by identifying a vertex of a with a vertex of b.
    static std::vector<FamilySpec> rooted_coalescences(const FamilySpec& a, const FamilySpec& b) {
        const Graph ga = make_family(a), gb = make_family(b);
        const int ra = max_degree_vertex(ga), rb = max_degree_vertex(gb);
        std::vector<FamilySpec> out;
        std::set<std::string> seen;
        // Default roots first so the unrooted name wins.
        auto consider = [&](int u, int v) {
            if (!seen.insert(canonical_key(coalescence(ga, u, gb, v))).second) return;
            if (u == ra && v == rb)
                out.push_back(FamilySpec::coalescence(a, b));
            else
                out.push_back(FamilySpec::coalescence(a, b, u, v));
        };
        consider(ra, rb);
        for (int u = 0; u < ga.order(); ++u)
            for (int v = 0; v < gb.order(); ++v) consider(u, v);
        return out;
    }

    void add_two_block_coalescences() {
        const int m = m_;
        for (int e1 = 3; 2 * e1 <= m; ++e1)
            for (const auto& a : blocks_with(e1))
                for (const auto& b : blocks_with(m - e1))
                    for (const auto& c : rooted_coalescences(a, b)) add(c);
    }

    void add_three_block_coalescences() {
        const int m = m_;
        for (int e3 = 3; e3 <= m - 6; ++e3)
            for (int e1 = 3; 2 * e1 <= m - e3; ++e1)
                for (const auto& a : blocks_with(e1))
                    for (const auto& b : blocks_with(m - e3 - e1))
                        for (const auto& ab : rooted_coalescences(a, b))
                            for (const auto& c : blocks_with(e3))
                                for (auto& abc : rooted_coalescences(ab, c)) add(abc);
    }

    int m_;
    std::map<std::string, FamilySpec> names_;
};

}  // namespace minspec
