#include <cmath>

#include <gtest/gtest.h>

#include "minspec/canonical.hpp"
#include "minspec/connectivity.hpp"
#include "minspec/families.hpp"
#include "minspec/spectral.hpp"
#include "oracles.hpp"

using namespace minspec;

namespace {

std::vector<FamilySpec> family_grid() {
    std::vector<FamilySpec> out;
    for (int n = 3; n <= 12; ++n) out.push_back(FamilySpec::cycle(n));
    for (int t = 2; t <= 8; ++t) {
        out.push_back(FamilySpec::complete_bipartite(2, t));
        out.push_back(FamilySpec::subdivided_k2t(t));
        out.push_back(FamilySpec::k2t_star_k3(t));
    }
    for (int t = 1; t <= 6; ++t) out.push_back(FamilySpec::friendship(t));
    for (int t = 1; t <= 6; ++t) out.push_back(FamilySpec::double_star_h(1, t));
    for (int t1 = 0; t1 <= 4; ++t1)
        for (int t2 : {0, 2, 3, 4})
            for (int t3 = 0; t3 <= 4; ++t3) {
                if (t1 + t2 + t3 == 0) continue;
                out.push_back(FamilySpec::f0(t1, t2, t3));
                out.push_back(FamilySpec::f1(t1, t2, t3));
            }
    return out;
}

}  // namespace

TEST(MakeFamily, F0MatchesK2tStarK3) {
    Graph g = make_family(FamilySpec::f0(1, 4, 0));
    EXPECT_EQ(g.size(), 11);
    EXPECT_TRUE(isomorphic(g, make_family(FamilySpec::k2t_star_k3(4))));
}

TEST(MakeFamily, F1EdgeCount) {
    Graph g = make_family(FamilySpec::f1(1, 2, 1));
    EXPECT_EQ(g.size(), 3 * 1 + 2 * 2 + 2 * 1 + 7);
    EXPECT_EQ(edge_count(FamilySpec::f1(1, 2, 1)), 16);
}

TEST(MakeFamily, FriendshipThree) {
    Graph g = make_family(FamilySpec::friendship(3));
    EXPECT_EQ(g.order(), 7);
    EXPECT_EQ(g.size(), 9);
    EXPECT_NEAR(spectral_radius(g).rho, 3.0, 1e-9);
}

TEST(MakeFamily, InvalidParametersNameTheCondition) {
    auto message = [](const FamilySpec& s) {
        try {
            make_family(s);
        } catch (const FamilyError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message(FamilySpec::f0(1, 1, 0)).find("t2"), std::string::npos);
    EXPECT_NE(message(FamilySpec::double_star_h(0, 2)).find("s"), std::string::npos);
    EXPECT_NE(message(FamilySpec::h_graph(10)).find("odd"), std::string::npos);
    EXPECT_THROW(make_family(FamilySpec::h_graph(11)), FamilyError);  // (m-1)/3 not integral
    EXPECT_THROW(make_family(FamilySpec::cycle(2)), FamilyError);
    EXPECT_THROW(make_family(FamilySpec::complete_bipartite(0, 3)), FamilyError);
}

TEST(EdgeCount, Examples) {
    EXPECT_EQ(edge_count(FamilySpec::f0(2, 3, 1)), 3 * 2 + 2 * 3 + 2 * 1 + 2);
    EXPECT_EQ(edge_count(FamilySpec::cycle(9)), 9);
    EXPECT_EQ(edge_count(FamilySpec::subdivided_k2t(4)), 9);
}

TEST(EdgeCount, AgreesWithConstructionOnGrid) {
    for (int t1 = 0; t1 <= 6; ++t1)
        for (int t2 = 0; t2 <= 6; ++t2)
            for (int t3 = 0; t3 <= 6; ++t3) {
                if (t2 == 1 || t1 + t2 + t3 == 0) continue;
                for (const auto& s : {FamilySpec::f0(t1, t2, t3), FamilySpec::f1(t1, t2, t3)})
                    EXPECT_EQ(edge_count(s), make_family(s).size()) << to_string(s);
            }
    for (const auto& s : family_grid()) EXPECT_EQ(edge_count(s), make_family(s).size()) << to_string(s);
}

TEST(Coalescence, Examples) {
    Graph c3 = make_family(FamilySpec::cycle(3)), c4 = make_family(FamilySpec::cycle(4));
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 4; ++v) {
            Graph g = coalescence(c3, u, c4, v);
            EXPECT_EQ(g.order(), 6);
            EXPECT_EQ(g.size(), 7);
        }
    Graph k24 = make_family(FamilySpec::complete_bipartite(2, 4));
    EXPECT_TRUE(isomorphic(coalescence(k24, 3, Graph(1), 0), k24));
    Graph star = coalescence(make_family(FamilySpec::complete_bipartite(1, 3)), 0, make_family(FamilySpec::complete_bipartite(1, 5)), 0);
    EXPECT_TRUE(isomorphic(star, make_family(FamilySpec::complete_bipartite(1, 8))));
    EXPECT_THROW(coalescence(c3, 3, c4, 0), FamilyError);
}

TEST(Families, MinimalityVerdicts) {
    for (const auto& s : family_grid()) {
        Graph g = make_family(s);
        EXPECT_TRUE(is_minimally_2_edge_connected(g)) << to_string(s);
    }
    for (int n = 3; n <= 12; ++n) EXPECT_TRUE(is_minimally_2_connected(make_family(FamilySpec::cycle(n))));
    for (int t = 2; t <= 8; ++t) {
        EXPECT_TRUE(is_minimally_2_connected(make_family(FamilySpec::complete_bipartite(2, t))));
        EXPECT_TRUE(is_minimally_2_connected(make_family(FamilySpec::subdivided_k2t(t))));
    }
    for (int s = 1; s <= 4; ++s)
        for (int t = s; t <= 4; ++t) {
            Graph h = make_family(FamilySpec::double_star_h(s, t));
            EXPECT_TRUE(is_minimally_2_connected(h)) << s << "," << t;
            // Minimally 2-edge-connected only when one side has a single leaf.
            EXPECT_EQ(is_minimally_2_edge_connected(h), s == 1) << s << "," << t;
        }
}

TEST(Families, HGraphIsNotMinimal) {
    // The edge between the apex and the hub is a chord of a 6-cycle through two of the paths.
    for (int m : {13, 19, 25}) {
        Graph g = make_family(FamilySpec::h_graph(m));
        EXPECT_EQ(g.size(), m);
        EXPECT_TRUE(is_2_connected(g));
        EXPECT_TRUE(has_chorded_cycle(g));
        EXPECT_FALSE(is_minimally_2_connected(g));
    }
}

TEST(Families, K2tStarK3IsF0Coalescence) {
    for (int m = 11; m <= 21; m += 2) {
        const int t = (m - 3) / 2;
        Graph k2t = make_family(FamilySpec::complete_bipartite(2, t));
        Graph k3 = make_family(FamilySpec::cycle(3));
        const std::string key = canonical_key(make_family(FamilySpec::f0(1, t, 0)));
        for (int r = 0; r < 3; ++r) EXPECT_EQ(canonical_key(coalescence(k2t, 0, k3, r)), key) << m;
        EXPECT_TRUE(oracle::isomorphic(canonical_graph(coalescence(k2t, 1, k3, 0)), canonical_graph(make_family(FamilySpec::f0(1, t, 0)))));
    }
}

TEST(Families, RadiusFormulas) {
    for (int m = 7; m <= 31; m += 2) {
        double sk = spectral_radius(make_family(FamilySpec::subdivided_k2t((m - 1) / 2))).rho;
        auto cubic = [m](double x) { return x * x * x - x * x - (m - 2) * x + (m - 3); };
        EXPECT_NEAR(sk, oracle::bisect(cubic, std::sqrt(m - 2.0), std::sqrt(double(m))), 1e-8) << m;
        EXPECT_NEAR(sk, largest_root(sk_cubic(m), std::sqrt(m - 2.0), std::sqrt(double(m))), 1e-8) << m;
    }
    for (int m = 11; m <= 31; m += 2) {
        double f0 = spectral_radius(make_family(FamilySpec::f0(1, (m - 3) / 2, 0))).rho;
        auto quartic = [m](double x) { return x * x * x * x - x * x * x + (1 - m) * x * x + (m - 3) * x + m - 3; };
        EXPECT_NEAR(f0, oracle::bisect(quartic, std::sqrt(m - 2.0), std::sqrt(double(m))), 1e-8) << m;
        EXPECT_NEAR(f0, largest_root(k2t_k3_quartic(m), std::sqrt(m - 2.0), std::sqrt(double(m))), 1e-8) << m;
    }
    for (int m = 13; m <= 37; m += 6)
        EXPECT_NEAR(spectral_radius(make_family(FamilySpec::h_graph(m))).rho, 1 + std::sqrt((m - 1) / 3.0), 1e-8) << m;
    for (int t = 1; t <= 8; ++t)
        EXPECT_NEAR(spectral_radius(make_family(FamilySpec::f0(t, 0, 0))).rho, (1 + std::sqrt(1 + 8.0 * t)) / 2, 1e-8);
}

TEST(Families, FamilyPolynomialsRootTheRadius) {
    for (const auto& s : family_grid()) {
        auto p = family_polynomial(s);
        if (!p) continue;
        EXPECT_NEAR(largest_root(p->polynomial, p->lo, p->hi), oracle::eigen_rho(make_family(s)), 1e-8) << to_string(s);
    }
}

TEST(Families, QuotientAgreesWithPowerIteration) {
    int checked = 0;
    for (const auto& s : family_grid()) {
        Graph g = make_family(s);
        QuotientMatrix q = equitable_partition(g);
        ASSERT_TRUE(is_equitable(g, q));
        ASSERT_LE(q.dimension(), kMaxPolynomialDegree) << to_string(s);
        ++checked;
        EXPECT_NEAR(quotient_spectral_radius(q), spectral_radius(g).rho, 1e-8) << to_string(s);
    }
    EXPECT_GT(checked, 150);
}

TEST(FamilySpecText, RoundTrip) {
    for (const auto& s : family_grid()) EXPECT_EQ(to_string(parse_family(to_string(s))), to_string(s));
    auto c = parse_family("coal(C(3):1, K(2,3):2)");
    EXPECT_EQ(to_string(c), "coal(C(3):1,K(2,3):2)");
    EXPECT_EQ(make_family(c).size(), 9);
    EXPECT_EQ(display_name(parse_family("coal(C(3),C(4))")), "C_3*C_4");
    EXPECT_EQ(display_name(parse_family("SK(2,4)")), "SK_{2,4}");
}

TEST(FamilySpecText, Rejections) {
    EXPECT_THROW(parse_family("Q(3)"), ParseError);
    EXPECT_THROW(parse_family("K(2)"), ParseError);
    EXPECT_THROW(parse_family("SK(3,4)"), ParseError);
    EXPECT_THROW(parse_family("C(9"), ParseError);
    EXPECT_THROW(parse_family("C(9)x"), ParseError);
}
