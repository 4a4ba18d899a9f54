#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "minspec/enumerate.hpp"
#include "minspec/families.hpp"
#include "minspec/spectral.hpp"
#include "oracles.hpp"

using namespace minspec;

namespace {

Graph fam(const char* text) { return make_family(parse_family(text)); }

void expect_certificate(const Graph& g, const SpectrumResult& r, double tol) {
    EXPECT_LE(r.residual, tol);
    double top = 0.0;
    for (double x : r.perron) {
        EXPECT_GT(x, 0.0);
        top = std::max(top, x);
    }
    EXPECT_DOUBLE_EQ(top, 1.0);
    EXPECT_LE(r.lower_bound, r.rho + 1e-12);
    EXPECT_GE(r.upper_bound, r.rho - 1e-12);
    (void)g;
}

// Cell sizes and matrix of a quotient, with cells sorted by (size, row) for comparison.
std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> normalized(const QuotientMatrix& q) {
    const std::size_t k = q.cells.size();
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    auto signature = [&](std::size_t i) {
        std::vector<std::int64_t> row = q.b[i];
        std::sort(row.begin(), row.end());
        return std::pair(q.cells[i].size(), row);
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return signature(a) < signature(b); });
    std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> out;
    for (std::size_t i : order) {
        std::vector<std::int64_t> row;
        for (std::size_t j : order) row.push_back(q.b[i][j]);
        out.emplace_back(q.cells[i].size(), row);
    }
    return out;
}

}  // namespace

TEST(SpectralRadius, Examples) {
    auto c7 = spectral_radius(fam("C(7)"));
    EXPECT_NEAR(c7.rho, 2.0, 1e-9);
    auto k24 = spectral_radius(fam("K(2,4)"));
    EXPECT_NEAR(k24.rho, std::sqrt(8.0), 1e-9);
    auto c3c4 = spectral_radius(fam("coal(C(3),C(4))"));
    EXPECT_NEAR(c3c4.rho, 2.5035, 1e-3);
    expect_certificate(fam("K(2,4)"), k24, kDefaultSpectralTolerance);
    expect_certificate(fam("coal(C(3),C(4))"), c3c4, kDefaultSpectralTolerance);
}

TEST(SpectralRadius, SingleVertex) {
    auto r = spectral_radius(Graph(1));
    EXPECT_EQ(r.rho, 0.0);
    EXPECT_EQ(r.perron, std::vector<double>{1.0});
}

TEST(SpectralRadius, DisconnectedRejected) {
    EXPECT_THROW(spectral_radius(build_graph(4, {{0, 1}, {2, 3}})), Error);
    EXPECT_NEAR(spectral_radius_value(build_graph(5, {{0, 1}, {2, 3}, {3, 4}, {4, 2}})), 2.0, 1e-9);
}

TEST(SpectralRadius, NonConvergenceCarriesBestIterate) {
    try {
        spectral_radius(fam("K(1,3)"), 1e-300);
        FAIL() << "expected SpectralError";
    } catch (const SpectralError& e) {
        EXPECT_NEAR(e.best_iterate().rho, std::sqrt(3.0), 1e-9);
        EXPECT_EQ(e.best_iterate().perron.size(), 4u);
    }
}

TEST(SpectralRadius, AgreesWithDenseEigensolver) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        const int n = 2 + static_cast<int>(rng() % 14);
        Graph g = oracle::random_connected_graph(rng, n, 0.15 + 0.1 * (i % 6));
        auto r = spectral_radius(g);
        EXPECT_NEAR(r.rho, oracle::eigen_rho(g), 1e-8) << to_graph6(g);
        expect_certificate(g, r, kDefaultSpectralTolerance);
    }
}

TEST(SpectralRadius, BipartiteGraphsConverge) {
    for (int t = 1; t <= 12; ++t) {
        Graph g = make_family(FamilySpec::complete_bipartite(3, t));
        EXPECT_NEAR(spectral_radius(g).rho, std::sqrt(3.0 * t), 1e-9);
    }
    for (int n = 4; n <= 30; n += 2) EXPECT_NEAR(spectral_radius(make_family(FamilySpec::cycle(n))).rho, 2.0, 1e-9);
}

TEST(EquitablePartition, SubdividedK24) {
    QuotientMatrix q = equitable_partition(fam("SK(2,4)"));
    ASSERT_TRUE(is_equitable(fam("SK(2,4)"), q));
    // b = [[1,1,0],[1,0,3],[0,2,0]] with cell sizes (2,2,3), up to reordering.
    QuotientMatrix expected{{{0, 1}, {2, 3}, {4, 5, 6}}, {{1, 1, 0}, {1, 0, 3}, {0, 2, 0}}};
    EXPECT_EQ(normalized(q), normalized(expected));
}

TEST(EquitablePartition, CycleAndFriendship) {
    QuotientMatrix c = equitable_partition(fam("C(8)"));
    EXPECT_EQ(c.cells.size(), 1u);
    EXPECT_EQ(c.b, (IntMatrix{{2}}));

    Graph f3 = fam("Fr(3)");
    QuotientMatrix f = equitable_partition(f3);
    ASSERT_EQ(f.cells.size(), 2u);
    QuotientMatrix expected{{{0}, {1, 2, 3, 4, 5, 6}}, {{0, 6}, {1, 1}}};
    EXPECT_EQ(normalized(f), normalized(expected));
    // Direct equitability check against the defining counts.
    for (int v = 1; v < 7; ++v) {
        EXPECT_TRUE(f3.has_edge(0, v));
        EXPECT_EQ(f3.degree(v), 2);
    }
}

TEST(EquitablePartition, SeedIsRefined) {
    Graph c6 = fam("C(6)");
    QuotientMatrix q = equitable_partition(c6, {1, 0, 0, 0, 0, 0});
    EXPECT_TRUE(is_equitable(c6, q));
    EXPECT_EQ(q.cells.size(), 4u);  // distance classes from vertex 0
}

TEST(QuotientRadius, Examples) {
    QuotientMatrix sk = equitable_partition(fam("SK(2,4)"));
    double cubic = oracle::bisect([](double x) { return x * x * x - x * x - 7 * x + 6; }, std::sqrt(7.0), 3.0);
    EXPECT_NEAR(quotient_spectral_radius(sk), cubic, 1e-10);
    EXPECT_NEAR(cubic, 2.751532, 1e-6);

    EXPECT_NEAR(quotient_spectral_radius({{{0, 1, 2}}, {{2}}}), 2.0, 1e-12);
    EXPECT_NEAR(quotient_spectral_radius({{{0, 1}, {2, 3, 4, 5}}, {{0, 4}, {2, 0}}}), std::sqrt(8.0), 1e-12);
}

TEST(QuotientRadius, MatchesPowerIterationOnRandomGraphs) {
    std::mt19937_64 rng(23);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        Graph g = oracle::random_connected_graph(rng, 3 + static_cast<int>(rng() % 10), 0.3);
        QuotientMatrix q = equitable_partition(g);
        ASSERT_TRUE(is_equitable(g, q));
        if (q.dimension() > kMaxPolynomialDegree) continue;
        ++checked;
        EXPECT_NEAR(quotient_spectral_radius(q), spectral_radius(g).rho, 1e-8) << to_graph6(g);
    }
    EXPECT_GT(checked, 50);
}

TEST(CharacteristicPolynomial, RootsAreEigenvalues) {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 60; ++i) {
        const int n = 2 + static_cast<int>(rng() % 7);
        Graph g = oracle::random_connected_graph(rng, n, 0.5);
        IntMatrix a(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
        for (const Edge& e : g.edges()) a[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = a[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
        auto c = characteristic_coefficients(a);
        EXPECT_EQ(c[0], 1);
        EXPECT_EQ(c[1], 0);          // trace
        EXPECT_EQ(c[2], -g.size());  // minus the edge count
        Polynomial p = characteristic_polynomial(a);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (const Edge& e : g.edges()) m(e.u, e.v) = m(e.v, e.u) = 1.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        for (int k = 0; k < n; ++k) EXPECT_NEAR(p(es.eigenvalues()(k)), 0.0, 1e-7);
    }
}

TEST(LargestRoot, Examples) {
    Polynomial cubic({1, -1, -7, 6});
    double oracle_root = oracle::bisect([&](double x) { return x * x * x - x * x - 7 * x + 6; }, std::sqrt(7.0), 3.0);
    EXPECT_NEAR(largest_root(cubic, std::sqrt(7.0), 3.0), oracle_root, 1e-12);

    for (int m : {2, 5, 10, 17}) EXPECT_NEAR(largest_root(Polynomial({1, 0, -double(m)}), 0.0, m), std::sqrt(double(m)), 1e-12);

    Polynomial quartic({1, -1, -10, 8, 8});
    auto q = [](double x) { return x * x * x * x - x * x * x - 10 * x * x + 8 * x + 8; };
    EXPECT_LT(q(3.0), 0.0);
    double r = largest_root(quartic, 3.0, std::sqrt(11.0));
    EXPECT_NEAR(r, oracle::bisect(q, 3.0, std::sqrt(11.0)), 1e-12);
    EXPECT_NEAR(r, 3.1200, 1e-4);
}

TEST(LargestRoot, NoSignChangeRejected) {
    EXPECT_THROW(largest_root(Polynomial({1, 0, 1}), -3.0, 3.0), Error);
    EXPECT_THROW(largest_root(Polynomial({1, 0, -4}), 3.0, 1.0), Error);
}

TEST(LargestRoot, PicksLargestOfSeveral) {
    // (x-1)(x-2)(x-3)
    Polynomial p({1, -6, 11, -6});
    EXPECT_NEAR(largest_root(p, 0.0, 10.0), 3.0, 1e-12);
    EXPECT_NEAR(largest_root(p, 0.0, 2.5), 2.0, 1e-12);
}

TEST(ClosedForm, Examples) {
    EXPECT_NEAR(*closed_form_rho(parse_family("Fr(5)")), (1 + std::sqrt(41.0)) / 2, 1e-15);
    EXPECT_NEAR(*closed_form_rho(parse_family("Fr(5)")), 3.70156, 1e-5);
    EXPECT_EQ(*closed_form_rho(parse_family("C(12)")), 2.0);
    EXPECT_NEAR(*closed_form_rho(parse_family("K(2,6)")), std::sqrt(12.0), 1e-15);
    EXPECT_FALSE(closed_form_rho(parse_family("SK(2,4)")).has_value());
    for (const char* s : {"Fr(5)", "C(12)", "K(2,6)", "HG(13)", "F0(4,0,0)", "K(3,5)"})
        EXPECT_NEAR(*closed_form_rho(parse_family(s)), spectral_radius(fam(s)).rho, 1e-9) << s;
}

TEST(Bounds, CollatzAndStanley) {
    std::mt19937_64 rng(27);
    for (int i = 0; i < 300; ++i) {
        Graph g = oracle::random_connected_graph(rng, 2 + static_cast<int>(rng() % 12), 0.35);
        double rho = spectral_radius(g).rho;
        EXPECT_LE(collatz_lower_bound(g), rho + 1e-9);
        EXPECT_LE(rho, stanley_upper_bound(g) + 1e-9);
        bool regular = g.min_degree() == g.max_degree();
        EXPECT_EQ(regular, std::abs(rho - collatz_lower_bound(g)) <= 1e-9) << to_graph6(g);
    }
}

TEST(Bounds, TriangleFreeAtMostSqrtM) {
    int checked = 0;
    for (const Graph& g : enumerate_connected_min_degree_2(10)) {
        if (!is_triangle_free(g)) continue;
        ++checked;
        EXPECT_LE(spectral_radius(g).rho, std::sqrt(double(g.size())) + 1e-9) << to_graph6(g);
    }
    EXPECT_GT(checked, 50);
}

TEST(Bounds, SubdividedK2tBracket) {
    for (int m = 7; m <= 31; m += 2) {
        double rho = spectral_radius(make_family(FamilySpec::subdivided_k2t((m - 1) / 2))).rho;
        EXPECT_GT(rho, std::sqrt(m - 2.0) + 1e-9) << m;
        EXPECT_LT(rho, std::sqrt(m - 1.0) - 1e-9) << m;
        EXPECT_LT(sk_cubic(m)(std::sqrt(m - 2.0)), 0.0) << m;
    }
}

TEST(Monotonicity, ProperConnectedSubgraphHasSmallerRadius) {
    std::mt19937_64 rng(29);
    int trials = 0;
    while (trials < 500) {
        Graph g = oracle::random_connected_graph(rng, 3 + static_cast<int>(rng() % 8), 0.45);
        // Drop a random vertex subset and random edges, keep it connected and proper.
        std::vector<int> keep;
        for (int v = 0; v < g.order(); ++v)
            if (rng() % 5 != 0) keep.push_back(v);
        if (keep.size() < 2) continue;
        Graph h = g.induced(keep);
        for (const Edge& e : h.edges())
            if (rng() % 4 == 0) h.remove_edge(e.u, e.v);
        if (!is_connected(h) || (h.order() == g.order() && h.size() == g.size())) continue;
        ++trials;
        EXPECT_LT(spectral_radius(h).rho, spectral_radius(g).rho - 1e-9) << to_graph6(g) << " " << to_graph6(h);
    }
}
