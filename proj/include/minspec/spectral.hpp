#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "minspec/graph.hpp"
#include "minspec/refinement.hpp"

namespace minspec {

inline constexpr double kDefaultSpectralTolerance = 1e-10;
inline constexpr long kPowerIterationCap = 1'000'000;
// Two spectral radii closer than this are treated as equal.
inline constexpr double kRhoEqualityTolerance = 1e-9;

struct SpectrumResult {
    double rho = 0.0;
    std::vector<double> perron;  // max entry normalized to 1
    double residual = 0.0;       // max-norm of A x - rho x
    long iterations = 0;
    // Collatz-Wielandt enclosure min/max of (Ax)_i / x_i; contains the true rho.
    double lower_bound = 0.0;
    double upper_bound = 0.0;
};

class SpectralError : public Error {
public:
    SpectralError(const std::string& what, SpectrumResult best) : Error(what), best_(std::move(best)) {}
    const SpectrumResult& best_iterate() const noexcept { return best_; }

private:
    SpectrumResult best_;
};

namespace detail {

inline void multiply_adjacency(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
    for (int v = 0; v < g.order(); ++v) {
        double s = 0.0;
        g.neighbors(v).for_each([&](int w) { s += x[static_cast<std::size_t>(w)]; });
        y[static_cast<std::size_t>(v)] = s;
    }
}

inline void fill_certificate(const Graph& g, SpectrumResult& r) {
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<double> ax(n);
    multiply_adjacency(g, r.perron, ax);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += r.perron[i] * ax[i];
        den += r.perron[i] * r.perron[i];
    }
    r.rho = den > 0 ? num / den : 0.0;
    r.residual = 0.0;
    r.lower_bound = std::numeric_limits<double>::infinity();
    r.upper_bound = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        r.residual = std::max(r.residual, std::abs(ax[i] - r.rho * r.perron[i]));
        if (r.perron[i] > 0) {
            r.lower_bound = std::min(r.lower_bound, ax[i] / r.perron[i]);
            r.upper_bound = std::max(r.upper_bound, ax[i] / r.perron[i]);
        }
    }
}

}  // namespace detail

// Power iteration on A + I from the all-ones vector; the unit shift makes
// bipartite graphs converge. Requires a connected graph.
inline SpectrumResult spectral_radius(const Graph& g, double tol = kDefaultSpectralTolerance) {
    if (!(tol > 0)) throw Error("spectral_radius: tolerance must be positive");
    if (g.order() < 1) throw Error("spectral_radius: empty graph");
    if (!is_connected(g)) throw Error("spectral_radius: graph is disconnected");
    const auto n = static_cast<std::size_t>(g.order());

    SpectrumResult r;
    r.perron.assign(n, 1.0);
    if (n == 1) {
        detail::fill_certificate(g, r);
        return r;
    }
    std::vector<double> y(n);
    SpectrumResult best;
    best.residual = std::numeric_limits<double>::infinity();
    for (long it = 1; it <= kPowerIterationCap; ++it) {
        detail::multiply_adjacency(g, r.perron, y);
        double top = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += r.perron[i];
            top = std::max(top, y[i]);
        }
        for (std::size_t i = 0; i < n; ++i) r.perron[i] = y[i] / top;
        r.iterations = it;
        detail::fill_certificate(g, r);
        if (r.residual <= tol) return r;
        if (r.residual < best.residual) best = r;
    }
    throw SpectralError("spectral_radius: no convergence within iteration cap", best);
}

// Spectral radius of an arbitrary graph: the maximum over its components.
inline double spectral_radius_value(const Graph& g, double tol = kDefaultSpectralTolerance) {
    if (is_connected(g)) return spectral_radius(g, tol).rho;
    double best = 0.0;
    for (const auto& comp : components(g)) best = std::max(best, spectral_radius(g.induced(comp), tol).rho);
    return best;
}

inline constexpr int kMaxPolynomialDegree = 8;

// Real polynomial, coefficients highest degree first.
class Polynomial {
public:
    Polynomial() : coefficients_{0.0} {}
    explicit Polynomial(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
        if (coefficients_.empty()) throw Error("Polynomial: no coefficients");
        if (coefficients_.size() > 1 && coefficients_.front() == 0.0) throw Error("Polynomial: leading coefficient is zero");
        if (degree() > kMaxPolynomialDegree) throw Error("Polynomial: degree above " + std::to_string(kMaxPolynomialDegree));
    }

    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
    const std::vector<double>& coefficients() const { return coefficients_; }

    double operator()(double x) const {
        double acc = 0.0;
        for (double c : coefficients_) acc = acc * x + c;
        return acc;
    }

    Polynomial derivative() const {
        if (degree() == 0) return Polynomial();
        std::vector<double> d;
        for (int i = 0; i < degree(); ++i) d.push_back(coefficients_[static_cast<std::size_t>(i)] * (degree() - i));
        return Polynomial(std::move(d));
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i <= degree(); ++i) {
            double c = coefficients_[static_cast<std::size_t>(i)];
            int pw = degree() - i;
            if (c == 0.0 && !(first && pw == 0)) continue;
            double mag = std::abs(c);
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            if (mag != 1.0 || pw == 0) os << mag;
            if (pw >= 1) os << "x";
            if (pw >= 2) os << "^" << pw;
            first = false;
        }
        return os.str();
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<double> coefficients_;
};

namespace detail {

inline double bisect(const Polynomial& p, double a, double b) {
    double fa = p(a);
    for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
        double mid = 0.5 * (a + b);
        double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (fa < 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// Newton steps from x, kept only while they stay in [lo, hi] and shrink |p|.
inline double newton_polish(const Polynomial& p, double x, double lo, double hi) {
    Polynomial dp = p.derivative();
    for (int i = 0; i < 8; ++i) {
        double d = dp(x);
        if (d == 0.0) break;
        double nx = x - p(x) / d;
        if (!(nx >= lo && nx <= hi) || std::abs(p(nx)) > std::abs(p(x))) break;
        x = nx;
    }
    return x;
}

// Critical points of p in (lo, hi), ascending.
inline std::vector<double> critical_points(const Polynomial& p, double lo, double hi);

// Roots with a sign change (or an exact zero) in [lo, hi], ascending.
inline std::vector<double> sign_change_roots(const Polynomial& p, double lo, double hi) {
    std::vector<double> pts{lo};
    for (double c : critical_points(p, lo, hi)) pts.push_back(c);
    pts.push_back(hi);
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i], b = pts[i + 1];
        double fa = p(a), fb = p(b);
        if (fa == 0.0) {
            if (roots.empty() || roots.back() != a) roots.push_back(a);
        } else if (fb != 0.0 && (fa < 0) != (fb < 0)) {
            roots.push_back(bisect(p, a, b));
        }
        if (i + 2 == pts.size() && fb == 0.0) roots.push_back(b);
    }
    return roots;
}

inline std::vector<double> critical_points(const Polynomial& p, double lo, double hi) {
    if (p.degree() <= 1) return {};
    std::vector<double> out;
    for (double r : sign_change_roots(p.derivative(), lo, hi))
        if (r > lo && r < hi) out.push_back(r);
    return out;
}

}  // namespace detail

// Largest root in [lo, hi] at which p changes sign, to ~1e-12 absolute.
inline double largest_root(const Polynomial& p, double lo, double hi) {
    if (!(lo < hi)) throw Error("largest_root: empty bracket");
    auto roots = detail::sign_change_roots(p, lo, hi);
    if (roots.empty()) throw Error("largest_root: no sign change of " + p.to_string() + " in bracket");
    return detail::newton_polish(p, roots.back(), lo, hi);
}

// Largest real root in [lo, hi] including even-multiplicity (touching) roots.
inline double largest_real_root(const Polynomial& p, double lo, double hi) {
    auto roots = detail::sign_change_roots(p, lo, hi);
    double scale = 0.0;
    for (double c : p.coefficients()) scale = std::max(scale, std::abs(c));
    for (double c : detail::critical_points(p, lo, hi))
        if (std::abs(p(c)) <= 1e-9 * std::max(1.0, scale)) roots.push_back(c);
    if (roots.empty()) throw Error("largest_real_root: no real root of " + p.to_string() + " in bracket");
    return *std::max_element(roots.begin(), roots.end());
}

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Exact characteristic polynomial det(xI - B) by Faddeev-LeVerrier over the
// integers; every division is exact. Coefficients highest degree first.
inline std::vector<std::int64_t> characteristic_coefficients(const IntMatrix& b) {
    const std::size_t n = b.size();
    auto checked_mul = [](std::int64_t x, std::int64_t y) {
        std::int64_t r;
        if (__builtin_mul_overflow(x, y, &r)) throw Error("characteristic polynomial: integer overflow");
        return r;
    };
    auto checked_add = [](std::int64_t x, std::int64_t y) {
        std::int64_t r;
        if (__builtin_add_overflow(x, y, &r)) throw Error("characteristic polynomial: integer overflow");
        return r;
    };
    std::vector<std::int64_t> c(n + 1, 0);
    c[0] = 1;
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = B M_{k-1} + c_{k-1} I
        IntMatrix next(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::int64_t s = i == j ? c[k - 1] : 0;
                for (std::size_t l = 0; l < n; ++l) s = checked_add(s, checked_mul(b[i][l], m[l][j]));
                next[i][j] = s;
            }
        m = std::move(next);
        std::int64_t tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr = checked_add(tr, checked_mul(b[i][l], m[l][i]));
        c[k] = -tr / static_cast<std::int64_t>(k);
    }
    return c;
}

inline Polynomial characteristic_polynomial(const IntMatrix& b) {
    auto c = characteristic_coefficients(b);
    return Polynomial(std::vector<double>(c.begin(), c.end()));
}

struct QuotientMatrix {
    std::vector<std::vector<int>> cells;
    IntMatrix b;  // b[i][j] = neighbors in cell j of any vertex of cell i

    int dimension() const { return static_cast<int>(cells.size()); }
};

// Checks |N(v) & cell_j| == b[i][j] for every v in cell_i.
inline bool is_equitable(const Graph& g, const QuotientMatrix& q) {
    std::vector<VertexSet> sets(q.cells.size());
    for (std::size_t j = 0; j < q.cells.size(); ++j)
        for (int v : q.cells[j]) sets[j].set(v);
    for (std::size_t i = 0; i < q.cells.size(); ++i)
        for (int v : q.cells[i])
            for (std::size_t j = 0; j < q.cells.size(); ++j)
                if ((g.neighbors(v) & sets[j]).count() != q.b[i][j]) return false;
    return true;
}

// Coarsest equitable partition refining `seed` (uniform when empty).
inline QuotientMatrix equitable_partition(const Graph& g, Coloring seed = {}) {
    if (seed.empty()) seed.assign(static_cast<std::size_t>(g.order()), 0);
    if (static_cast<int>(seed.size()) != g.order()) throw Error("equitable_partition: seed size mismatch");
    Coloring c = refine(g, std::move(seed));
    int k = g.order() == 0 ? 0 : *std::max_element(c.begin(), c.end()) + 1;
    QuotientMatrix q;
    q.cells.resize(static_cast<std::size_t>(k));
    for (int v = 0; v < g.order(); ++v) q.cells[static_cast<std::size_t>(c[static_cast<std::size_t>(v)])].push_back(v);
    q.b.assign(static_cast<std::size_t>(k), std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
    for (int i = 0; i < k; ++i) {
        int rep = q.cells[static_cast<std::size_t>(i)].front();
        g.neighbors(rep).for_each([&](int w) { ++q.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(c[static_cast<std::size_t>(w)])]; });
    }
    return q;
}

// Largest real eigenvalue of the quotient matrix, from its characteristic polynomial.
inline double quotient_spectral_radius(const QuotientMatrix& q) {
    if (q.dimension() == 0) throw Error("quotient_spectral_radius: empty quotient");
    if (q.dimension() > kMaxPolynomialDegree)
        throw Error("quotient_spectral_radius: dimension " + std::to_string(q.dimension()) + " above " +
                    std::to_string(kMaxPolynomialDegree));
    std::int64_t max_row = 0;
    for (const auto& row : q.b) {
        std::int64_t s = 0;
        for (auto x : row) s += x;
        max_row = std::max(max_row, s);
    }
    Polynomial p = characteristic_polynomial(q.b);
    const double hi = static_cast<double>(max_row) + 1.0;
    return detail::newton_polish(p, largest_real_root(p, -hi, hi), -hi, hi);
}

// Lower bound 2m/n and Stanley's upper bound (sqrt(1+8m)-1)/2.
inline double collatz_lower_bound(const Graph& g) { return 2.0 * g.size() / g.order(); }
inline double stanley_upper_bound(const Graph& g) { return (std::sqrt(1.0 + 8.0 * g.size()) - 1.0) / 2.0; }

}  // namespace minspec
