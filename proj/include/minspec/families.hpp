#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "minspec/graph.hpp"
#include "minspec/io.hpp"
#include "minspec/spectral.hpp"

namespace minspec {

struct FamilySpec;

namespace family {

struct CompleteBipartite { int a = 0, b = 0; };
// K_{2,t} with one edge subdivided once.
struct SubdividedK2t { int t = 0; };
// K_{2,t} * K_3 glued at a hub.
struct K2tStarK3 { int t = 0; };
// t triangles sharing one vertex.
struct Friendship { int t = 0; };
// Double star D_{s,t} plus a vertex joined to all of its leaves.
struct DoubleStarH { int s = 0, t = 0; };
// The graph H of the even-B case: m = 3k + 1 with k = (m - 1) / 3.
struct HGraph { int m = 0; };
struct F0 { int t1 = 0, t2 = 0, t3 = 0; };
struct F1 { int t1 = 0, t2 = 0, t3 = 0; };
struct Cycle { int n = 0; };
struct Coalescence {
    std::shared_ptr<const FamilySpec> left;
    std::optional<int> left_root;
    std::shared_ptr<const FamilySpec> right;
    std::optional<int> right_root;
};

}  // namespace family

struct FamilySpec {
    using Variant = std::variant<family::CompleteBipartite, family::SubdividedK2t, family::K2tStarK3, family::Friendship,
                                 family::DoubleStarH, family::HGraph, family::F0, family::F1, family::Cycle,
                                 family::Coalescence>;
    Variant value;

    static FamilySpec complete_bipartite(int a, int b) { return {family::CompleteBipartite{a, b}}; }
    static FamilySpec subdivided_k2t(int t) { return {family::SubdividedK2t{t}}; }
    static FamilySpec k2t_star_k3(int t) { return {family::K2tStarK3{t}}; }
    static FamilySpec friendship(int t) { return {family::Friendship{t}}; }
    static FamilySpec double_star_h(int s, int t) { return {family::DoubleStarH{s, t}}; }
    static FamilySpec h_graph(int m) { return {family::HGraph{m}}; }
    static FamilySpec f0(int t1, int t2, int t3) { return {family::F0{t1, t2, t3}}; }
    static FamilySpec f1(int t1, int t2, int t3) { return {family::F1{t1, t2, t3}}; }
    static FamilySpec cycle(int n) { return {family::Cycle{n}}; }
    static FamilySpec coalescence(FamilySpec left, FamilySpec right, std::optional<int> left_root = std::nullopt,
                                  std::optional<int> right_root = std::nullopt) {
        return {family::Coalescence{std::make_shared<const FamilySpec>(std::move(left)), left_root,
                                    std::make_shared<const FamilySpec>(std::move(right)), right_root}};
    }
};

class FamilyError : public Error {
public:
    using Error::Error;
};

namespace detail {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

inline void require(bool ok, const std::string& what) {
    if (!ok) throw FamilyError(what);
}

inline int f0_edges(int t1, int t2, int t3) { return 3 * t1 + 2 * t2 + (t3 >= 1 ? 2 * t3 + 2 : 0); }

inline void validate_f(const char* name, int t1, int t2, int t3) {
    require(t1 >= 0 && t2 >= 0 && t3 >= 0, std::string(name) + ": parameters must be nonnegative");
    require(t2 == 0 || t2 >= 2, std::string(name) + ": requires t2 = 0 or t2 >= 2");
}

// F_0 numbering: center 0, then the far hub of K_{2,t2}, the two hubs of
// K_{2,t3+1}, then triangle pairs, K_{2,t2} leaves, and the t3 bottom vertices.
inline Graph build_f0(int t1, int t2, int t3, int extra_vertices) {
    int n = 1 + (t2 >= 2 ? 1 + t2 : 0) + (t3 >= 1 ? 2 + t3 : 0) + 2 * t1;
    Graph g(n + extra_vertices);
    int next = 1;
    int far_hub = -1, h1 = -1, h2 = -1;
    if (t2 >= 2) far_hub = next++;
    if (t3 >= 1) {
        h1 = next++;
        h2 = next++;
        g.add_edge(0, h1);
        g.add_edge(0, h2);
    }
    for (int i = 0; i < t1; ++i) {
        int a = next++, b = next++;
        g.add_edge(0, a);
        g.add_edge(0, b);
        g.add_edge(a, b);
    }
    for (int i = 0; i < (t2 >= 2 ? t2 : 0); ++i) {
        int leaf = next++;
        g.add_edge(0, leaf);
        g.add_edge(far_hub, leaf);
    }
    for (int i = 0; i < t3; ++i) {
        int bottom = next++;
        g.add_edge(h1, bottom);
        g.add_edge(h2, bottom);
    }
    return g;
}

}  // namespace detail

inline void validate(const FamilySpec& spec) {
    using detail::require;
    std::visit(detail::Overloaded{
                   [](const family::CompleteBipartite& s) { require(s.a >= 1 && s.b >= 1, "K(a,b): requires a, b >= 1"); },
                   [](const family::SubdividedK2t& s) { require(s.t >= 2, "SK(2,t): requires t >= 2"); },
                   [](const family::K2tStarK3& s) { require(s.t >= 2, "KK3(t): requires t >= 2"); },
                   [](const family::Friendship& s) { require(s.t >= 1, "Fr(t): requires t >= 1"); },
                   [](const family::DoubleStarH& s) { require(s.s >= 1 && s.t >= 1, "H(s,t): requires s, t >= 1"); },
                   [](const family::HGraph& s) {
                       require(s.m >= 9 && s.m % 2 == 1, "HG(m): requires m odd and m >= 9");
                       require((s.m - 1) % 3 == 0, "HG(m): requires (m-1)/3 integral");
                   },
                   [](const family::F0& s) { detail::validate_f("F0", s.t1, s.t2, s.t3); },
                   [](const family::F1& s) { detail::validate_f("F1", s.t1, s.t2, s.t3); },
                   [](const family::Cycle& s) { require(s.n >= 3, "C(n): requires n >= 3"); },
                   [](const family::Coalescence& s) {
                       require(s.left && s.right, "coal: missing operand");
                       validate(*s.left);
                       validate(*s.right);
                   },
               },
               spec.value);
}

// Glues v of h onto u of g. g keeps its labels; h's other vertices follow in order.
inline Graph coalescence(const Graph& g, int u, const Graph& h, int v) {
    if (!g.contains(u) || !h.contains(v)) throw FamilyError("coalescence: root out of range");
    const int n = g.order() + h.order() - 1;
    if (n > kMaxVertices) throw FamilyError("coalescence: result exceeds vertex cap");
    Graph out(n);
    for (const Edge& e : g.edges()) out.add_edge(e.u, e.v);
    auto map = [&](int w) { return w == v ? u : (w < v ? g.order() + w : g.order() + w - 1); };
    for (const Edge& e : h.edges()) out.add_edge(map(e.u), map(e.v));
    return out;
}

// First vertex of maximum degree.
inline int max_degree_vertex(const Graph& g) {
    int best = 0;
    for (int v = 1; v < g.order(); ++v)
        if (g.degree(v) > g.degree(best)) best = v;
    return best;
}

inline Graph make_family(const FamilySpec& spec) {
    validate(spec);
    return std::visit(
        detail::Overloaded{
            [](const family::CompleteBipartite& s) {
                Graph g(s.a + s.b);
                for (int i = 0; i < s.a; ++i)
                    for (int j = 0; j < s.b; ++j) g.add_edge(i, s.a + j);
                return g;
            },
            [](const family::SubdividedK2t& s) {
                // Hubs 0,1; leaves 2..t+1; vertex t+2 subdivides edge 0-2.
                Graph g(s.t + 3);
                for (int j = 0; j < s.t; ++j) {
                    if (j > 0) g.add_edge(0, 2 + j);
                    g.add_edge(1, 2 + j);
                }
                g.add_edge(0, s.t + 2);
                g.add_edge(s.t + 2, 2);
                return g;
            },
            [](const family::K2tStarK3& s) {
                Graph g(s.t + 4);
                for (int j = 0; j < s.t; ++j) {
                    g.add_edge(0, 2 + j);
                    g.add_edge(1, 2 + j);
                }
                g.add_edge(0, s.t + 2);
                g.add_edge(0, s.t + 3);
                g.add_edge(s.t + 2, s.t + 3);
                return g;
            },
            [](const family::Friendship& s) { return detail::build_f0(s.t, 0, 0, 0); },
            [](const family::DoubleStarH& s) {
                // w1 = 0, w2 = 1, apex 2, then the s leaves of w1 and t leaves of w2.
                Graph g(3 + s.s + s.t);
                g.add_edge(0, 1);
                for (int i = 0; i < s.s; ++i) {
                    g.add_edge(0, 3 + i);
                    g.add_edge(2, 3 + i);
                }
                for (int j = 0; j < s.t; ++j) {
                    g.add_edge(1, 3 + s.s + j);
                    g.add_edge(2, 3 + s.s + j);
                }
                return g;
            },
            [](const family::HGraph& s) {
                // Apex 0 and hub 1 adjacent; k paths 0 - a_i - b_i - 1.
                const int k = (s.m - 1) / 3;
                Graph g(2 + 2 * k);
                g.add_edge(0, 1);
                for (int i = 0; i < k; ++i) {
                    g.add_edge(0, 2 + i);
                    g.add_edge(2 + i, 2 + k + i);
                    g.add_edge(2 + k + i, 1);
                }
                return g;
            },
            [](const family::F0& s) { return detail::build_f0(s.t1, s.t2, s.t3, 0); },
            [](const family::F1& s) {
                // C_5 through the center on the four appended vertices.
                Graph g = detail::build_f0(s.t1, s.t2, s.t3, 4);
                const int c = g.order() - 4;
                g.add_edge(0, c);
                g.add_edge(c, c + 1);
                g.add_edge(c + 1, c + 2);
                g.add_edge(c + 2, c + 3);
                g.add_edge(c + 3, 0);
                return g;
            },
            [](const family::Cycle& s) {
                Graph g = path_graph(s.n);
                g.add_edge(s.n - 1, 0);
                return g;
            },
            [](const family::Coalescence& s) {
                Graph a = make_family(*s.left);
                Graph b = make_family(*s.right);
                int ra = s.left_root.value_or(max_degree_vertex(a));
                int rb = s.right_root.value_or(max_degree_vertex(b));
                return coalescence(a, ra, b, rb);
            },
        },
        spec.value);
}

// Closed-form edge count of the family instance.
inline int edge_count(const FamilySpec& spec) {
    validate(spec);
    return std::visit(detail::Overloaded{
                          [](const family::CompleteBipartite& s) { return s.a * s.b; },
                          [](const family::SubdividedK2t& s) { return 2 * s.t + 1; },
                          [](const family::K2tStarK3& s) { return 2 * s.t + 3; },
                          [](const family::Friendship& s) { return 3 * s.t; },
                          [](const family::DoubleStarH& s) { return 2 * s.s + 2 * s.t + 1; },
                          [](const family::HGraph& s) { return s.m; },
                          [](const family::F0& s) { return detail::f0_edges(s.t1, s.t2, s.t3); },
                          [](const family::F1& s) { return detail::f0_edges(s.t1, s.t2, s.t3) + 5; },
                          [](const family::Cycle& s) { return s.n; },
                          [](const family::Coalescence& s) { return edge_count(*s.left) + edge_count(*s.right); },
                      },
                      spec.value);
}

// Grammar form, e.g. "F0(1,4,0)" or "coal(C(3):0,K(2,3):2)"; parse_family inverts it.
inline std::string to_string(const FamilySpec& spec) {
    auto args = [](std::initializer_list<int> xs) {
        std::string s = "(";
        bool first = true;
        for (int x : xs) {
            if (!first) s += ",";
            s += std::to_string(x);
            first = false;
        }
        return s + ")";
    };
    return std::visit(detail::Overloaded{
                          [&](const family::CompleteBipartite& s) { return "K" + args({s.a, s.b}); },
                          [&](const family::SubdividedK2t& s) { return "SK" + args({2, s.t}); },
                          [&](const family::K2tStarK3& s) { return "KK3" + args({s.t}); },
                          [&](const family::Friendship& s) { return "Fr" + args({s.t}); },
                          [&](const family::DoubleStarH& s) { return "H" + args({s.s, s.t}); },
                          [&](const family::HGraph& s) { return "HG" + args({s.m}); },
                          [&](const family::F0& s) { return "F0" + args({s.t1, s.t2, s.t3}); },
                          [&](const family::F1& s) { return "F1" + args({s.t1, s.t2, s.t3}); },
                          [&](const family::Cycle& s) { return "C" + args({s.n}); },
                          [&](const family::Coalescence& s) {
                              std::string l = to_string(*s.left), r = to_string(*s.right);
                              if (s.left_root) l += ":" + std::to_string(*s.left_root);
                              if (s.right_root) r += ":" + std::to_string(*s.right_root);
                              return "coal(" + l + "," + r + ")";
                          },
                      },
                      spec.value);
}

// Conventional notation, e.g. "K_{2,4}", "SK_{2,4}", "C_3*C_4".
inline std::string display_name(const FamilySpec& spec) {
    auto i = [](int x) { return std::to_string(x); };
    return std::visit(detail::Overloaded{
                          [&](const family::CompleteBipartite& s) { return "K_{" + i(s.a) + "," + i(s.b) + "}"; },
                          [&](const family::SubdividedK2t& s) { return "SK_{2," + i(s.t) + "}"; },
                          [&](const family::K2tStarK3& s) { return "K_{2," + i(s.t) + "}*K_3"; },
                          [&](const family::Friendship& s) { return "F_" + i(s.t); },
                          [&](const family::DoubleStarH& s) { return "H(" + i(s.s) + "," + i(s.t) + ")"; },
                          [&](const family::HGraph& s) { return "H[m=" + i(s.m) + "]"; },
                          [&](const family::F0& s) { return "F_0(" + i(s.t1) + "," + i(s.t2) + "," + i(s.t3) + ")"; },
                          [&](const family::F1& s) { return "F_1(" + i(s.t1) + "," + i(s.t2) + "," + i(s.t3) + ")"; },
                          [&](const family::Cycle& s) { return "C_" + i(s.n); },
                          [&](const family::Coalescence& s) {
                              if (!s.left_root && !s.right_root) return display_name(*s.left) + "*" + display_name(*s.right);
                              return "(" + display_name(*s.left) + "," + i(s.left_root.value_or(-1)) + ")*(" +
                                     display_name(*s.right) + "," + i(s.right_root.value_or(-1)) + ")";
                          },
                      },
                      spec.value);
}

namespace detail {

class FamilyParser {
public:
    explicit FamilyParser(std::string_view text) : text_(text) {}

    FamilySpec parse_all() {
        FamilySpec s = parse();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("family spec \"" + std::string(text_) + "\": " + what + " at offset " + std::to_string(pos_));
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected family name");
        return std::string(text_.substr(start, pos_ - start));
    }
    int integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_ || pos_ - start > 6) fail("expected integer");
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }
    std::vector<int> int_args() {
        expect('(');
        std::vector<int> xs{integer()};
        while (accept(',')) xs.push_back(integer());
        expect(')');
        return xs;
    }
    std::optional<int> root() {
        if (accept(':')) return integer();
        return std::nullopt;
    }

    FamilySpec parse() {
        std::string name = ident();
        if (name == "coal") {
            expect('(');
            FamilySpec l = parse();
            auto lr = root();
            expect(',');
            FamilySpec r = parse();
            auto rr = root();
            expect(')');
            return FamilySpec::coalescence(std::move(l), std::move(r), lr, rr);
        }
        auto xs = int_args();
        auto want = [&](std::size_t k) {
            if (xs.size() != k) fail(name + " takes " + std::to_string(k) + " argument(s)");
        };
        if (name == "K") return want(2), FamilySpec::complete_bipartite(xs[0], xs[1]);
        if (name == "SK") {
            want(2);
            if (xs[0] != 2) fail("SK supports only SK(2,t)");
            return FamilySpec::subdivided_k2t(xs[1]);
        }
        if (name == "KK3") return want(1), FamilySpec::k2t_star_k3(xs[0]);
        if (name == "Fr") return want(1), FamilySpec::friendship(xs[0]);
        if (name == "H") return want(2), FamilySpec::double_star_h(xs[0], xs[1]);
        if (name == "HG") return want(1), FamilySpec::h_graph(xs[0]);
        if (name == "F0") return want(3), FamilySpec::f0(xs[0], xs[1], xs[2]);
        if (name == "F1") return want(3), FamilySpec::f1(xs[0], xs[1], xs[2]);
        if (name == "C") return want(1), FamilySpec::cycle(xs[0]);
        fail("unknown family \"" + name + "\"");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline FamilySpec parse_family(std::string_view text) { return detail::FamilyParser(text).parse_all(); }

// Exact spectral radius for families with a closed form.
inline std::optional<double> closed_form_rho(const FamilySpec& spec) {
    validate(spec);
    return std::visit(detail::Overloaded{
                          [](const family::CompleteBipartite& s) -> std::optional<double> { return std::sqrt(double(s.a) * s.b); },
                          [](const family::Friendship& s) -> std::optional<double> { return (1.0 + std::sqrt(8.0 * s.t + 1.0)) / 2.0; },
                          [](const family::HGraph& s) -> std::optional<double> { return 1.0 + std::sqrt((s.m - 1) / 3.0); },
                          [](const family::F0& s) -> std::optional<double> {
                              if (s.t2 == 0 && s.t3 == 0 && s.t1 >= 1) return (1.0 + std::sqrt(8.0 * s.t1 + 1.0)) / 2.0;
                              return std::nullopt;
                          },
                          [](const family::Cycle&) -> std::optional<double> { return 2.0; },
                          [](const auto&) -> std::optional<double> { return std::nullopt; },
                      },
                      spec.value);
}

// Closed form rendered as text, matching closed_form_rho.
inline std::optional<std::string> closed_form_text(const FamilySpec& spec) {
    validate(spec);
    auto i = [](int x) { return std::to_string(x); };
    return std::visit(detail::Overloaded{
                          [&](const family::CompleteBipartite& s) -> std::optional<std::string> { return "sqrt(" + i(s.a * s.b) + ")"; },
                          [&](const family::Friendship& s) -> std::optional<std::string> { return "(1+sqrt(" + i(8 * s.t + 1) + "))/2"; },
                          [&](const family::HGraph& s) -> std::optional<std::string> { return "1+sqrt(" + i((s.m - 1) / 3) + ")"; },
                          [&](const family::F0& s) -> std::optional<std::string> {
                              if (s.t2 == 0 && s.t3 == 0 && s.t1 >= 1) return "(1+sqrt(" + i(8 * s.t1 + 1) + "))/2";
                              return std::nullopt;
                          },
                          [](const family::Cycle&) -> std::optional<std::string> { return "2"; },
                          [](const auto&) -> std::optional<std::string> { return std::nullopt; },
                      },
                      spec.value);
}

// x^3 - x^2 - (m-2)x + (m-3): spectral radius of SK_{2,(m-1)/2} is its largest root.
inline Polynomial sk_cubic(int m) { return Polynomial({1.0, -1.0, -(m - 2.0), m - 3.0}); }

// x^4 - x^3 + (t1-m)x^2 + (m-3t1)x - 3t1^2 + m t1 for F_0(t1,(m-3t1)/2,0).
inline Polynomial f0_quartic(int m, int t1) {
    return Polynomial({1.0, -1.0, double(t1 - m), double(m - 3 * t1), double(-3 * t1 * t1 + m * t1)});
}

// Same polynomial at t1 = 1: x^4 - x^3 + (1-m)x^2 + (m-3)x + m - 3.
inline Polynomial k2t_k3_quartic(int m) { return f0_quartic(m, 1); }

struct FamilyPolynomial {
    Polynomial polynomial;
    double lo = 0.0;
    double hi = 0.0;
};

// Low-degree polynomial whose largest root in [lo, hi] is the spectral radius.
inline std::optional<FamilyPolynomial> family_polynomial(const FamilySpec& spec) {
    validate(spec);
    const int m = edge_count(spec);
    const double hi = std::sqrt(double(m)) + 1.0;
    return std::visit(detail::Overloaded{
                          [&](const family::SubdividedK2t&) -> std::optional<FamilyPolynomial> {
                              return FamilyPolynomial{sk_cubic(m), std::sqrt(m - 2.0), std::sqrt(double(m))};
                          },
                          [&](const family::K2tStarK3&) -> std::optional<FamilyPolynomial> {
                              return FamilyPolynomial{k2t_k3_quartic(m), 0.0, hi};
                          },
                          [&](const family::F0& s) -> std::optional<FamilyPolynomial> {
                              if (s.t3 != 0 || s.t2 < 2) return std::nullopt;
                              return FamilyPolynomial{f0_quartic(m, s.t1), 0.0, hi};
                          },
                          [](const auto&) -> std::optional<FamilyPolynomial> { return std::nullopt; },
                      },
                      spec.value);
}

}  // namespace minspec
