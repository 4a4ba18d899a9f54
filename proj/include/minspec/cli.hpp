#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "minspec/connectivity.hpp"
#include "minspec/enumerate.hpp"
#include "minspec/families.hpp"
#include "minspec/io.hpp"
#include "minspec/naming.hpp"
#include "minspec/spectral.hpp"

namespace minspec::cli {

enum ExitCode : int { kVerified = 0, kPropertyFails = 1, kUsageError = 2 };

class UsageError : public Error {
public:
    using Error::Error;
};

struct MRange {
    int lo = 0;
    int hi = 0;
};

// "A..B" or "A".
inline MRange parse_m_range(std::string_view text) {
    auto number = [&](std::string_view s) {
        if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw UsageError("--m: expected A..B or A, got \"" + std::string(text) + "\"");
        return std::stoi(std::string(s));
    };
    auto dots = text.find("..");
    MRange r;
    if (dots == std::string_view::npos) {
        r.lo = r.hi = number(text);
    } else {
        r.lo = number(text.substr(0, dots));
        r.hi = number(text.substr(dots + 2));
    }
    if (r.lo > r.hi) throw UsageError("--m: empty range \"" + std::string(text) + "\"");
    return r;
}

struct RunConfig {
    std::string command;
    std::optional<GraphClass> graph_class;
    std::optional<MRange> m;
    std::optional<Theorem> theorem;
    double tol = kDefaultSpectralTolerance;
    int workers = 1;
    std::string format;
    std::string out;
    std::string input;  // graph6, edge list, family spec, file path, or "-" for stdin

    void validate() const {
        if (!(tol > 0)) throw UsageError("--tol must be positive");
        if (workers < 1) throw UsageError("--workers must be at least 1");
    }
};

struct LoadedInput {
    Graph graph;
    std::optional<FamilySpec> family;
};

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline bool looks_like_family(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
    return i > 0 && i < s.size() && s[i] == '(' && std::isalpha(static_cast<unsigned char>(s[0]));
}

inline LoadedInput load_text(const std::string& raw) {
    std::string text = trim(raw);
    if (text.empty()) throw ParseError("empty input");
    if (looks_like_family(text)) {
        FamilySpec spec = parse_family(text);
        return {make_family(spec), spec};
    }
    // Edge lists contain digits separated by blanks; graph6 is a single token.
    bool has_blank = text.find_first_of(" \t\n") != std::string::npos;
    if (has_blank || text.find('#') != std::string::npos) return {from_edge_list(text), std::nullopt};
    return {from_graph6(text), std::nullopt};
}

inline LoadedInput load_input(const std::string& arg, std::istream& in) {
    if (arg.empty() || arg == "-") {
        std::stringstream ss;
        ss << in.rdbuf();
        return load_text(ss.str());
    }
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream f(arg);
        std::stringstream ss;
        ss << f.rdbuf();
        return load_text(ss.str());
    }
    return load_text(arg);
}

inline std::string fixed(double x, int decimals = 6) { return format_fixed(x, decimals); }

inline std::string scientific(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline int cmd_check(const LoadedInput& input, std::optional<GraphClass> cls, std::ostream& out) {
    const Graph& g = input.graph;
    ConnectivityReport r = connectivity(g);
    out << "graph: " << to_graph6(g) << " (n=" << g.order() << ", m=" << g.size() << ")\n";
    out << "kappa: " << r.kappa << "\n";
    out << "kappa': " << r.kappa_prime << "\n";
    out << "delta: " << r.delta << "\n";
    std::vector<std::string> cuts, brs;
    for (int v : r.cut_vertices) cuts.push_back(std::to_string(v));
    for (const Edge& e : r.bridges) brs.push_back(std::to_string(e.u) + "-" + std::to_string(e.v));
    out << "cut vertices: " << (cuts.empty() ? "none" : join(cuts, " ")) << "\n";
    out << "bridges: " << (brs.empty() ? "none" : join(brs, " ")) << "\n";
    if (auto w = find_chorded_cycle(g)) {
        std::vector<std::string> cyc;
        for (int v : w->cycle) cyc.push_back(std::to_string(v));
        out << "chorded cycle found: " << join(cyc, "-") << " with chord " << w->chord.u << "-" << w->chord.v << "\n";
    } else {
        out << "chorded cycle: none\n";
    }
    const bool m2c = is_minimally_2_connected(g);
    const bool m2ec = is_minimally_2_edge_connected(g);
    out << "minimally 2-connected: " << yes_no(m2c) << "\n";
    out << "minimally 2-edge-connected: " << yes_no(m2ec) << "\n";
    if (!m2ec && is_2_edge_connected(g))
        if (auto e = redundant_edge_for_2_edge_connectivity(g))
            out << "redundant edge (g - e stays 2-edge-connected): " << e->u << "-" << e->v << "\n";
    bool ok = cls ? (*cls == GraphClass::Min2Conn ? m2c : m2ec) : (m2c || m2ec);
    return ok ? kVerified : kPropertyFails;
}

inline int cmd_rho(const LoadedInput& input, double tol, std::ostream& out) {
    const Graph& g = input.graph;
    if (!is_connected(g)) {
        out << "rho: " << fixed(spectral_radius_value(g, tol)) << " (disconnected; maximum over components)\n";
        return kVerified;
    }
    SpectrumResult r = spectral_radius(g, tol);
    out << "rho: " << fixed(r.rho) << "\n";
    out << "residual: " << scientific(r.residual) << " (iterations " << r.iterations << ")\n";
    out << "enclosure: [" << fixed(r.lower_bound) << ", " << fixed(r.upper_bound) << "]\n";
    if (input.family) {
        if (auto text = closed_form_text(*input.family))
            out << "closed form: " << *text << " = " << fixed(*closed_form_rho(*input.family)) << "\n";
        if (auto poly = family_polynomial(*input.family))
            out << "largest root of " << poly->polynomial.to_string() << ": "
                << fixed(largest_root(poly->polynomial, poly->lo, poly->hi)) << "\n";
    }
    QuotientMatrix q = equitable_partition(g);
    if (q.cells.size() <= static_cast<std::size_t>(kMaxPolynomialDegree))
        out << "quotient (" << q.cells.size() << " cells): " << fixed(quotient_spectral_radius(q)) << "\n";
    return kVerified;
}

inline int require_cap(const MRange& r) {
    const int cap = enumeration_cap();
    if (r.lo < 3 || r.hi > cap)
        throw UsageError("--m range " + std::to_string(r.lo) + ".." + std::to_string(r.hi) + " outside [3, " +
                         std::to_string(cap) + "] (set MINSPEC_MAX_M to raise the cap)");
    return cap;
}

struct TableRow {
    int m = 0;
    std::vector<std::string> members;
    std::vector<std::string> maximizers;
    double rho = 0.0;
};

inline std::vector<TableRow> build_table(const MRange& range, GraphClass cls, int workers) {
    require_cap(range);
    std::vector<TableRow> rows;
    for (int m = range.lo; m <= range.hi; ++m) {
        ExtremalCertificate cert = extremal_search(m, cls, workers);
        FamilyCatalog names(m);
        std::vector<Candidate> order = cert.candidates;
        std::stable_sort(order.begin(), order.end(), [](const Candidate& a, const Candidate& b) { return a.rho < b.rho - kRhoEqualityTolerance; });
        TableRow row;
        row.m = m;
        for (const auto& c : order) row.members.push_back(names.name_or_graph6(c.graph6));
        for (const auto& g6 : cert.maximizers) row.maximizers.push_back(names.name_or_graph6(g6));
        row.rho = cert.max_rho();
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::string render_table(const std::vector<TableRow>& rows, GraphClass cls, const std::string& format) {
    std::string s;
    const std::string title = cls == GraphClass::Min2Conn ? "Minimally 2-connected graphs" : "Minimally 2-edge-connected graphs";
    if (format == "csv") {
        s += "m,members,maximizer,rho\n";
        for (const auto& r : rows)
            s += std::to_string(r.m) + "," + csv_field(join(r.members, "; ")) + "," + csv_field(join(r.maximizers, "; ")) + "," +
                 fixed(r.rho, 4) + "\n";
        return s;
    }
    s += "| m | " + title + " | G* | rho(G*) |\n|---|---|---|---|\n";
    for (const auto& r : rows)
        s += "| " + std::to_string(r.m) + " | " + (r.members.empty() ? "(none)" : join(r.members, ", ")) + " | " +
             (r.maximizers.empty() ? "-" : join(r.maximizers, ", ")) + " | " + (r.members.empty() ? "-" : fixed(r.rho, 4)) + " |\n";
    return s;
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open --out path \"" + path + "\"");
    f << text;
}

inline int cmd_table(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.m) throw UsageError("table requires --m");
    const GraphClass cls = cfg.graph_class.value_or(GraphClass::Min2EdgeConn);
    const std::string format = cfg.format.empty() ? "md" : cfg.format;
    if (format != "md" && format != "csv") throw UsageError("table supports --format md or csv");
    emit(render_table(build_table(*cfg.m, cls, cfg.workers), cls, format), cfg.out, out);
    return kVerified;
}

inline std::string describe(const TheoremReport& r) {
    std::string s = "m=" + std::to_string(r.m) + " " + to_string(r.which) + " ";
    if (r.analytic_only) return s + (r.holds ? "PASS" : "FAIL") + " analytic: " + r.detail;
    FamilyCatalog names(r.m);
    std::optional<FamilySpec> predicted;
    if (r.predicted_family) predicted = parse_family(*r.predicted_family);
    const std::string predicted_key = predicted ? canonical_key(make_family(*predicted)) : std::string();
    std::vector<std::string> maxs;
    for (const auto& g6 : r.maximizers) maxs.push_back(g6 == predicted_key ? display_name(*predicted) : names.name_or_graph6(g6));
    s += r.informational ? "INFO" : (r.holds ? "PASS" : "FAIL");
    s += " maximizer " + (maxs.empty() ? std::string("(none)") : join(maxs, ", ")) + " rho=" + fixed(r.enumerated_max);
    if (r.predicted_max)
        s += " predicted " + display_name(*predicted) + " rho=" + fixed(*r.predicted_max) +
             " gap=" + scientific(r.gap);
    else
        s += " (" + r.detail + ")";
    return s;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.m) throw UsageError("verify requires --m");
    if (!cfg.theorem) throw UsageError("verify requires --theorem T1_1 or T1_2");
    const int cap = enumeration_cap();
    for (int m = cfg.m->lo; m <= cfg.m->hi; ++m) {
        bool analytic = *cfg.theorem == Theorem::T1_2 && m == 15;
        if (!analytic && (m < 3 || m > cap))
            throw UsageError("--m " + std::to_string(m) + " outside [3, " + std::to_string(cap) + "] (set MINSPEC_MAX_M to raise the cap)");
    }
    bool all = true;
    for (int m = cfg.m->lo; m <= cfg.m->hi; ++m) {
        TheoremReport r = verify_theorem(m, *cfg.theorem, cfg.workers);
        if (!r.informational && !r.holds) all = false;
        out << describe(r) << "\n";
    }
    return all ? kVerified : kPropertyFails;
}

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.m) throw UsageError("enumerate requires --m");
    if (!cfg.graph_class) throw UsageError("enumerate requires --class");
    require_cap(*cfg.m);
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    if (format != "json" && format != "csv") throw UsageError("enumerate supports --format json or csv");
    std::vector<ExtremalCertificate> certs;
    for (int m = cfg.m->lo; m <= cfg.m->hi; ++m) certs.push_back(extremal_search(m, *cfg.graph_class, cfg.workers));
    std::string text;
    if (format == "csv") {
        text = csv_header();
        for (const auto& c : certs) text += to_csv_row(c);
    } else {
        nlohmann::json j;
        if (certs.size() == 1) {
            j = to_json(certs.front());
        } else {
            j = nlohmann::json::array();
            for (const auto& c : certs) j.push_back(to_json(c));
        }
        text = j.dump(2) + "\n";
    }
    emit(text, cfg.out, out);
    return kVerified;
}

inline int cmd_family(const std::string& text, std::ostream& out) {
    FamilySpec spec = parse_family(trim(text));
    Graph g = make_family(spec);
    out << "family: " << display_name(spec) << " (" << to_string(spec) << ")\n";
    out << "n: " << g.order() << "\n";
    out << "m: " << g.size() << " (formula " << edge_count(spec) << ")\n";
    out << "graph6: " << to_graph6(g) << "\n";
    std::vector<std::string> es;
    for (const Edge& e : g.edges()) es.push_back(std::to_string(e.u) + "-" + std::to_string(e.v));
    out << "edges: " << join(es, " ") << "\n";
    out << "minimally 2-connected: " << yes_no(is_minimally_2_connected(g)) << "\n";
    out << "minimally 2-edge-connected: " << yes_no(is_minimally_2_edge_connected(g)) << "\n";
    if (is_connected(g)) out << "rho: " << fixed(spectral_radius(g).rho) << "\n";
    return kVerified;
}

// Dispatches a parsed configuration; errors become exit code 2 with a message on err.
inline int run(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        if (cfg.command == "check") return cmd_check(load_input(cfg.input, in), cfg.graph_class, out);
        if (cfg.command == "rho") return cmd_rho(load_input(cfg.input, in), cfg.tol, out);
        if (cfg.command == "table") return cmd_table(cfg, out);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        if (cfg.command == "enumerate") return cmd_enumerate(cfg, out);
        if (cfg.command == "family") return cmd_family(cfg.input, out);
        throw UsageError("unknown command \"" + cfg.command + "\"");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
}

}  // namespace minspec::cli
