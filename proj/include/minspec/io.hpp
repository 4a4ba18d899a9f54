#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minspec/graph.hpp"

namespace minspec {

class ParseError : public Error {
public:
    using Error::Error;
};

// graph6: size header, then the upper triangle in column order
// (0,1),(0,2),(1,2),(0,3),... packed six bits per byte, big-endian, +63.
inline std::string to_graph6(const Graph& g) {
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0;
    int nbits = 0;
    for (int j = 1; j < n; ++j) {
        const VertexSet& col = g.neighbors(j);
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (col.test(i) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

inline Graph from_graph6(std::string_view text) {
    constexpr std::string_view kHeader = ">>graph6<<";
    if (text.starts_with(kHeader)) text.remove_prefix(kHeader.size());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty()) throw ParseError("graph6: empty input");
    for (char c : text)
        if (c < 63 || c > 126) throw ParseError("graph6: byte outside [63,126]");

    std::size_t pos = 0;
    long n = 0;
    if (text[0] != '~') {
        n = text[0] - 63;
        pos = 1;
    } else {
        if (text.size() < 4 || text[1] == '~') throw ParseError("graph6: unsupported or truncated size header");
        n = (static_cast<long>(text[1] - 63) << 12) | (static_cast<long>(text[2] - 63) << 6) | (text[3] - 63);
        pos = 4;
    }
    if (n > kMaxVertices) throw ParseError("graph6: order " + std::to_string(n) + " exceeds vertex cap");

    const long bits = n * (n - 1) / 2;
    const std::size_t expected = pos + static_cast<std::size_t>((bits + 5) / 6);
    if (text.size() != expected)
        throw ParseError("graph6: expected " + std::to_string(expected) + " bytes, got " + std::to_string(text.size()));

    Graph g(static_cast<int>(n));
    long k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            int byte = text[pos + static_cast<std::size_t>(k / 6)] - 63;
            if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
        }
    return g;
}

// Edge list: one "u v" pair per line, 0-indexed; '#' starts a comment.
// The order is one more than the largest vertex id.
inline Graph from_edge_list(std::string_view text) {
    std::vector<std::pair<int, int>> pairs;
    int max_vertex = -1;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long u = 0, v = 0;
        if (!(ls >> u)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("edge list line " + std::to_string(lineno) + ": expected two vertex ids");
        }
        std::string rest;
        if (!(ls >> v) || (ls >> rest))
            throw ParseError("edge list line " + std::to_string(lineno) + ": expected two vertex ids");
        if (u < 0 || v < 0 || u >= kMaxVertices || v >= kMaxVertices)
            throw ParseError("edge list line " + std::to_string(lineno) + ": vertex id out of range");
        pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_vertex = std::max<int>(max_vertex, static_cast<int>(std::max(u, v)));
    }
    if (pairs.empty()) throw ParseError("edge list: no edges");
    try {
        return build_graph(max_vertex + 1, pairs);
    } catch (const GraphError& e) {
        throw ParseError(std::string("edge list: ") + e.what());
    }
}

inline std::string to_edge_list(const Graph& g) {
    std::string out;
    for (const Edge& e : g.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    return out;
}

}  // namespace minspec
