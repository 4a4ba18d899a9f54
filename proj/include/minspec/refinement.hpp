#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "minspec/graph.hpp"

namespace minspec {

// Colors are cell ranks 0..k-1 of an ordered partition.
using Coloring = std::vector<int>;

// Iterated color refinement: splits cells by the multiset of neighbor colors
// until stable. The result depends only on the input up to relabeling.
inline Coloring refine(const Graph& g, Coloring colors) {
    const int n = g.order();
    // Normalize to dense ranks first.
    {
        std::vector<int> sorted(colors);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int& c : colors) c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
    }
    int cells = n == 0 ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
    std::vector<std::pair<std::vector<int>, int>> sig(static_cast<std::size_t>(n));
    while (true) {
        for (int v = 0; v < n; ++v) {
            auto& s = sig[static_cast<std::size_t>(v)];
            s.first.assign(static_cast<std::size_t>(cells) + 1, 0);
            s.first[0] = colors[static_cast<std::size_t>(v)];
            g.neighbors(v).for_each([&](int w) { ++s.first[static_cast<std::size_t>(colors[static_cast<std::size_t>(w)]) + 1]; });
            s.second = v;
        }
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return sig[static_cast<std::size_t>(a)].first < sig[static_cast<std::size_t>(b)].first;
        });
        Coloring next(static_cast<std::size_t>(n));
        int rank = -1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i == 0 || sig[static_cast<std::size_t>(order[i])].first != sig[static_cast<std::size_t>(order[i - 1])].first) ++rank;
            next[static_cast<std::size_t>(order[i])] = rank;
        }
        int next_cells = rank + 1;
        colors = std::move(next);
        if (next_cells == cells) return colors;
        cells = next_cells;
    }
}

}  // namespace minspec
