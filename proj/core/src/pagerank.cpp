// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphghost/analytics.hpp"
#include "graphghost/error.hpp"

namespace graphghost {

std::vector<double> pagerank_scores(const DigraphView& view, const PageRankOptions& options, bool* converged,
                                    int* iterations, double* residual) {
    if (!(options.damping > 0.0 && options.damping < 1.0)) {
        fail(ErrorKind::config, "pagerank damping must be in (0, 1)");
    }
    if (!(options.tol > 0.0)) fail(ErrorKind::config, "pagerank tol must be > 0");
    if (options.max_iter < 1) fail(ErrorKind::config, "pagerank max_iter must be >= 1");

    const std::size_t n = view.nodes().size();
    if (converged) *converged = true;
    if (iterations) *iterations = 0;
    if (residual) *residual = 0.0;
    if (n == 0) return {};

    // CSR by source, arcs kept in view order so the summation order is fixed.
    std::vector<double> out_weight(n, 0.0);
    for (const auto& arc : view.arcs()) {
        if (arc.weight <= 0) fail(ErrorKind::validation, "pagerank requires positive arc weights");
        out_weight[arc.src] += static_cast<double>(arc.weight);
    }
    std::vector<std::size_t> offsets(n + 1, 0);
    for (const auto& arc : view.arcs()) ++offsets[arc.src + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    std::vector<std::size_t> targets(view.arcs().size());
    std::vector<double> probability(view.arcs().size());
    for (const auto& arc : view.arcs()) {
        const std::size_t slot = cursor[arc.src]++;
        targets[slot] = arc.dst;
        probability[slot] = static_cast<double>(arc.weight) / out_weight[arc.src];
    }

    const double d = options.damping;
    const double uniform = 1.0 / static_cast<double>(n);
    std::vector<double> rank(n, uniform);
    std::vector<double> next(n);
    bool done = false;
    int iter = 0;
    double change = 0.0;
    while (iter < options.max_iter) {
        ++iter;
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (offsets[v] == offsets[v + 1]) dangling += rank[v];
        }
        const double base = (1.0 - d) * uniform + d * dangling * uniform;
        std::fill(next.begin(), next.end(), base);
        for (std::size_t v = 0; v < n; ++v) {
            const double share = d * rank[v];
            for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) next[targets[k]] += share * probability[k];
        }
        change = 0.0;
        for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
        rank.swap(next);
        if (change < options.tol) {
            done = true;
            break;
        }
    }
    if (converged) *converged = done;
    if (iterations) *iterations = iter;
    if (residual) *residual = change;
    return rank;
}

PageRankResult pagerank(const DigraphView& view, const PageRankOptions& options) {
    PageRankResult result;
    const auto scores = pagerank_scores(view, options, &result.converged, &result.iterations, &result.residual);
    result.ranking.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) result.ranking.push_back({view.nodes()[i], scores[i], 0});
    std::sort(result.ranking.begin(), result.ranking.end(), [](const RankedNode& a, const RankedNode& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.key < b.key;
    });
    for (std::size_t i = 0; i < result.ranking.size(); ++i) result.ranking[i].rank = i + 1;
    return result;
}

}  // namespace graphghost
