// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include "graphghost/aggregate.hpp"
#include "graphghost/analytics.hpp"
#include "graphghost/error.hpp"

namespace graphghost {

GhostGraph shared_subgraph(const std::map<std::string, GhostGraph>& graphs, std::size_t min_datasets,
                           std::optional<std::size_t> top_k, const PageRankOptions& options) {
    if (min_datasets < 1) fail(ErrorKind::config, "min_datasets must be >= 1");

    GhostGraph merged;
    std::map<NodeKey, std::set<std::string>> coverage;
    for (const auto& [name, g] : graphs) {
        merged = merge_ghostgraphs(merged, g);
        for (const auto& [key, tags] : g.nodes()) coverage[key].insert(name);
    }

    std::set<NodeKey> keep;
    for (const auto& [key, names] : coverage) {
        if (names.size() >= min_datasets) keep.insert(key);
    }
    for (const auto& [name, g] : graphs) {
        const auto ranking = pagerank(reverse_logit_edges(g), options).ranking;
        const std::size_t take = top_k ? std::min(*top_k, ranking.size()) : ranking.size();
        for (std::size_t i = 0; i < take; ++i) keep.insert(ranking[i].key);
    }

    GhostGraph out(merged.model_id(), merged.logit_layer());
    for (const auto& key : keep) out.add_node(key, coverage.at(key));
    for (const auto& [edge, record] : merged.edges()) {
        if (keep.count(edge.first) != 0 && keep.count(edge.second) != 0) {
            out.accumulate_edge(edge.first, edge.second, record);
        }
    }
    return out;
}

}  // namespace graphghost
