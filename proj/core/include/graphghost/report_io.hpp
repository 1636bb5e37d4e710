// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphghost/analytics.hpp"
#include "graphghost/ghost_graph.hpp"

namespace graphghost {

// RFC 4180 CSV. Fields are quoted when they contain separators, quotes,
// line breaks, or leading/trailing blanks (tokens are often just " ").
std::string csv_field(std::string_view value);
std::string csv_row(const std::vector<std::string>& fields);
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Columns: rank,token,layer,kind,score
std::string ranking_csv(const std::vector<RankedNode>& ranking);
/// Same columns; layer is empty and kind is "token".
std::string token_ranking_csv(const std::vector<RankedToken>& ranking);

struct RankingRow {
    std::size_t rank = 0;
    std::string token;
    std::optional<int> layer;
    std::string kind;
    double score = 0.0;

    friend bool operator==(const RankingRow&, const RankingRow&) = default;
};
std::vector<RankingRow> read_ranking_csv(std::string_view text);

/// Columns: layer,scope,in_degree_sum,ratio. One "neuron" row per layer, then
/// a "logit" row whose ratio is empty.
std::string layer_profile_csv(const LayerProfile& profile);
LayerProfile read_layer_profile_csv(std::string_view text);

/// Graphviz export: node label "token_layer", edge label = weight.
std::string export_dot(const GhostGraph& g);

struct DotNode {
    std::string id;
    std::string label;
    std::string kind;
    std::string datasets;  // ';'-joined provenance

    friend bool operator==(const DotNode&, const DotNode&) = default;
};
struct DotEdge {
    std::string src;
    std::string dst;
    std::int64_t weight = 0;

    friend bool operator==(const DotEdge&, const DotEdge&) = default;
};
struct DotGraph {
    std::vector<DotNode> nodes;
    std::vector<DotEdge> edges;
};

/// Reads back the subset of DOT written by export_dot.
DotGraph read_dot(std::string_view text);

}  // namespace graphghost
