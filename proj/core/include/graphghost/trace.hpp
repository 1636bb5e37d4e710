// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphghost/node_key.hpp"

namespace graphghost {

struct TokenEntry {
    int position = 0;
    std::string text;

    friend bool operator==(const TokenEntry&, const TokenEntry&) = default;
};

/// The token whose generation a trace explains.
struct TraceTarget {
    std::string text;
    int position = 0;

    friend bool operator==(const TraceTarget&, const TraceTarget&) = default;
};

/// A node of one per-sample attribution graph, still tied to a sequence position.
struct PositionedNode {
    std::int64_t id = 0;
    int position = 0;
    NodeKey key;
    double activation = 0.0;

    friend bool operator==(const PositionedNode&, const PositionedNode&) = default;
};

struct AttributionEdge {
    std::int64_t src = 0;
    std::int64_t dst = 0;
    double attribution = 0.0;

    friend bool operator==(const AttributionEdge&, const AttributionEdge&) = default;
};

/// Node/edge pruning ratios, each in (0, 1]. Nodes rank by |activation|,
/// edges by |attribution|.
struct TraceFilterConfig {
    double node_ratio = 1.0;
    double edge_ratio = 1.0;

    bool keeps_everything() const { return node_ratio == 1.0 && edge_ratio == 1.0; }
    friend bool operator==(const TraceFilterConfig&, const TraceFilterConfig&) = default;
};

/// One attribution graph explaining a single generated token of one sample.
struct SampleTrace {
    std::string sample_id;
    std::string dataset;
    std::string model_id;
    int logit_layer = 0;
    int question_token_count = 0;
    std::vector<TokenEntry> tokens;
    TraceTarget target;
    std::vector<PositionedNode> nodes;
    std::vector<AttributionEdge> edges;

    // Filter already applied to this trace in memory. Not serialized and not
    // part of equality.
    std::optional<TraceFilterConfig> applied_filter;

    /// True when the target sits inside the question. Such traces are
    /// accepted by the parser but skipped by the graph builder.
    bool targets_question() const { return target.position < question_token_count; }

    const PositionedNode* find_node(std::int64_t id) const;

    friend bool operator==(const SampleTrace& a, const SampleTrace& b) {
        return a.sample_id == b.sample_id && a.dataset == b.dataset && a.model_id == b.model_id &&
               a.logit_layer == b.logit_layer && a.question_token_count == b.question_token_count &&
               a.tokens == b.tokens && a.target == b.target && a.nodes == b.nodes && a.edges == b.edges;
    }
};

/// Collapses a positioned node onto its (token, layer, kind) identity.
NodeKey canonical_node_key(const PositionedNode& node);

}  // namespace graphghost
