// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

#include "graphghost/ghost_graph.hpp"
#include "graphghost/trace.hpp"

namespace graphghost {

struct BuildReport {
    std::int64_t samples_seen = 0;
    std::int64_t traces_merged = 0;
    std::int64_t traces_skipped_question_target = 0;
    std::int64_t nodes_total = 0;
    std::int64_t edges_total = 0;
    std::int64_t weight_total = 0;

    friend bool operator==(const BuildReport&, const BuildReport&) = default;
};

struct BuildOptions {
    TraceFilterConfig filter;
    /// Count a keyed edge at most once per trace instead of once per
    /// positioned-edge instance.
    bool dedupe_per_trace = false;
};

struct BuildResult {
    GhostGraph graph;
    BuildReport report;
};

/// Aggregates traces into a GhostGraph. Each kept positioned edge adds one
/// occurrence to its (token, layer) keyed edge; traces whose target lies in
/// the question are skipped and counted. The result does not depend on the
/// order of `traces`. Throws Error(validation) on mixed model_id/logit_layer.
BuildResult build_ghostgraph(std::span<const SampleTrace> traces, const BuildOptions& options = {});

/// Union of nodes; weights, attribution sums and dataset counts add up.
/// A graph with no nodes and no model acts as identity.
GhostGraph merge_ghostgraphs(const GhostGraph& a, const GhostGraph& b);

/// Counters add up; totals are recomputed from `merged`. samples_seen is a
/// plain sum, so samples present in both inputs count twice.
BuildReport merge_reports(const BuildReport& a, const BuildReport& b, const GhostGraph& merged);

BuildReport totals_of(const GhostGraph& graph, BuildReport counters = {});

}  // namespace graphghost
