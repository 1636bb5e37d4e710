// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "graphghost/analytics.hpp"
#include "graphghost/intervention/result.hpp"

namespace graphghost {

/// |keep| / question length. Throws Error(config) for an empty question.
double sparsity(std::size_t kept, int question_token_count);

double mean_fidelity(std::span<const InterventionResult> results);
/// 1 - mean fidelity; 0 for an empty span.
double avg_infidelity(std::span<const InterventionResult> results);

/// Band of 1-based ranks, inclusive on both ends.
struct TopKBand {
    std::size_t k_lo = 1;
    std::size_t k_hi = 10;

    friend bool operator==(const TopKBand&, const TopKBand&) = default;
};

struct TopKImpactReport {
    TopKBand band;
    double avg_infidelity = 0.0;  // mean over band nodes of each node's mean infidelity
    double max_infidelity = 0.0;
    NodeKey max_token;            // first node (by rank) reaching the max
};

/// Summarizes per-node infidelity values (0/1 per muted sample) over the
/// ranked nodes whose rank lies in `band`. Throws Error(config) when the band
/// selects no node or a selected node has no results.
TopKImpactReport topk_impact(const std::vector<RankedNode>& ranked, TopKBand band,
                             const std::map<NodeKey, std::vector<int>>& infidelities);

/// Fraction of results flagged language_changed. Throws Error(config) when empty.
double language_change_ratio(std::span<const InterventionResult> results);

}  // namespace graphghost
