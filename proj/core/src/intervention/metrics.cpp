// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/intervention/metrics.hpp"

#include "graphghost/error.hpp"

namespace graphghost {

double sparsity(std::size_t kept, int question_token_count) {
    if (question_token_count <= 0) fail(ErrorKind::config, "sparsity of an empty question is undefined");
    if (kept > static_cast<std::size_t>(question_token_count)) {
        fail(ErrorKind::config, "kept positions exceed the question length");
    }
    return static_cast<double>(kept) / static_cast<double>(question_token_count);
}

double mean_fidelity(std::span<const InterventionResult> results) {
    if (results.empty()) return 0.0;
    std::size_t same = 0;
    for (const auto& r : results) same += static_cast<std::size_t>(r.fidelity);
    return static_cast<double>(same) / static_cast<double>(results.size());
}

double avg_infidelity(std::span<const InterventionResult> results) {
    if (results.empty()) return 0.0;
    return 1.0 - mean_fidelity(results);
}

TopKImpactReport topk_impact(const std::vector<RankedNode>& ranked, TopKBand band,
                             const std::map<NodeKey, std::vector<int>>& infidelities) {
    if (band.k_lo < 1 || band.k_lo > band.k_hi) {
        fail(ErrorKind::config, "invalid band " + std::to_string(band.k_lo) + "-" + std::to_string(band.k_hi));
    }
    TopKImpactReport report;
    report.band = band;
    double sum = 0.0;
    std::size_t members = 0;
    for (const auto& node : ranked) {
        if (node.rank < band.k_lo || node.rank > band.k_hi) continue;
        auto it = infidelities.find(node.key);
        if (it == infidelities.end() || it->second.empty()) {
            fail(ErrorKind::config, "band node " + display_label(node.key) + " has no intervention results");
        }
        double total = 0.0;
        for (int v : it->second) total += v;
        const double mean = total / static_cast<double>(it->second.size());
        sum += mean;
        if (members == 0 || mean > report.max_infidelity) {
            report.max_infidelity = mean;
            report.max_token = node.key;
        }
        ++members;
    }
    if (members == 0) {
        fail(ErrorKind::config,
             "band " + std::to_string(band.k_lo) + "-" + std::to_string(band.k_hi) + " selects no ranked node");
    }
    report.avg_infidelity = sum / static_cast<double>(members);
    return report;
}

double language_change_ratio(std::span<const InterventionResult> results) {
    if (results.empty()) fail(ErrorKind::config, "language change ratio of no results is undefined");
    std::size_t changed = 0;
    for (const auto& r : results) changed += static_cast<std::size_t>(r.language_changed);
    return static_cast<double>(changed) / static_cast<double>(results.size());
}

}  // namespace graphghost
