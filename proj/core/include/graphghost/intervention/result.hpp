// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphghost/intervention/judge.hpp"
#include "graphghost/intervention/runner.hpp"

namespace graphghost {

/// Outcome of one perturbation of one sample.
struct InterventionResult {
    std::string sample_id;
    std::string experiment;         // "mask" or "mute"
    std::string variant;            // mask baseline name; empty for mutes
    std::vector<MuteTarget> mutes;  // empty for masks
    std::optional<double> sparsity; // masks only
    std::string original_answer;
    std::string perturbed_answer;
    int fidelity = 0;               // 1 iff the judge found the same final result
    int language_changed = 0;
    JudgeMode judge_mode = JudgeMode::deterministic;
    bool judge_undecided = false;
    bool truncated = false;         // either generation hit max_new_tokens
    std::string intervention_site;  // as declared by the runner

    int infidelity() const { return 1 - fidelity; }

    friend bool operator==(const InterventionResult&, const InterventionResult&) = default;
};

/// One JSON object per line; field order fixed, no trailing newline.
std::string serialize_result(const InterventionResult& result);
InterventionResult parse_result(std::string_view line);
void write_results(std::ostream& out, std::span<const InterventionResult> results);
std::vector<InterventionResult> read_results(std::istream& in);
std::vector<InterventionResult> read_results_file(const std::string& path);

}  // namespace graphghost
