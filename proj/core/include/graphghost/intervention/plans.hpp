// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphghost/intervention/runner.hpp"
#include "graphghost/trace.hpp"

namespace graphghost {

/// A question to intervene on, recovered from the traces of one sample.
struct Sample {
    std::string sample_id;
    std::string dataset;
    std::vector<std::string> question_tokens;
    std::set<int> contributing;  // question positions appearing in any of the sample's traces

    int question_token_count() const { return static_cast<int>(question_tokens.size()); }
    std::string question_text() const;
};

/// Question positions (< question_token_count) of nodes in any of `traces`.
std::set<int> contributing_positions(std::span<const SampleTrace> traces, int question_token_count);

/// One Sample per sample_id, in order of first appearance. Throws
/// Error(validation) when traces of one sample disagree on the question.
std::vector<Sample> samples_from_traces(std::span<const SampleTrace> traces);

enum class MaskBaseline { contributing, random_matched };

std::string_view baseline_name(MaskBaseline baseline);
std::optional<MaskBaseline> parse_baseline(std::string_view text);

struct MaskPlan {
    std::string sample_id;
    std::set<int> keep_positions;
    std::string blank_token = " ";
    MaskBaseline baseline = MaskBaseline::contributing;

    friend bool operator==(const MaskPlan&, const MaskPlan&) = default;
};

/// Throws Error(config) unless keep_positions lie inside the question.
void validate_mask_plan(const MaskPlan& plan, int question_token_count);

MaskPlan contributing_plan(const Sample& sample, std::string blank_token = " ");

/// Uniformly random question positions, as many as `mirror` keeps. Seeded
/// from `seed` and the sample id, so reruns draw the same set.
MaskPlan random_matched_plan(const MaskPlan& mirror, int question_token_count, std::uint64_t seed);

struct MutePlan {
    std::vector<MuteTarget> targets;
    MuteScope scope = MuteScope::all_positions;

    friend bool operator==(const MutePlan&, const MutePlan&) = default;
};

/// Throws Error(plan) when targets are empty, duplicated, or outside
/// [0, logit_layer).
void validate_mute_plan(const MutePlan& plan, int logit_layer);

/// 64-bit FNV-1a, used to derive per-sample seeds.
std::uint64_t stable_hash(std::string_view text);

}  // namespace graphghost
