// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphghost/analytics.hpp"
#include "graphghost/intervention/judge.hpp"
#include "graphghost/intervention/metrics.hpp"
#include "graphghost/intervention/plans.hpp"
#include "graphghost/intervention/runner.hpp"
#include "graphghost/trace.hpp"

namespace graphghost {

inline constexpr const char* kRunnerUrlEnv = "GRAPHGHOST_RUNNER_URL";
inline constexpr const char* kJudgeUrlEnv = "GRAPHGHOST_JUDGE_URL";

struct CampaignConfig {
    std::vector<std::string> trace_inputs;
    TraceFilterConfig filters;
    std::string runner_url;
    std::optional<std::string> judge_url;  // deterministic judge when absent
    DecodingConfig decoding;
    std::vector<TopKBand> bands;
    std::string output_dir;

    std::string blank_token = " ";
    std::size_t max_in_flight = 4;
    int retries = 2;
    std::uint64_t mask_seed = 0;
    bool dedupe_per_trace = false;
    MuteScope mute_scope = MuteScope::all_positions;
    PageRankOptions pagerank;
};

using EnvLookup = std::function<std::optional<std::string>(const char* name)>;

EnvLookup process_environment();

/// Relative trace_inputs and output_dir resolve against `base_dir`.
CampaignConfig parse_campaign_config(std::string_view text, const std::filesystem::path& base_dir,
                                     const EnvLookup& env);
CampaignConfig load_campaign_config(const std::string& path, const EnvLookup& env = process_environment());

void validate_campaign_config(const CampaignConfig& config);

/// Creates the directory if needed and checks that files can be written there.
void ensure_output_dir(const std::string& dir);

struct CampaignInputs {
    std::vector<SampleTrace> traces;  // filtered, question-target traces removed
    std::vector<Sample> samples;
    std::vector<std::string> warnings;
};

CampaignInputs load_campaign_inputs(const CampaignConfig& config);

struct CampaignOutcome {
    std::vector<std::string> files;  // names written inside output_dir, in write order
    std::vector<std::string> warnings;
    bool converged = true;           // PageRank convergence for mute campaigns
    std::string summary;             // plain-text table for terminals
};

CampaignOutcome run_mask_campaign(const CampaignConfig& config, RunnerClient& runner, JudgeClient& judge);
CampaignOutcome run_mute_campaign(const CampaignConfig& config, RunnerClient& runner, JudgeClient& judge);
CampaignOutcome run_layer_sweep(const CampaignConfig& config, const std::string& token, RunnerClient& runner,
                                JudgeClient& judge);

/// Layers whose value beats every existing neighbour, plus the first global maximum.
std::vector<int> sweep_peaks(const std::vector<std::pair<int, double>>& curve);

/// Markdown summary of whatever campaign outputs exist in `results_dir`.
std::string render_report(const std::string& results_dir);

std::string report_token_label(const std::string& token, int layer);

}  // namespace graphghost
