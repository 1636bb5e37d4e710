// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphghost/intervention/judge.hpp"
#include "graphghost/intervention/language.hpp"
#include "graphghost/intervention/plans.hpp"
#include "graphghost/intervention/result.hpp"
#include "graphghost/intervention/runner.hpp"

namespace graphghost {

/// Unperturbed generations keyed by sample id. Safe to share between
/// concurrent experiments.
class GenerationCache {
public:
    std::optional<Generation> find(const std::string& sample_id) const;
    void store(const std::string& sample_id, const Generation& generation);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, Generation> entries_;
};

struct ExperimentContext {
    RunnerClient& runner;
    JudgeClient& judge;
    DecodingConfig decoding;
    std::size_t max_in_flight = 4;
    int retries = 2;
    double language_threshold = kLanguageShiftThreshold;
    GenerationCache* cache = nullptr;
};

InterventionResult run_mask_experiment(const MaskPlan& plan, const Sample& sample, ExperimentContext& ctx);

/// Runs each plan against the sample with the same id. Results keep plan order.
std::vector<InterventionResult> run_mask_experiments(std::span<const MaskPlan> plans,
                                                     std::span<const Sample> samples, ExperimentContext& ctx);

/// One result per sample, in sample order.
std::vector<InterventionResult> run_mute_experiment(const MutePlan& plan, std::span<const Sample> samples,
                                                    ExperimentContext& ctx);

}  // namespace graphghost
