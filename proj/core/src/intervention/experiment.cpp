// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/intervention/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "graphghost/error.hpp"
#include "graphghost/intervention/metrics.hpp"

namespace graphghost {

std::optional<Generation> GenerationCache::find(const std::string& sample_id) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(sample_id);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void GenerationCache::store(const std::string& sample_id, const Generation& generation) {
    std::lock_guard lock(mutex_);
    entries_.emplace(sample_id, generation);
}

std::size_t GenerationCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

namespace {

template <typename Fn>
auto with_retries(int retries, Fn&& fn) -> decltype(fn()) {
    for (int attempt = 0;; ++attempt) {
        try {
            return fn();
        } catch (const Error& e) {
            if (!e.retriable() || attempt >= retries) throw;
        }
    }
}

[[noreturn]] void rethrow_for_sample(const std::string& sample_id) {
    try {
        throw;
    } catch (const Error& e) {
        throw Error(e.kind(), "sample '" + sample_id + "': " + e.what(), e.retriable());
    }
}

// Runs task(i) for i in [0, n) on at most `width` threads. The first failure
// (by index) is rethrown after every worker has stopped.
void bounded_for_each(std::size_t n, std::size_t width, const std::function<void(std::size_t)>& task) {
    if (n == 0) return;
    width = std::clamp<std::size_t>(width, 1, n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    auto worker = [&] {
        for (;;) {
            if (stop.load()) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
                stop.store(true);
            }
        }
    };
    if (width == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(width);
        for (std::size_t t = 0; t < width; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

GenerateRequest base_request(const Sample& sample, const DecodingConfig& decoding) {
    GenerateRequest r;
    r.prompt_tokens = sample.question_tokens;
    r.decoding = decoding;
    return r;
}

Generation original_generation(const Sample& sample, ExperimentContext& ctx) {
    if (ctx.cache) {
        if (auto hit = ctx.cache->find(sample.sample_id)) return *hit;
    }
    const GenerateRequest request = base_request(sample, ctx.decoding);
    Generation g = with_retries(ctx.retries, [&] { return ctx.runner.generate(request); });
    if (ctx.cache) ctx.cache->store(sample.sample_id, g);
    return g;
}

InterventionResult judged(const Sample& sample, const Generation& original, const Generation& perturbed,
                          ExperimentContext& ctx) {
    const std::string question = sample.question_text();
    const JudgeVerdict verdict =
        with_retries(ctx.retries, [&] { return ctx.judge.judge(question, original.text, perturbed.text); });
    InterventionResult r;
    r.sample_id = sample.sample_id;
    r.original_answer = original.text;
    r.perturbed_answer = perturbed.text;
    r.fidelity = verdict.same ? 1 : 0;
    r.language_changed = language_changed(original.text, perturbed.text, ctx.language_threshold) ? 1 : 0;
    r.judge_mode = verdict.mode;
    r.judge_undecided = verdict.undecided;
    r.truncated = original.truncated || perturbed.truncated;
    return r;
}

InterventionResult mask_one(const MaskPlan& plan, const Sample& sample, const std::string& site,
                            ExperimentContext& ctx) {
    try {
        validate_mask_plan(plan, sample.question_token_count());
        const Generation original = original_generation(sample, ctx);
        MaskedRequest request;
        request.base = base_request(sample, ctx.decoding);
        request.keep_positions.assign(plan.keep_positions.begin(), plan.keep_positions.end());
        request.blank_token = plan.blank_token;
        const Generation perturbed = with_retries(ctx.retries, [&] { return ctx.runner.generate_masked(request); });
        InterventionResult r = judged(sample, original, perturbed, ctx);
        r.experiment = "mask";
        r.variant = std::string(baseline_name(plan.baseline));
        r.sparsity = sparsity(plan.keep_positions.size(), sample.question_token_count());
        r.intervention_site = site;
        return r;
    } catch (...) {
        rethrow_for_sample(sample.sample_id);
    }
}

RunnerInfo fetch_info(ExperimentContext& ctx) {
    return with_retries(ctx.retries, [&] { return ctx.runner.info(); });
}

}  // namespace

InterventionResult run_mask_experiment(const MaskPlan& plan, const Sample& sample, ExperimentContext& ctx) {
    if (plan.sample_id != sample.sample_id) {
        fail(ErrorKind::plan, "mask plan for '" + plan.sample_id + "' applied to sample '" + sample.sample_id + "'");
    }
    return mask_one(plan, sample, fetch_info(ctx).intervention_site, ctx);
}

std::vector<InterventionResult> run_mask_experiments(std::span<const MaskPlan> plans,
                                                     std::span<const Sample> samples, ExperimentContext& ctx) {
    std::unordered_map<std::string, const Sample*> by_id;
    for (const auto& s : samples) by_id.emplace(s.sample_id, &s);
    std::vector<const Sample*> targets;
    targets.reserve(plans.size());
    for (const auto& p : plans) {
        auto it = by_id.find(p.sample_id);
        if (it == by_id.end()) fail(ErrorKind::plan, "mask plan names unknown sample '" + p.sample_id + "'");
        targets.push_back(it->second);
    }
    if (plans.empty()) return {};
    const std::string site = fetch_info(ctx).intervention_site;
    std::vector<InterventionResult> results(plans.size());
    bounded_for_each(plans.size(), ctx.max_in_flight,
                     [&](std::size_t i) { results[i] = mask_one(plans[i], *targets[i], site, ctx); });
    return results;
}

std::vector<InterventionResult> run_mute_experiment(const MutePlan& plan, std::span<const Sample> samples,
                                                    ExperimentContext& ctx) {
    if (samples.empty()) return {};
    const RunnerInfo info = fetch_info(ctx);
    validate_mute_plan(plan, info.logit_layer);
    std::vector<InterventionResult> results(samples.size());
    bounded_for_each(samples.size(), ctx.max_in_flight, [&](std::size_t i) {
        const Sample& sample = samples[i];
        try {
            const Generation original = original_generation(sample, ctx);
            MutedRequest request;
            request.base = base_request(sample, ctx.decoding);
            request.mutes = plan.targets;
            request.scope = plan.scope;
            const Generation perturbed =
                with_retries(ctx.retries, [&] { return ctx.runner.generate_muted(request); });
            InterventionResult r = judged(sample, original, perturbed, ctx);
            r.experiment = "mute";
            r.mutes = plan.targets;
            r.intervention_site = info.intervention_site;
            results[i] = std::move(r);
        } catch (...) {
            rethrow_for_sample(sample.sample_id);
        }
    });
    return results;
}

}  // namespace graphghost
