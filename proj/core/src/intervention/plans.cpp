// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/intervention/plans.hpp"

#include <limits>
#include <random>
#include <unordered_map>

#include "graphghost/error.hpp"

namespace graphghost {

std::string Sample::question_text() const {
    std::string out;
    for (const auto& t : question_tokens) out += t;
    return out;
}

std::set<int> contributing_positions(std::span<const SampleTrace> traces, int question_token_count) {
    std::set<int> out;
    for (const auto& t : traces) {
        for (const auto& node : t.nodes) {
            if (node.position < question_token_count) out.insert(node.position);
        }
    }
    return out;
}

std::vector<Sample> samples_from_traces(std::span<const SampleTrace> traces) {
    std::vector<Sample> samples;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& t : traces) {
        std::vector<std::string> question;
        for (int p = 0; p < t.question_token_count; ++p) question.push_back(t.tokens[static_cast<std::size_t>(p)].text);

        auto [it, inserted] = index.try_emplace(t.sample_id, samples.size());
        if (inserted) {
            samples.push_back({t.sample_id, t.dataset, std::move(question), {}});
        } else if (samples[it->second].question_tokens != question) {
            fail(ErrorKind::validation, "sample '" + t.sample_id + "': traces disagree on the question tokens");
        }
        Sample& s = samples[it->second];
        const auto positions = contributing_positions(std::span<const SampleTrace>(&t, 1), s.question_token_count());
        s.contributing.insert(positions.begin(), positions.end());
    }
    return samples;
}

std::string_view baseline_name(MaskBaseline baseline) {
    return baseline == MaskBaseline::contributing ? "contributing" : "random-matched";
}

std::optional<MaskBaseline> parse_baseline(std::string_view text) {
    if (text == "contributing") return MaskBaseline::contributing;
    if (text == "random-matched") return MaskBaseline::random_matched;
    return std::nullopt;
}

void validate_mask_plan(const MaskPlan& plan, int question_token_count) {
    for (int p : plan.keep_positions) {
        if (p < 0 || p >= question_token_count) {
            fail(ErrorKind::config, "mask plan for '" + plan.sample_id + "': position " + std::to_string(p) +
                                        " is outside the question");
        }
    }
}

MaskPlan contributing_plan(const Sample& sample, std::string blank_token) {
    return {sample.sample_id, sample.contributing, std::move(blank_token), MaskBaseline::contributing};
}

std::uint64_t stable_hash(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

MaskPlan random_matched_plan(const MaskPlan& mirror, int question_token_count, std::uint64_t seed) {
    const auto n = static_cast<std::uint64_t>(question_token_count);
    const auto k = static_cast<std::uint64_t>(mirror.keep_positions.size());
    if (k > n) fail(ErrorKind::config, "mask plan for '" + mirror.sample_id + "' keeps more than the question");

    // Floyd's sampling; explicit rejection keeps the draw identical across
    // standard libraries (std::uniform_int_distribution is not portable).
    std::mt19937_64 rng(seed ^ stable_hash(mirror.sample_id));
    auto uniform_below = [&rng](std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = 0;
        do {
            x = rng();
        } while (x >= limit);
        return x % bound;
    };
    MaskPlan plan{mirror.sample_id, {}, mirror.blank_token, MaskBaseline::random_matched};
    for (std::uint64_t j = n - k; j < n; ++j) {
        const auto t = static_cast<int>(uniform_below(j + 1));
        if (!plan.keep_positions.insert(t).second) plan.keep_positions.insert(static_cast<int>(j));
    }
    return plan;
}

void validate_mute_plan(const MutePlan& plan, int logit_layer) {
    if (plan.targets.empty()) fail(ErrorKind::plan, "mute plan has no targets");
    std::set<MuteTarget> seen;
    for (const auto& t : plan.targets) {
        if (t.token_text.empty()) fail(ErrorKind::plan, "mute target with empty token text");
        if (t.layer < 0 || t.layer >= logit_layer) {
            fail(ErrorKind::plan, "unknown layer " + std::to_string(t.layer) + " for mute target \"" + t.token_text +
                                      "\" (runner layers are 0.." + std::to_string(logit_layer - 1) + ")");
        }
        if (!seen.insert(t).second) {
            fail(ErrorKind::plan, "duplicate mute target \"" + t.token_text + "\"@" + std::to_string(t.layer));
        }
    }
}

}  // namespace graphghost
