// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "builders.hpp"
#include "generators.hpp"
#include "graphghost/error.hpp"
#include "graphghost/ingest.hpp"
#include "graphghost/intervention/plans.hpp"

namespace graphghost {
namespace {

template <typename F>
void expect_kind(ErrorKind kind, F&& f) {
    try {
        f();
        FAIL() << "expected " << error_kind_name(kind);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

TEST(Samples, ToyFixtureContributingPositions) {
    const auto traces =
        parse_trace_file(std::string(GRAPHGHOST_TEST_DATA_DIR) + "/golden/toy_path.jsonl").traces;
    const auto samples = samples_from_traces(traces);
    ASSERT_EQ(samples.size(), 1u);
    EXPECT_EQ(samples[0].question_token_count(), 12);
    EXPECT_EQ(samples[0].contributing, (std::set<int>{0, 1, 2, 4, 6, 11}));
    std::set<std::string> texts;
    for (int p : samples[0].contributing) texts.insert(samples[0].question_tokens[static_cast<std::size_t>(p)]);
    EXPECT_EQ(texts, (std::set<std::string>{"4", "5", "|", "7", "S", "P"}));
}

TEST(Samples, TracesOfOneSampleAreUnited) {
    testing::TraceBuilder a("s", {"x", "y", "z", "=", "7"}, 4);
    a.neuron(1, 0, 1).logit(2).edge(1, 2);
    testing::TraceBuilder b("s", {"x", "y", "z", "=", "7"}, 4);
    b.neuron(1, 2, 1).logit(2).edge(1, 2);
    const std::vector<SampleTrace> traces{a.build(), b.build()};
    const auto samples = samples_from_traces(traces);
    ASSERT_EQ(samples.size(), 1u);
    EXPECT_EQ(samples[0].contributing, (std::set<int>{0, 2}));
    EXPECT_EQ(samples[0].question_text(), "xyz=");
}

TEST(Samples, DisagreeingQuestionsAreRejected) {
    testing::TraceBuilder a("s", {"x", "y", "7"}, 2);
    a.logit(1);
    testing::TraceBuilder b("s", {"x", "q", "7"}, 2);
    b.logit(1);
    const std::vector<SampleTrace> traces{a.build(), b.build()};
    expect_kind(ErrorKind::validation, [&] { samples_from_traces(traces); });
}

TEST(MaskPlans, ValidationAndBaselineNames) {
    validate_mask_plan({"s", {0, 3}, " ", MaskBaseline::contributing}, 4);
    expect_kind(ErrorKind::config, [] { validate_mask_plan({"s", {4}, " ", MaskBaseline::contributing}, 4); });
    expect_kind(ErrorKind::config, [] { validate_mask_plan({"s", {-1}, " ", MaskBaseline::contributing}, 4); });
    EXPECT_EQ(baseline_name(MaskBaseline::random_matched), "random-matched");
    EXPECT_EQ(parse_baseline("contributing"), MaskBaseline::contributing);
    EXPECT_EQ(parse_baseline("random"), std::nullopt);
}

TEST(MaskPlans, RandomMatchedKeepsTheSameCount) {
    testing::Rng rng(41);
    for (int i = 0; i < 500; ++i) {
        const int q = testing::uniform_int(rng, 1, 60);
        MaskPlan mirror{"s" + std::to_string(i), {}, "_", MaskBaseline::contributing};
        const int k = testing::uniform_int(rng, 0, q);
        while (static_cast<int>(mirror.keep_positions.size()) < k) mirror.keep_positions.insert(testing::uniform_int(rng, 0, q - 1));
        const std::uint64_t seed = rng();
        const MaskPlan plan = random_matched_plan(mirror, q, seed);
        EXPECT_EQ(plan.keep_positions.size(), mirror.keep_positions.size());
        EXPECT_EQ(plan.blank_token, "_");
        EXPECT_EQ(plan.baseline, MaskBaseline::random_matched);
        validate_mask_plan(plan, q);
        EXPECT_EQ(plan, random_matched_plan(mirror, q, seed));
    }
}

TEST(MaskPlans, RandomMatchedIsPinned) {
    const MaskPlan mirror{"gsm8k-1", {1, 2, 3}, " ", MaskBaseline::contributing};
    const MaskPlan a = random_matched_plan(mirror, 20, 7);
    EXPECT_EQ(a, random_matched_plan(mirror, 20, 7));
    EXPECT_NE(a.keep_positions, random_matched_plan(mirror, 20, 8).keep_positions);
    EXPECT_EQ(stable_hash(""), 14695981039346656037ULL);
    EXPECT_EQ(stable_hash("a"), 0xaf63dc4c8601ec8cULL);
    expect_kind(ErrorKind::config, [&] { random_matched_plan(mirror, 2, 1); });
}

TEST(MutePlans, Validation) {
    validate_mute_plan({{{" ", 0}, {" ", 5}}, MuteScope::all_positions}, 6);
    expect_kind(ErrorKind::plan, [] { validate_mute_plan({{}, MuteScope::all_positions}, 6); });
    expect_kind(ErrorKind::plan, [] { validate_mute_plan({{{" ", 6}}, MuteScope::all_positions}, 6); });
    expect_kind(ErrorKind::plan, [] { validate_mute_plan({{{" ", -1}}, MuteScope::all_positions}, 6); });
    expect_kind(ErrorKind::plan, [] { validate_mute_plan({{{"", 1}}, MuteScope::all_positions}, 6); });
    expect_kind(ErrorKind::plan, [] { validate_mute_plan({{{"a", 1}, {"a", 1}}, MuteScope::all_positions}, 6); });
    try {
        validate_mute_plan({{{"the", 9}}, MuteScope::all_positions}, 6);
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("unknown layer 9"), std::string::npos);
    }
}

}  // namespace
}  // namespace graphghost
