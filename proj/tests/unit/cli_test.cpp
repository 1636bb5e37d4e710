// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "builders.hpp"
#include "cli.hpp"
#include "generators.hpp"
#include "graphghost/ghost_io.hpp"
#include "graphghost/ingest.hpp"
#include "graphghost/report_io.hpp"
#include "mock_runner.hpp"
#include "mock_server.hpp"
#include "temp_dir.hpp"

namespace graphghost {
namespace {

const std::string kGolden = std::string(GRAPHGHOST_TEST_DATA_DIR) + "/golden/";

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

cli::Hooks mock_hooks(std::map<std::string, std::string> env = {}) {
    cli::Hooks h;
    h.make_runner = [](const std::string&) -> std::unique_ptr<RunnerClient> {
        return std::make_unique<testing::ScriptedRunner>();
    };
    h.make_judge = [](const std::optional<std::string>&) -> std::unique_ptr<JudgeClient> {
        return std::make_unique<DeterministicJudge>();
    };
    h.env = [env = std::move(env)](const char* name) -> std::optional<std::string> {
        auto it = env.find(name);
        if (it == env.end()) return std::nullopt;
        return it->second;
    };
    return h;
}

CliRun run(std::vector<std::string> args, const cli::Hooks& hooks = mock_hooks()) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = cli::run(args, out, err, hooks);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool single_error_line(const std::string& err, const std::string& kind) {
    const std::string prefix = "graphghost: error[" + kind + "]: ";
    return err.rfind(prefix, 0) == 0 || err.find("\n" + prefix) != std::string::npos;
}

std::string write_random_corpus(const testing::TempDir& dir, std::uint64_t seed) {
    testing::Rng rng(seed);
    testing::TraceGenParams params;
    params.max_traces = 40;
    params.max_nodes = 30;
    params.question_target_rate = 0.0;
    std::string text;
    for (const auto& t : testing::random_trace_set(rng, params)) text += serialize_trace(t) + "\n";
    const std::string path = dir.file("corpus.jsonl");
    testing::spit(path, text);
    return path;
}

TEST(Cli, ExitCodesFollowErrorKinds) {
    EXPECT_EQ(cli::exit_code_for(ErrorKind::validation), 1);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::format), 1);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::unsupported_version), 1);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::config), 2);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::plan), 2);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::transport), 3);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::capability), 3);
}

TEST(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run({"--help"}).code, 0);
    const CliRun none = run({});
    EXPECT_EQ(none.code, 2);
    EXPECT_TRUE(single_error_line(none.err, "config"));
    const CliRun bogus = run({"rank", "--graph", "/nonexistent.ghost"});
    EXPECT_EQ(bogus.code, 2);
    EXPECT_TRUE(single_error_line(bogus.err, "config"));
}

TEST(Cli, ValidateGoldenCorpus) {
    const CliRun r = run({"validate", kGolden + "toy_path.jsonl", kGolden + "gsm8k_small.jsonl"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("PASS " + kGolden + "toy_path.jsonl (1 traces, 0 errors, 0 warnings)"),
              std::string::npos);
}

TEST(Cli, ValidateNamesTheInvertedEdge) {
    testing::TempDir dir;
    testing::TraceBuilder b("s1", {"a", "b", "c", "d"}, 3);
    b.neuron(10, 0, 3).neuron(11, 1, 1).logit(12).edge(10, 11).edge(11, 12);
    testing::spit(dir.file("bad.jsonl"), b.line() + "\n");
    const CliRun r = run({"validate", dir.file("bad.jsonl")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL " + dir.file("bad.jsonl")), std::string::npos);
    EXPECT_NE(r.out.find("edge 0 (10 -> 11)"), std::string::npos) << r.out;
    EXPECT_TRUE(single_error_line(r.err, "validation"));
}

TEST(Cli, StrictTurnsWarningsIntoFailures) {
    const std::string file = kGolden + "question_target.jsonl";
    EXPECT_EQ(run({"validate", file}).code, 0);
    EXPECT_EQ(run({"--strict", "validate", file}).code, 1);

    testing::TempDir dir;
    EXPECT_EQ(run({"--strict", "build", "--out", dir.file("g.ghost"), file}).code, 4);
    const CliRun built = run({"build", "--out", dir.file("g.ghost"), file});
    EXPECT_EQ(built.code, 0) << built.err;
    EXPECT_NE(built.err.find("graphghost: warning: "), std::string::npos);
    const CliRun layers = run({"--strict", "layers", "--graph", dir.file("g.ghost")});
    EXPECT_EQ(layers.code, 4);
    EXPECT_TRUE(single_error_line(layers.err, "strict"));
}

TEST(Cli, BuildRankAndLayersEndToEnd) {
    testing::TempDir dir;
    const std::string corpus = write_random_corpus(dir, 2026);
    const CliRun built = run({"build", "--out", dir.file("g.ghost"), corpus, "--node-ratio", "0.9"});
    ASSERT_EQ(built.code, 0) << built.err;
    EXPECT_NE(built.out.find("samples_seen"), std::string::npos);
    EXPECT_NE(built.out.find("weight_total"), std::string::npos);

    const CliRun ranked = run({"rank", "--graph", dir.file("g.ghost"), "--by", "pagerank", "--top", "20"});
    ASSERT_EQ(ranked.code, 0) << ranked.err;
    const auto rows = read_ranking_csv(ranked.out);
    ASSERT_EQ(rows.size(), 20u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i - 1].score, rows[i].score);

    const CliRun tokens = run({"rank", "--graph", dir.file("g.ghost"), "--group-by", "token", "--reduce", "mean",
                            "--csv", dir.file("tokens.csv")});
    ASSERT_EQ(tokens.code, 0) << tokens.err;
    for (const auto& row : read_ranking_csv(testing::slurp(dir.file("tokens.csv")))) EXPECT_EQ(row.kind, "token");

    const CliRun layers = run({"layers", "--graph", dir.file("g.ghost"), "--csv", dir.file("layers.csv")});
    ASSERT_EQ(layers.code, 0) << layers.err;
    double sum = 0.0;
    for (const auto& row : parse_csv(testing::slurp(dir.file("layers.csv")))) {
        if (row[1] == "neuron") sum += std::stod(row[3]);
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Cli, OutputsAreByteIdentical) {
    testing::TempDir dir;
    const std::string corpus = write_random_corpus(dir, 7);
    for (const char* name : {"a.ghost", "b.ghost"}) {
        ASSERT_EQ(run({"build", "--out", dir.file(name), corpus, "--dedupe-per-trace"}).code, 0);
    }
    EXPECT_EQ(testing::slurp(dir.file("a.ghost")), testing::slurp(dir.file("b.ghost")));
    const CliRun r1 = run({"rank", "--graph", dir.file("a.ghost"), "--by", "pagerank"});
    const CliRun r2 = run({"rank", "--graph", dir.file("b.ghost"), "--by", "pagerank"});
    EXPECT_EQ(r1.out, r2.out);
}

TEST(Cli, MergeAndSubgraph) {
    testing::TempDir dir;
    ASSERT_EQ(run({"build", "--out", dir.file("gsm8k.ghost"), kGolden + "gsm8k_small.jsonl"}).code, 0);
    ASSERT_EQ(run({"build", "--out", dir.file("math.ghost"), kGolden + "math_two_samples.jsonl"}).code, 0);
    ASSERT_EQ(run({"build", "--out", dir.file("both.ghost"), kGolden + "gsm8k_small.jsonl",
                   kGolden + "math_two_samples.jsonl"})
                  .code,
              0);
    const CliRun merged = run({"merge", "--out", dir.file("merged.ghost"), dir.file("gsm8k.ghost"), dir.file("math.ghost")});
    ASSERT_EQ(merged.code, 0) << merged.err;
    EXPECT_TRUE(structurally_equal(load_ghostgraph(dir.file("merged.ghost")).graph,
                                   load_ghostgraph(dir.file("both.ghost")).graph));

    const CliRun sub = run({"subgraph", "--graphs", dir.file("gsm8k.ghost"), dir.file("math.ghost"), "--min-datasets",
                         "2", "--top-k", "3", "--dot", dir.file("shared.dot")});
    ASSERT_EQ(sub.code, 0) << sub.err;
    const DotGraph dot = read_dot(testing::slurp(dir.file("shared.dot")));
    EXPECT_FALSE(dot.nodes.empty());

    const CliRun stdout_dot = run({"subgraph", "--graphs", dir.file("gsm8k.ghost"), dir.file("math.ghost")});
    EXPECT_EQ(stdout_dot.out.rfind("digraph graphghost {", 0), 0u);

    const CliRun dup = run({"subgraph", "--graphs", dir.file("gsm8k.ghost"), dir.file("gsm8k.ghost")});
    EXPECT_EQ(dup.code, 2);
}

TEST(Cli, MergeOfDifferentModelsFails) {
    testing::TempDir dir;
    ASSERT_EQ(run({"build", "--out", dir.file("a.ghost"), kGolden + "gsm8k_small.jsonl"}).code, 0);
    ASSERT_EQ(run({"build", "--out", dir.file("b.ghost"), kGolden + "toy_path.jsonl"}).code, 0);
    const CliRun r = run({"merge", "--out", dir.file("m.ghost"), dir.file("a.ghost"), dir.file("b.ghost")});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(single_error_line(r.err, "validation")) << r.err;
}

TEST(Cli, CorruptGraphIsFormatError) {
    testing::TempDir dir;
    testing::spit(dir.file("bad.ghost"), "{\"format\":\"nope\"}\n");
    const CliRun r = run({"rank", "--graph", dir.file("bad.ghost")});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(single_error_line(r.err, "format")) << r.err;
}

std::string write_config(const testing::TempDir& dir, const std::string& extra = "") {
    const std::string text = "{\"trace_inputs\":[\"" + kGolden + "gsm8k_small.jsonl\",\"" + kGolden +
                             "math_two_samples.jsonl\"],\"output_dir\":\"out\",\"runner_url\":\"http://127.0.0.1:9\"," +
                             "\"bands\":[[1,2],[3,4]],\"decoding\":{\"max_new_tokens\":32,\"seed\":1}" + extra + "}";
    testing::spit(dir.file("campaign.json"), text);
    return dir.file("campaign.json");
}

TEST(Cli, PerturbAndReport) {
    testing::TempDir dir;
    const std::string cfg = write_config(dir);
    const CliRun mask = run({"perturb", "mask", "--config", cfg});
    ASSERT_EQ(mask.code, 0) << mask.err;
    EXPECT_NE(mask.out.find("wrote " + dir.file("out/mask_summary.csv")), std::string::npos);
    const CliRun mute = run({"perturb", "mute", "--config", cfg});
    ASSERT_EQ(mute.code, 0) << mute.err;
    EXPECT_NE(mute.out.find("Top1-2"), std::string::npos);
    const CliRun sweep = run({"perturb", "mute", "--config", cfg, "--sweep-layers", "--token", "."});
    ASSERT_EQ(sweep.code, 0) << sweep.err;
    EXPECT_NE(sweep.out.find("peak layers:"), std::string::npos);

    const CliRun report = run({"report", "--results", dir.file("out"), "--out", dir.file("report.md")});
    ASSERT_EQ(report.code, 0) << report.err;
    const std::string md = testing::slurp(dir.file("report.md"));
    EXPECT_NE(md.find("## Token masking"), std::string::npos);
    EXPECT_NE(md.find("## Impact of top-ranked neuron nodes"), std::string::npos);
    EXPECT_NE(md.find("## Layer sweep"), std::string::npos);

    // The traces come from another model than the mock runner.
    EXPECT_EQ(run({"--strict", "perturb", "mute", "--config", cfg}).code, 4);
}

TEST(Cli, PerturbErrorsMapToExitCodes) {
    testing::TempDir dir;
    const std::string bad = write_config(dir, ",\"pagerank\":{\"damping\":1.5}");
    const CliRun r = run({"perturb", "mask", "--config", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(single_error_line(r.err, "config"));
    EXPECT_EQ(run({"perturb", "mute", "--config", write_config(dir), "--token", "."}).code, 2);

    cli::Hooks no_mute = mock_hooks();
    no_mute.make_runner = [](const std::string&) -> std::unique_ptr<RunnerClient> {
        auto r = std::make_unique<testing::ScriptedRunner>();
        r->disable_mute();
        return r;
    };
    const CliRun cap = run({"perturb", "mute", "--config", write_config(dir)}, no_mute);
    EXPECT_EQ(cap.code, 3);
    EXPECT_TRUE(single_error_line(cap.err, "capability")) << cap.err;
}

TEST(Cli, PerturbOverHttpWithEnvironmentOverride) {
    testing::ScriptedRunner backend;
    DeterministicJudge judge;
    testing::MockServer server(&backend, &judge);
    testing::TempDir dir;
    cli::Hooks hooks = cli::default_hooks();
    hooks.env = [&](const char* name) -> std::optional<std::string> {
        if (std::string(name) == kRunnerUrlEnv) return server.url();
        return std::nullopt;
    };
    const CliRun r = run({"perturb", "mask", "--config", write_config(dir)}, hooks);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_FALSE(server.bodies("/v1/generate_masked").empty());
    EXPECT_EQ(read_results_file(dir.file("out/mask_results.jsonl")).size(), 10u);

    // A dead runner is a transport failure.
    hooks.env = [](const char* name) -> std::optional<std::string> {
        if (std::string(name) == kRunnerUrlEnv) return "http://127.0.0.1:1";
        return std::nullopt;
    };
    const CliRun dead = run({"perturb", "mask", "--config", write_config(dir, ",\"retries\":0")}, hooks);
    EXPECT_EQ(dead.code, 3);
    EXPECT_TRUE(single_error_line(dead.err, "transport")) << dead.err;
}

}  // namespace
}  // namespace graphghost
