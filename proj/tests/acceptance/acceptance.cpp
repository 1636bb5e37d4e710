// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything passes).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "graphghost/aggregate.hpp"
#include "graphghost/analytics.hpp"
#include "graphghost/error.hpp"
#include "graphghost/ghost_io.hpp"
#include "graphghost/ingest.hpp"
#include "graphghost/intervention/campaign.hpp"
#include "graphghost/intervention/experiment.hpp"
#include "graphghost/intervention/judge.hpp"
#include "graphghost/intervention/metrics.hpp"
#include "mock_runner.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

namespace gg = graphghost;
namespace gt = graphghost::testing;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string first_failure;

    void check(bool ok, const std::string& what) {
        if (!ok && pass) first_failure = what;
        pass = pass && ok;
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_oracle(const gg::BuildResult& built, const gt::OracleGraph& oracle) {
    const gt::OracleGraph got = gt::flatten(built.graph);
    return got.nodes == oracle.nodes && got.weights == oracle.weights &&
           built.report.traces_skipped_question_target == oracle.skipped;
}

Outcome aggregation_oracle() {
    Outcome o;
    const auto start = Clock::now();
    gt::Rng rng(20260001);
    gt::TraceGenParams params;  // <= 20 traces, <= 30 nodes each
    constexpr int kSets = 1000;
    std::size_t traces_seen = 0;
    for (int i = 0; i < kSets; ++i) {
        auto traces = gt::random_trace_set(rng, params);
        traces_seen += traces.size();
        for (bool dedupe : {false, true}) {
            gg::BuildOptions options;
            options.dedupe_per_trace = dedupe;
            const gg::BuildResult built = gg::build_ghostgraph(traces, options);
            o.check(same_oracle(built, gt::brute_force_count(traces, dedupe)),
                    "oracle mismatch in set " + std::to_string(i));
            o.check(built.report.weight_total == built.graph.weight_total(), "report weight in set " + std::to_string(i));

            auto shuffled = traces;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            const gg::BuildResult again = gg::build_ghostgraph(shuffled, options);
            o.check(gg::structurally_equal(built.graph, again.graph), "permutation changed set " + std::to_string(i));
        }
    }
    const double elapsed = seconds_since(start);
    o.check(elapsed < 60.0, "runtime over 60 s");
    std::ostringstream d;
    d << kSets << " trace sets (" << traces_seen << " traces, both counting modes) in " << elapsed << " s";
    o.detail = d.str();
    return o;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

Outcome pagerank_oracle() {
    Outcome o;
    const auto start = Clock::now();
    gt::Rng rng(20260002);
    constexpr int kGraphs = 500;
    double worst = 0.0;
    double worst_sum = 0.0;
    for (int i = 0; i < kGraphs; ++i) {
        const gg::DigraphView v = gt::random_digraph(rng, 20, gt::uniform_real(rng, 0.0, 0.6));
        const auto scores = gg::pagerank_scores(v, {});
        const auto oracle = gt::dense_pagerank(v.nodes().size(), v.arcs(), 0.85);
        const double err = l1(scores, oracle);
        const double sum_err = std::abs(std::accumulate(scores.begin(), scores.end(), 0.0) - 1.0);
        worst = std::max(worst, err);
        worst_sum = std::max(worst_sum, sum_err);
        o.check(err <= 1e-8, "L1 error " + std::to_string(err) + " on graph " + std::to_string(i));
        o.check(sum_err <= 1e-8, "sum off by " + std::to_string(sum_err) + " on graph " + std::to_string(i));
    }
    std::vector<gg::NodeKey> nodes;
    std::vector<gg::DigraphView::Arc> arcs;
    for (std::size_t k = 0; k < 4; ++k) {
        nodes.push_back({"c" + std::to_string(k), static_cast<int>(k), gg::NodeKind::neuron});
        arcs.push_back({k, (k + 1) % 4, 1});
    }
    double cycle_err = 0.0;
    for (double s : gg::pagerank_scores(gg::DigraphView(nodes, arcs), {})) cycle_err = std::max(cycle_err, std::abs(s - 0.25));
    o.check(cycle_err <= 1e-12, "4-cycle off by " + std::to_string(cycle_err));
    const double elapsed = seconds_since(start);
    o.check(elapsed < 60.0, "runtime over 60 s");
    std::ostringstream d;
    d << kGraphs << " graphs, worst L1 " << worst << ", worst |sum-1| " << worst_sum << ", 4-cycle max dev "
      << cycle_err << ", " << elapsed << " s";
    o.detail = d.str();
    return o;
}

Outcome layer_profile() {
    Outcome o;
    gt::Rng rng(20260003);
    constexpr int kGraphs = 2000;
    double worst = 0.0;
    int nonempty = 0;
    for (int i = 0; i < kGraphs; ++i) {
        const gg::GhostGraph g = gt::random_ghostgraph(rng, 30, gt::uniform_int(rng, 2, 12));
        const gg::LayerProfile p = gg::layer_indegree_profile(g);
        if (p.empty) continue;
        ++nonempty;
        double sum = 0.0;
        for (const auto& [layer, share] : p.per_layer) sum += share.ratio;
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    o.check(worst <= 1e-12, "ratio sum off by " + std::to_string(worst));

    // Concentration fixtures: every non-logit in-degree lands on one layer.
    int fixtures = 0;
    for (int target = 1; target <= 10; ++target) {
        gg::GhostGraph g("m", 12);
        const gg::NodeKey hub{"hub", target, gg::NodeKind::neuron};
        g.add_node(hub, "d");
        for (int s = 0; s < target; ++s) {
            const gg::NodeKey src{"s" + std::to_string(s), s, s == 0 ? gg::NodeKind::embedding : gg::NodeKind::neuron};
            g.add_node(src, "d");
            for (int rep = 0; rep <= s; ++rep) g.add_edge_occurrence(src, hub, 0.25, "d");
        }
        const gg::NodeKey logit{"y", 12, gg::NodeKind::logit};
        g.add_node(logit, "d");
        g.add_edge_occurrence(hub, logit, 1.0, "d");
        const gg::LayerProfile p = gg::layer_indegree_profile(g);
        o.check(p.per_layer.at(target).ratio == 1.0, "fixture at layer " + std::to_string(target));
        ++fixtures;
    }
    std::ostringstream d;
    d << nonempty << " random profiles, worst |sum-1| " << worst << "; " << fixtures << " concentration fixtures";
    o.detail = d.str();
    return o;
}

std::string read_all(const fs::path& p) { return gt::slurp(p.string()); }

Outcome round_trips() {
    Outcome o;
    const fs::path golden = fs::path(GRAPHGHOST_TEST_DATA_DIR) / "golden";
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(golden)) {
        if (e.path().extension() == ".jsonl") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    o.check(files.size() >= 20, "golden corpus has only " + std::to_string(files.size()) + " files");
    o.check(fs::exists(golden / "toy_path.jsonl"), "toy fixture missing");

    std::size_t traces = 0;
    for (const auto& path : files) {
        try {
            const gg::ParseResult parsed = gg::parse_trace_file(path.string());
            std::string text;
            for (const auto& t : parsed.traces) text += gg::serialize_trace(t) + "\n";
            o.check(text == read_all(path), "re-serialization differs for " + path.filename().string());
            traces += parsed.traces.size();
        } catch (const gg::Error& e) {
            o.check(false, path.filename().string() + ": " + e.what());
        }
    }

    std::size_t graphs = 0;
    gt::Rng rng(20260004);
    for (int i = 0; i < 200; ++i) {
        const auto set = gt::random_trace_set(rng, gt::TraceGenParams{});
        const gg::BuildResult built = gg::build_ghostgraph(set);
        const std::string first = gg::export_ghostgraph({built.graph, built.report});
        const std::string second = gg::export_ghostgraph({built.graph, built.report});
        o.check(first == second, "exports differ");
        const gg::GhostDocument back = gg::import_ghostgraph(first);
        o.check(gg::structurally_equal(back.graph, built.graph), "import differs from export");
        o.check(back.report == built.report, "report differs after import");
        o.check(gg::export_ghostgraph(back) == first, "re-export not byte-identical");
        ++graphs;
    }
    std::ostringstream d;
    d << files.size() << " golden files (" << traces << " traces) byte-identical; " << graphs
      << " graphs exported, imported and re-exported";
    o.detail = d.str();
    return o;
}

bool throws_config(const std::function<void()>& f) {
    try {
        f();
    } catch (const gg::Error& e) {
        return e.kind() == gg::ErrorKind::config;
    }
    return false;
}

Outcome metric_contracts() {
    Outcome o;
    o.check(gg::sparsity(5, 20) == 0.25, "sparsity 5/20");
    std::vector<gg::InterventionResult> rs(10);
    for (int i : {1, 4, 7}) rs[static_cast<std::size_t>(i)].language_changed = 1;
    o.check(gg::language_change_ratio(rs) == 0.3, "3 of 10 flagged");
    for (auto& r : rs) r.language_changed = 0;
    o.check(gg::language_change_ratio(rs) == 0.0, "none flagged");
    std::vector<gg::InterventionResult> fid(4);
    fid[0].fidelity = 1;
    fid[1].fidelity = 1;
    fid[2].fidelity = 1;
    o.check(gg::mean_fidelity(fid) == 0.75 && gg::avg_infidelity(fid) == 0.25, "fidelity 3 of 4");

    const gg::NodeKey a{"a", 1, gg::NodeKind::neuron};
    const gg::NodeKey b{"b", 2, gg::NodeKind::neuron};
    const gg::NodeKey c{"c", 3, gg::NodeKind::neuron};
    const auto single = gg::topk_impact({{a, 1.0, 1}}, {1, 1}, {{a, {0, 1, 1}}});
    o.check(single.avg_infidelity == 2.0 / 3.0 && single.max_infidelity == 2.0 / 3.0, "single node {0,1,1}");
    const auto band = gg::topk_impact({{a, 3.0, 1}, {b, 2.0, 2}, {c, 1.0, 3}}, {1, 10},
                                      {{a, {1, 0, 0, 0, 0}}, {b, {1, 1, 1, 1, 1, 1, 1, 1, 1, 0}}, {c, {1, 1, 0, 0, 0}}});
    o.check(band.avg_infidelity == 0.5 && band.max_infidelity == 0.9 && band.max_token == b, "band {0.2,0.9,0.4}");
    o.check(throws_config([] { gg::topk_impact({}, {1, 10}, {}); }), "empty band must fail");
    o.check(throws_config([] { gg::language_change_ratio({}); }), "empty language ratio must fail");

    auto verdict = [](const char* x, const char* y) { return gg::deterministic_judge("q", x, y).same ? 1 : 0; };
    o.check(verdict("...= 2 trips", "...Total = 16/8 = 2") == 1, "word-expression pair");
    o.check(verdict("... 16.0 trays / 8.0 trays per trip = 2 trips...",
                    "... Number of trips = Total trays / 8 = 16 / 8 = 2 trips ...") == 1,
            "word-expression pair (full)");
    o.check(verdict("19.0", "17.0 crayons") == 0, "key-steps pair");
    o.check(verdict("- Total crayons on the desk = 19.0",
                    "So, the total number of crayons = 7.0 (drawer) + 10.0 (desk) = 17.0 crayons.") == 0,
            "key-steps pair (full)");
    o.check(verdict("anything at all", "anything at all") == 1, "identical strings");
    o.check(verdict("= 2 trips", "16/8 = 2") == verdict("16/8 = 2", "= 2 trips"), "symmetry");
    o.detail = "sparsity, fidelity, infidelity, topk_impact, language ratio and judge examples";
    return o;
}

std::vector<gg::Sample> mock_samples(int n) {
    std::vector<gg::Sample> out;
    for (int i = 0; i < n; ++i) {
        out.push_back({"s" + std::to_string(i), "gsm8k",
                       {"Tom", " has", " " + std::to_string(i), " apples", " and", " 3", " pears", "."},
                       {0, 2, 5}});
    }
    return out;
}

Outcome intervention_engine() {
    Outcome o;
    const auto samples = mock_samples(50);
    gt::ScriptedRunner runner;
    gg::DeterministicJudge judge;
    gg::ExperimentContext ctx{runner, judge, gg::DecodingConfig{64, 0, true}, 4};
    std::vector<gg::MaskPlan> keep_all;
    for (const auto& s : samples) keep_all.push_back({s.sample_id, {0, 1, 2, 3, 4, 5, 6, 7}, " ", gg::MaskBaseline::contributing});
    int identity = 0;
    for (const auto& r : gg::run_mask_experiments(keep_all, samples, ctx)) {
        o.check(r.fidelity == 1 && r.original_answer == r.perturbed_answer, "keep-all mask changed " + r.sample_id);
        ++identity;
    }
    for (const auto& r : gg::run_mute_experiment({{{"never-occurs", 2}}, gg::MuteScope::all_positions}, samples, ctx)) {
        o.check(r.fidelity == 1 && r.original_answer == r.perturbed_answer, "no-op mute changed " + r.sample_id);
        ++identity;
    }

    // Full campaigns twice, with different fan-out, must match byte for byte.
    const fs::path golden = fs::path(GRAPHGHOST_TEST_DATA_DIR) / "golden";
    gt::TempDir a;
    gt::TempDir b;
    std::size_t files = 0;
    for (const gt::TempDir* dir : {&a, &b}) {
        gg::CampaignConfig c;
        c.trace_inputs = {(golden / "gsm8k_small.jsonl").string(), (golden / "math_two_samples.jsonl").string(),
                          (golden / "strategyqa_yesno.jsonl").string()};
        c.runner_url = "mock://";
        c.output_dir = dir->file("out");
        c.decoding = {48, 5, false};
        c.bands = {{1, 3}, {4, 8}};
        c.mask_seed = 9;
        c.max_in_flight = dir == &a ? 4 : 1;
        gt::ScriptedRunner r;
        gg::run_mask_campaign(c, r, judge);
        gg::run_mute_campaign(c, r, judge);
        gg::run_layer_sweep(c, ".", r, judge);
    }
    for (const auto& e : fs::directory_iterator(a.path() / "out")) {
        const fs::path other = b.path() / "out" / e.path().filename();
        o.check(fs::exists(other) && read_all(e.path()) == read_all(other),
                "campaign output differs: " + e.path().filename().string());
        ++files;
    }
    o.check(files >= 9, "expected every campaign output file");
    std::ostringstream d;
    d << identity << " identity perturbations at fidelity 1; " << files << " campaign files byte-identical";
    o.detail = d.str();
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"aggregation-oracle", aggregation_oracle},
        {"pagerank-oracle", pagerank_oracle},
        {"layer-profile-normalization", layer_profile},
        {"round-trips", round_trips},
        {"metric-contracts", metric_contracts},
        {"intervention-engine", intervention_engine},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.first_failure = std::string("exception: ") + e.what();
        }
        if (o.pass) {
            std::printf("PASS %s: %s\n", c.name, o.detail.c_str());
        } else {
            ++failed;
            std::printf("FAIL %s: %s%s%s\n", c.name, o.first_failure.c_str(), o.detail.empty() ? "" : "; ",
                        o.detail.c_str());
        }
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
