// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/intervention/campaign.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "../json_text.hpp"
#include "graphghost/aggregate.hpp"
#include "graphghost/error.hpp"
#include "graphghost/filter.hpp"
#include "graphghost/ingest.hpp"
#include "graphghost/intervention/experiment.hpp"
#include "graphghost/intervention/result.hpp"
#include "graphghost/report_io.hpp"

namespace graphghost {

namespace fs = std::filesystem;
using nlohmann::json;

EnvLookup process_environment() {
    return [](const char* name) -> std::optional<std::string> {
        const char* value = std::getenv(name);
        if (value == nullptr || *value == '\0') return std::nullopt;
        return std::string(value);
    };
}

namespace {

[[noreturn]] void bad_config(const std::string& message) {
    fail(ErrorKind::config, "campaign config: " + message);
}

const std::set<std::string>& known_fields() {
    static const std::set<std::string> fields = {
        "trace_inputs", "filters",       "runner_url", "judge_url",        "decoding",   "bands",
        "output_dir",   "blank_token",   "max_in_flight", "retries",      "mask_seed",  "dedupe_per_trace",
        "mute_scope",   "pagerank"};
    return fields;
}

template <typename T>
T get_as(const json& j, const std::string& name) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        bad_config("field '" + name + "' has the wrong type");
    }
}

void check_keys(const json& obj, const std::string& name, const std::set<std::string>& allowed) {
    if (!obj.is_object()) bad_config("field '" + name + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) bad_config("unknown field '" + (name.empty() ? key : name + "." + key) + "'");
    }
}

std::string resolve(const fs::path& base, const std::string& path) {
    const fs::path p(path);
    if (p.is_absolute() || base.empty()) return p.lexically_normal().string();
    return (base / p).lexically_normal().string();
}

}  // namespace

CampaignConfig parse_campaign_config(std::string_view text, const fs::path& base_dir, const EnvLookup& env) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        bad_config(std::string("malformed: ") + e.what());
    }
    check_keys(j, "", known_fields());

    CampaignConfig c;
    if (!j.contains("trace_inputs")) bad_config("missing field 'trace_inputs'");
    for (const auto& p : get_as<std::vector<std::string>>(j["trace_inputs"], "trace_inputs")) {
        c.trace_inputs.push_back(resolve(base_dir, p));
    }
    if (!j.contains("output_dir")) bad_config("missing field 'output_dir'");
    c.output_dir = resolve(base_dir, get_as<std::string>(j["output_dir"], "output_dir"));

    if (j.contains("filters")) {
        const json& f = j["filters"];
        check_keys(f, "filters", {"node_ratio", "edge_ratio"});
        if (f.contains("node_ratio")) c.filters.node_ratio = get_as<double>(f["node_ratio"], "filters.node_ratio");
        if (f.contains("edge_ratio")) c.filters.edge_ratio = get_as<double>(f["edge_ratio"], "filters.edge_ratio");
    }
    if (j.contains("runner_url")) c.runner_url = get_as<std::string>(j["runner_url"], "runner_url");
    if (j.contains("judge_url") && !j["judge_url"].is_null()) {
        c.judge_url = get_as<std::string>(j["judge_url"], "judge_url");
    }
    if (j.contains("decoding")) {
        const json& d = j["decoding"];
        check_keys(d, "decoding", {"max_new_tokens", "seed", "greedy"});
        if (d.contains("max_new_tokens")) {
            c.decoding.max_new_tokens = get_as<int>(d["max_new_tokens"], "decoding.max_new_tokens");
        }
        if (d.contains("seed")) {
            if (!d["seed"].is_number_unsigned()) bad_config("field 'decoding.seed' must be a non-negative integer");
            c.decoding.seed = d["seed"].get<std::uint64_t>();
        }
        if (d.contains("greedy")) c.decoding.greedy = get_as<bool>(d["greedy"], "decoding.greedy");
    }
    if (j.contains("bands")) {
        const json& bands = j["bands"];
        if (!bands.is_array()) bad_config("field 'bands' must be an array of [k_lo, k_hi] pairs");
        for (const auto& b : bands) {
            if (!b.is_array() || b.size() != 2 || !b[0].is_number_unsigned() || !b[1].is_number_unsigned()) {
                bad_config("field 'bands' must be an array of [k_lo, k_hi] pairs");
            }
            c.bands.push_back({b[0].get<std::size_t>(), b[1].get<std::size_t>()});
        }
    }
    if (j.contains("blank_token")) c.blank_token = get_as<std::string>(j["blank_token"], "blank_token");
    if (j.contains("max_in_flight")) {
        if (!j["max_in_flight"].is_number_unsigned()) bad_config("field 'max_in_flight' must be a positive integer");
        c.max_in_flight = j["max_in_flight"].get<std::size_t>();
    }
    if (j.contains("retries")) c.retries = get_as<int>(j["retries"], "retries");
    if (j.contains("mask_seed")) {
        if (!j["mask_seed"].is_number_unsigned()) bad_config("field 'mask_seed' must be a non-negative integer");
        c.mask_seed = j["mask_seed"].get<std::uint64_t>();
    }
    if (j.contains("dedupe_per_trace")) c.dedupe_per_trace = get_as<bool>(j["dedupe_per_trace"], "dedupe_per_trace");
    if (j.contains("mute_scope")) {
        auto scope = parse_mute_scope(get_as<std::string>(j["mute_scope"], "mute_scope"));
        if (!scope) bad_config("field 'mute_scope' must be \"all\" or \"prompt\"");
        c.mute_scope = *scope;
    }
    if (j.contains("pagerank")) {
        const json& p = j["pagerank"];
        check_keys(p, "pagerank", {"damping", "tol", "max_iter"});
        if (p.contains("damping")) c.pagerank.damping = get_as<double>(p["damping"], "pagerank.damping");
        if (p.contains("tol")) c.pagerank.tol = get_as<double>(p["tol"], "pagerank.tol");
        if (p.contains("max_iter")) c.pagerank.max_iter = get_as<int>(p["max_iter"], "pagerank.max_iter");
    }

    if (auto url = env(kRunnerUrlEnv)) c.runner_url = *url;
    if (auto url = env(kJudgeUrlEnv)) c.judge_url = *url;

    validate_campaign_config(c);
    return c;
}

CampaignConfig load_campaign_config(const std::string& path, const EnvLookup& env) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::config, "cannot open campaign config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_campaign_config(text.str(), fs::path(path).parent_path(), env);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what(), e.retriable());
    }
}

void validate_campaign_config(const CampaignConfig& c) {
    if (c.trace_inputs.empty()) bad_config("trace_inputs is empty");
    if (c.output_dir.empty()) bad_config("output_dir is empty");
    if (c.runner_url.empty()) {
        bad_config(std::string("runner_url is not set (config field or ") + kRunnerUrlEnv + ")");
    }
    if (c.judge_url && c.judge_url->empty()) bad_config("judge_url is empty");
    validate_filter_config(c.filters);
    if (c.decoding.max_new_tokens < 1) bad_config("decoding.max_new_tokens must be >= 1");
    std::size_t previous_hi = 0;
    for (const auto& b : c.bands) {
        if (b.k_lo < 1 || b.k_lo > b.k_hi) {
            bad_config("band [" + std::to_string(b.k_lo) + ", " + std::to_string(b.k_hi) + "] is not a 1-based range");
        }
        if (b.k_lo <= previous_hi) bad_config("bands must be ascending and non-overlapping");
        previous_hi = b.k_hi;
    }
    if (c.max_in_flight < 1) bad_config("max_in_flight must be >= 1");
    if (c.retries < 0) bad_config("retries must be >= 0");
    if (!(c.pagerank.damping > 0.0 && c.pagerank.damping < 1.0)) bad_config("pagerank.damping must be in (0, 1)");
    if (!(c.pagerank.tol > 0.0)) bad_config("pagerank.tol must be > 0");
    if (c.pagerank.max_iter < 1) bad_config("pagerank.max_iter must be >= 1");
}

void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) fail(ErrorKind::config, "output_dir '" + dir + "' cannot be created");
    const fs::path probe = fs::path(dir) / ".graphghost-write-probe";
    {
        std::ofstream out(probe, std::ios::binary);
        if (!out || !(out << "ok")) fail(ErrorKind::config, "output_dir '" + dir + "' is not writable");
    }
    fs::remove(probe, ec);
}

CampaignInputs load_campaign_inputs(const CampaignConfig& config) {
    CampaignInputs inputs;
    for (const auto& path : config.trace_inputs) {
        ParseResult parsed = parse_trace_file(path);
        for (const auto& d : parsed.diagnostics) inputs.warnings.push_back(path + ": " + format_diagnostic(d));
        for (auto& t : parsed.traces) {
            if (t.targets_question()) continue;
            inputs.traces.push_back(apply_filters(t, config.filters));
        }
    }
    for (auto& s : samples_from_traces(inputs.traces)) {
        if (s.question_token_count() == 0) {
            inputs.warnings.push_back("sample '" + s.sample_id + "' has an empty question; skipped");
            continue;
        }
        inputs.samples.push_back(std::move(s));
    }
    return inputs;
}

namespace {

void write_text(const CampaignConfig& config, CampaignOutcome& outcome, const std::string& name,
                const std::string& text) {
    const fs::path path = fs::path(config.output_dir) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) fail(ErrorKind::config, "cannot write '" + path.string() + "'");
    outcome.files.push_back(name);
}

std::string results_text(const std::vector<InterventionResult>& results) {
    std::string out;
    for (const auto& r : results) {
        out += serialize_result(r);
        out += '\n';
    }
    return out;
}

std::string fmt(double v) { return detail::format_double(v); }

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

struct Tally {
    std::size_t n = 0;
    double sparsity = 0.0;
    std::size_t same = 0;
    std::size_t changed = 0;
    std::size_t undecided = 0;
    std::size_t truncated = 0;

    void add(const InterventionResult& r) {
        ++n;
        sparsity += r.sparsity.value_or(0.0);
        same += static_cast<std::size_t>(r.fidelity);
        changed += static_cast<std::size_t>(r.language_changed);
        undecided += r.judge_undecided ? 1 : 0;
        truncated += r.truncated ? 1 : 0;
    }
    double mean(double total) const { return n == 0 ? 0.0 : total / static_cast<double>(n); }
    double fidelity() const { return mean(static_cast<double>(same)); }
};

ExperimentContext make_context(const CampaignConfig& c, RunnerClient& runner, JudgeClient& judge,
                               GenerationCache& cache) {
    ExperimentContext ctx{runner, judge, c.decoding};
    ctx.max_in_flight = c.max_in_flight;
    ctx.retries = c.retries;
    ctx.cache = &cache;
    return ctx;
}

void prepare(const CampaignConfig& config) {
    validate_campaign_config(config);
    ensure_output_dir(config.output_dir);
}

void append_row(std::string& out, const std::vector<std::string>& cells, const std::vector<std::size_t>& widths) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != 0) out += "  ";
        out += cells[i];
        if (i + 1 < cells.size()) out.append(widths[i] > cells[i].size() ? widths[i] - cells[i].size() : 0, ' ');
    }
    out += '\n';
}

std::string text_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        widths.resize(std::max(widths.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) append_row(out, row, widths);
    return out;
}

constexpr int kCurveBins = 10;

}  // namespace

CampaignOutcome run_mask_campaign(const CampaignConfig& config, RunnerClient& runner, JudgeClient& judge) {
    prepare(config);
    CampaignInputs inputs = load_campaign_inputs(config);
    CampaignOutcome outcome;
    outcome.warnings = std::move(inputs.warnings);

    std::vector<MaskPlan> plans;
    for (const auto& s : inputs.samples) {
        MaskPlan contributing = contributing_plan(s, config.blank_token);
        MaskPlan random = random_matched_plan(contributing, s.question_token_count(), config.mask_seed);
        plans.push_back(std::move(contributing));
        plans.push_back(std::move(random));
    }
    GenerationCache cache;
    ExperimentContext ctx = make_context(config, runner, judge, cache);
    const auto results = run_mask_experiments(plans, inputs.samples, ctx);
    write_text(config, outcome, "mask_results.jsonl", results_text(results));

    std::map<std::string, Tally> by_variant;
    std::map<std::pair<std::string, int>, Tally> curve;
    for (const auto& r : results) {
        by_variant[r.variant].add(r);
        const int bin = std::min(kCurveBins - 1, static_cast<int>(r.sparsity.value_or(0.0) * kCurveBins));
        curve[{r.variant, bin}].add(r);
    }

    std::string summary = csv_row({"variant", "samples", "mean_sparsity", "mean_fidelity", "avg_infidelity",
                                   "language_change_ratio", "undecided", "truncated"});
    std::vector<std::vector<std::string>> table = {{"variant", "samples", "sparsity", "fidelity", "infidelity"}};
    for (const auto& [variant, t] : by_variant) {
        summary += csv_row({variant, std::to_string(t.n), fmt(t.mean(t.sparsity)), fmt(t.fidelity()),
                            fmt(1.0 - t.fidelity()), fmt(t.mean(static_cast<double>(t.changed))),
                            std::to_string(t.undecided), std::to_string(t.truncated)});
        table.push_back({variant, std::to_string(t.n), fixed4(t.mean(t.sparsity)), fixed4(t.fidelity()),
                         fixed4(1.0 - t.fidelity())});
    }
    write_text(config, outcome, "mask_summary.csv", summary);

    std::string curve_csv = csv_row({"variant", "sparsity_lo", "sparsity_hi", "samples", "mean_sparsity",
                                     "mean_fidelity"});
    for (const auto& [key, t] : curve) {
        curve_csv += csv_row({key.first, fmt(static_cast<double>(key.second) / kCurveBins),
                              fmt(static_cast<double>(key.second + 1) / kCurveBins), std::to_string(t.n),
                              fmt(t.mean(t.sparsity)), fmt(t.fidelity())});
    }
    write_text(config, outcome, "mask_curve.csv", curve_csv);
    outcome.summary = text_table(table);
    return outcome;
}

CampaignOutcome run_mute_campaign(const CampaignConfig& config, RunnerClient& runner, JudgeClient& judge) {
    prepare(config);
    if (config.bands.empty()) bad_config("mute campaigns need at least one band");
    CampaignInputs inputs = load_campaign_inputs(config);
    CampaignOutcome outcome;
    outcome.warnings = std::move(inputs.warnings);

    BuildOptions build;
    build.filter = config.filters;
    build.dedupe_per_trace = config.dedupe_per_trace;
    const BuildResult built = build_ghostgraph(inputs.traces, build);
    const PageRankResult pr = pagerank(reverse_logit_edges(built.graph), config.pagerank);
    outcome.converged = pr.converged;
    if (!pr.converged) {
        outcome.warnings.push_back("pagerank did not converge after " + std::to_string(pr.iterations) +
                                   " iterations (residual " + fmt(pr.residual) + ")");
    }

    std::vector<RankedNode> candidates;
    for (const auto& r : pr.ranking) {
        if (r.key.kind == NodeKind::logit) continue;
        RankedNode c = r;
        c.rank = candidates.size() + 1;
        candidates.push_back(std::move(c));
    }
    write_text(config, outcome, "pagerank.csv", ranking_csv(candidates));

    const RunnerInfo info = runner.info();
    if (!built.graph.model_id().empty() && info.model_id != built.graph.model_id()) {
        outcome.warnings.push_back("runner model '" + info.model_id + "' differs from trace model '" +
                                   built.graph.model_id() + "'");
    }

    GenerationCache cache;
    ExperimentContext ctx = make_context(config, runner, judge, cache);
    std::vector<InterventionResult> all;
    std::map<NodeKey, std::vector<int>> infidelities;
    std::string nodes_csv = csv_row({"rank", "token", "layer", "score", "samples", "mean_infidelity",
                                     "language_change_ratio"});
    std::vector<TopKBand> bands;
    for (const auto& band : config.bands) {
        if (band.k_lo > candidates.size()) {
            bad_config("band " + std::to_string(band.k_lo) + "-" + std::to_string(band.k_hi) + " starts past the " +
                       std::to_string(candidates.size()) + " ranked neuron nodes");
        }
        TopKBand clipped = band;
        if (band.k_hi > candidates.size()) {
            clipped.k_hi = candidates.size();
            outcome.warnings.push_back("band " + std::to_string(band.k_lo) + "-" + std::to_string(band.k_hi) +
                                       " clipped to " + std::to_string(clipped.k_hi));
        }
        bands.push_back(clipped);
        for (std::size_t rank = clipped.k_lo; rank <= clipped.k_hi; ++rank) {
            const RankedNode& node = candidates[rank - 1];
            MutePlan plan;
            plan.targets = {{node.key.token, node.key.layer}};
            plan.scope = config.mute_scope;
            auto results = run_mute_experiment(plan, inputs.samples, ctx);
            Tally t;
            auto& per_node = infidelities[node.key];
            for (const auto& r : results) {
                t.add(r);
                per_node.push_back(r.infidelity());
            }
            nodes_csv += csv_row({std::to_string(rank), node.key.token, std::to_string(node.key.layer),
                                  fmt(node.score), std::to_string(t.n), fmt(1.0 - t.fidelity()),
                                  fmt(t.mean(static_cast<double>(t.changed)))});
            all.insert(all.end(), std::make_move_iterator(results.begin()), std::make_move_iterator(results.end()));
        }
    }
    write_text(config, outcome, "mute_results.jsonl", results_text(all));
    write_text(config, outcome, "mute_nodes.csv", nodes_csv);

    std::string impact = csv_row({"model_id", "band", "k_lo", "k_hi", "avg_infidelity", "max_infidelity",
                                  "max_token", "max_layer", "language_change_ratio"});
    std::vector<std::vector<std::string>> table = {{"band", "AVG", "MAX", "token"}};
    for (const auto& band : bands) {
        std::vector<InterventionResult> in_band;
        for (const auto& r : all) {
            for (std::size_t rank = band.k_lo; rank <= band.k_hi; ++rank) {
                const NodeKey& k = candidates[rank - 1].key;
                if (r.mutes.size() == 1 && r.mutes[0].token_text == k.token && r.mutes[0].layer == k.layer) {
                    in_band.push_back(r);
                    break;
                }
            }
        }
        const std::string label = "Top" + std::to_string(band.k_lo) + "-" + std::to_string(band.k_hi);
        if (in_band.empty()) {
            outcome.warnings.push_back(label + " has no results (no samples)");
            continue;
        }
        const TopKImpactReport rep = topk_impact(candidates, band, infidelities);
        impact += csv_row({info.model_id, label, std::to_string(band.k_lo), std::to_string(band.k_hi),
                           fmt(rep.avg_infidelity), fmt(rep.max_infidelity), rep.max_token.token,
                           std::to_string(rep.max_token.layer), fmt(language_change_ratio(in_band))});
        table.push_back({label, fixed4(rep.avg_infidelity), fixed4(rep.max_infidelity),
                         report_token_label(rep.max_token.token, rep.max_token.layer)});
    }
    write_text(config, outcome, "topk_impact.csv", impact);
    outcome.summary = text_table(table);
    if (!all.empty()) {
        outcome.summary += "language change ratio: " + fixed4(language_change_ratio(all)) + "\n";
    }
    return outcome;
}

std::vector<int> sweep_peaks(const std::vector<std::pair<int, double>>& curve) {
    std::set<int> peaks;
    if (curve.empty()) return {};
    std::size_t best = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve[i].second > curve[best].second) best = i;
        const bool left = i == 0 || curve[i].second > curve[i - 1].second;
        const bool right = i + 1 == curve.size() || curve[i].second > curve[i + 1].second;
        if (left && right && curve.size() > 1) peaks.insert(curve[i].first);
    }
    peaks.insert(curve[best].first);
    return {peaks.begin(), peaks.end()};
}

CampaignOutcome run_layer_sweep(const CampaignConfig& config, const std::string& token, RunnerClient& runner,
                                JudgeClient& judge) {
    if (token.empty()) fail(ErrorKind::config, "layer sweep needs a non-empty token");
    prepare(config);
    CampaignInputs inputs = load_campaign_inputs(config);
    CampaignOutcome outcome;
    outcome.warnings = std::move(inputs.warnings);

    const RunnerInfo info = runner.info();
    if (info.logit_layer < 1) fail(ErrorKind::plan, "runner reports no neuron layers to sweep");
    GenerationCache cache;
    ExperimentContext ctx = make_context(config, runner, judge, cache);
    std::vector<InterventionResult> all;
    std::vector<std::pair<int, double>> curve;
    std::vector<Tally> tallies;
    for (int layer = 0; layer < info.logit_layer; ++layer) {
        MutePlan plan;
        plan.targets = {{token, layer}};
        plan.scope = config.mute_scope;
        auto results = run_mute_experiment(plan, inputs.samples, ctx);
        Tally t;
        for (const auto& r : results) t.add(r);
        curve.emplace_back(layer, 1.0 - t.fidelity());
        tallies.push_back(t);
        all.insert(all.end(), std::make_move_iterator(results.begin()), std::make_move_iterator(results.end()));
    }
    const std::vector<int> peaks = sweep_peaks(curve);
    write_text(config, outcome, "layer_sweep_results.jsonl", results_text(all));

    std::string csv = csv_row({"token", "layer", "samples", "mean_infidelity", "language_change_ratio", "peak"});
    std::vector<std::vector<std::string>> table = {{"layer", "infidelity", "language", "peak"}};
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const bool peak = std::binary_search(peaks.begin(), peaks.end(), curve[i].first);
        const Tally& t = tallies[i];
        csv += csv_row({token, std::to_string(curve[i].first), std::to_string(t.n), fmt(curve[i].second),
                        fmt(t.mean(static_cast<double>(t.changed))), peak ? "1" : "0"});
        table.push_back({std::to_string(curve[i].first), fixed4(curve[i].second),
                         fixed4(t.mean(static_cast<double>(t.changed))), peak ? "*" : ""});
    }
    write_text(config, outcome, "layer_sweep.csv", csv);
    outcome.summary = text_table(table);
    std::string peak_list;
    for (int p : peaks) peak_list += (peak_list.empty() ? "" : ", ") + std::to_string(p);
    outcome.summary += "peak layers: " + peak_list + "\n";
    return outcome;
}

std::string report_token_label(const std::string& token, int layer) {
    std::string out;
    for (char c : token) {
        switch (c) {
            case ' ': out += "<space>"; break;
            case '\n': out += "<newline>"; break;
            case '\t': out += "<tab>"; break;
            case '|': out += "\\|"; break;
            default: out += c;
        }
    }
    return out + "_" + std::to_string(layer);
}

namespace {

std::optional<std::vector<std::vector<std::string>>> read_csv_if_present(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream text;
    text << in.rdbuf();
    auto rows = parse_csv(text.str());
    if (rows.empty()) fail(ErrorKind::format, path.string() + ": empty file");
    return rows;
}

std::map<std::string, std::string> as_record(const std::vector<std::string>& header,
                                             const std::vector<std::string>& row, const fs::path& path) {
    if (row.size() != header.size()) fail(ErrorKind::format, path.string() + ": row arity differs from header");
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < header.size(); ++i) out[header[i]] = row[i];
    return out;
}

const std::string& need(const std::map<std::string, std::string>& rec, const std::string& key, const fs::path& path) {
    auto it = rec.find(key);
    if (it == rec.end()) fail(ErrorKind::format, path.string() + ": missing column '" + key + "'");
    return it->second;
}

std::string cell4(const std::string& text, const fs::path& path) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return fixed4(v);
    } catch (const std::exception&) {
        fail(ErrorKind::format, path.string() + ": bad number '" + text + "'");
    }
}

}  // namespace

std::string render_report(const std::string& results_dir) {
    const fs::path dir(results_dir);
    if (!fs::is_directory(dir)) fail(ErrorKind::config, "results directory '" + results_dir + "' does not exist");
    std::string md = "# GraphGhost intervention report\n";
    bool any = false;

    const fs::path mask_path = dir / "mask_summary.csv";
    if (auto rows = read_csv_if_present(mask_path)) {
        any = true;
        md += "\n## Token masking\n\n";
        md += "| Variant | Samples | Sparsity | Fidelity | InFidelity |\n";
        md += "|---|---:|---:|---:|---:|\n";
        for (std::size_t i = 1; i < rows->size(); ++i) {
            const auto rec = as_record(rows->front(), (*rows)[i], mask_path);
            md += "| " + need(rec, "variant", mask_path) + " | " + need(rec, "samples", mask_path) + " | " +
                  cell4(need(rec, "mean_sparsity", mask_path), mask_path) + " | " +
                  cell4(need(rec, "mean_fidelity", mask_path), mask_path) + " | " +
                  cell4(need(rec, "avg_infidelity", mask_path), mask_path) + " |\n";
        }
    }

    const fs::path impact_path = dir / "topk_impact.csv";
    if (auto rows = read_csv_if_present(impact_path)) {
        any = true;
        md += "\n## Impact of top-ranked neuron nodes\n\n";
        md += "| Model | Band | AVG | MAX | Token | Language change |\n";
        md += "|---|---|---:|---:|---|---:|\n";
        for (std::size_t i = 1; i < rows->size(); ++i) {
            const auto rec = as_record(rows->front(), (*rows)[i], impact_path);
            int layer = 0;
            try {
                layer = std::stoi(need(rec, "max_layer", impact_path));
            } catch (const std::exception&) {
                fail(ErrorKind::format, impact_path.string() + ": bad max_layer");
            }
            md += "| " + need(rec, "model_id", impact_path) + " | " + need(rec, "band", impact_path) + " | " +
                  cell4(need(rec, "avg_infidelity", impact_path), impact_path) + " | " +
                  cell4(need(rec, "max_infidelity", impact_path), impact_path) + " | " +
                  report_token_label(need(rec, "max_token", impact_path), layer) + " | " +
                  cell4(need(rec, "language_change_ratio", impact_path), impact_path) + " |\n";
        }
    }

    const fs::path sweep_path = dir / "layer_sweep.csv";
    if (auto rows = read_csv_if_present(sweep_path)) {
        any = true;
        md += "\n## Layer sweep\n\n";
        md += "| Token | Layer | InFidelity | Language change | Peak |\n";
        md += "|---|---:|---:|---:|:-:|\n";
        for (std::size_t i = 1; i < rows->size(); ++i) {
            const auto rec = as_record(rows->front(), (*rows)[i], sweep_path);
            std::string token = report_token_label(need(rec, "token", sweep_path), 0);
            token.resize(token.size() - 2);
            md += "| " + token + " | " + need(rec, "layer", sweep_path) + " | " +
                  cell4(need(rec, "mean_infidelity", sweep_path), sweep_path) + " | " +
                  cell4(need(rec, "language_change_ratio", sweep_path), sweep_path) + " | " +
                  (need(rec, "peak", sweep_path) == "1" ? "yes" : "") + " |\n";
        }
    }
    if (!any) fail(ErrorKind::config, "no campaign outputs found in '" + results_dir + "'");
    return md;
}

}  // namespace graphghost
