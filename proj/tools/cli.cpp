// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "graphghost/aggregate.hpp"
#include "graphghost/analytics.hpp"
#include "graphghost/ghost_io.hpp"
#include "graphghost/ingest.hpp"
#include "graphghost/intervention/http_clients.hpp"
#include "graphghost/report_io.hpp"

namespace graphghost::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::validation:
        case ErrorKind::unsupported_version:
        case ErrorKind::format:
            return kValidation;
        case ErrorKind::config:
        case ErrorKind::plan:
            return kConfig;
        case ErrorKind::capability:
        case ErrorKind::transport:
            return kTransport;
    }
    return kValidation;
}

Hooks default_hooks() {
    Hooks hooks;
    hooks.make_runner = [](const std::string& url) -> std::unique_ptr<RunnerClient> {
        return std::make_unique<HttpRunnerClient>(url);
    };
    hooks.make_judge = [](const std::optional<std::string>& url) -> std::unique_ptr<JudgeClient> {
        if (url) return std::make_unique<HttpJudgeClient>(*url);
        return std::make_unique<DeterministicJudge>();
    };
    hooks.env = process_environment();
    return hooks;
}

namespace {

std::string one_line(std::string_view text) {
    std::string out(text);
    std::replace(out.begin(), out.end(), '\n', ' ');
    std::replace(out.begin(), out.end(), '\r', ' ');
    return out;
}

void print_error(std::ostream& err, std::string_view kind, std::string_view message) {
    err << "graphghost: error[" << kind << "]: " << one_line(message) << '\n';
}

void print_warning(std::ostream& err, std::string_view message) {
    err << "graphghost: warning: " << one_line(message) << '\n';
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) fail(ErrorKind::config, "cannot write '" + path + "'");
}

struct Options {
    bool strict = false;

    std::vector<std::string> files;
    bool lenient = false;

    std::string out_path;
    double node_ratio = 1.0;
    double edge_ratio = 1.0;
    bool dedupe = false;

    std::string graph_path;
    std::string by = "indegree";
    std::string group_by = "node";
    std::string reduce = "sum";
    double damping = 0.85;
    double tol = 1e-9;
    int max_iter = 200;
    std::size_t top = 0;
    std::string csv_path;

    std::size_t min_datasets = 1;
    std::size_t top_k = 0;
    std::string dot_path;

    std::string config_path;
    bool sweep_layers = false;
    std::string token;

    std::string results_dir;
};

class Command {
public:
    Command(Options& o, std::ostream& out, std::ostream& err, const Hooks& hooks)
        : o_(o), out_(out), err_(err), hooks_(hooks) {}

    int validate() {
        std::size_t failed = 0;
        const Strictness strictness = o_.lenient ? Strictness::lenient : Strictness::strict;
        for (const auto& path : o_.files) {
            std::ifstream in(path, std::ios::binary);
            if (!in) {
                out_ << "FAIL " << path << '\n' << "  error: cannot open file\n";
                ++failed;
                continue;
            }
            std::vector<Diagnostic> diagnostics;
            std::size_t traces = 0;
            std::size_t errors = 0;
            std::string line;
            std::size_t line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.find_first_not_of(" \t") == std::string::npos) continue;
                LineCheck check = check_trace_line(line, line_no, strictness);
                if (check.trace) ++traces;
                for (auto& d : check.diagnostics) {
                    if (d.severity == Severity::error) ++errors;
                    diagnostics.push_back(std::move(d));
                }
            }
            const bool ok = errors == 0 && !(o_.strict && !diagnostics.empty());
            out_ << (ok ? "PASS " : "FAIL ") << path << " (" << traces << " traces, " << errors << " errors, "
                 << diagnostics.size() - errors << " warnings)\n";
            for (const auto& d : diagnostics) out_ << "  " << one_line(format_diagnostic(d)) << '\n';
            if (!ok) ++failed;
        }
        if (failed != 0) {
            print_error(err_, error_kind_name(ErrorKind::validation),
                        std::to_string(failed) + " of " + std::to_string(o_.files.size()) + " files invalid");
            return kValidation;
        }
        return kOk;
    }

    int build() {
        ParseOptions parse;
        parse.strictness = o_.lenient ? Strictness::lenient : Strictness::strict;
        std::vector<SampleTrace> traces;
        for (const auto& path : o_.files) {
            ParseResult result = parse_trace_file(path, parse);
            for (const auto& d : result.diagnostics) warn(path + ": " + format_diagnostic(d));
            std::move(result.traces.begin(), result.traces.end(), std::back_inserter(traces));
        }
        BuildOptions options;
        options.filter = {o_.node_ratio, o_.edge_ratio};
        options.dedupe_per_trace = o_.dedupe;
        BuildResult built = build_ghostgraph(traces, options);
        save_ghostgraph({built.graph, built.report}, o_.out_path);
        print_report(built.report);
        return finish();
    }

    int merge() {
        GhostDocument merged;
        bool first = true;
        for (const auto& path : o_.files) {
            GhostDocument doc = load_ghostgraph(path);
            if (first) {
                merged = std::move(doc);
                first = false;
                continue;
            }
            GhostGraph graph = merge_ghostgraphs(merged.graph, doc.graph);
            merged.report = merge_reports(merged.report, doc.report, graph);
            merged.graph = std::move(graph);
        }
        save_ghostgraph(merged, o_.out_path);
        print_report(merged.report);
        return finish();
    }

    int rank() {
        const GhostGraph graph = load_ghostgraph(o_.graph_path).graph;
        std::vector<RankedNode> nodes;
        if (o_.by == "pagerank") {
            PageRankOptions options{o_.damping, o_.tol, o_.max_iter};
            PageRankResult pr = pagerank(reverse_logit_edges(graph), options);
            if (!pr.converged) {
                warn("pagerank did not converge after " + std::to_string(pr.iterations) + " iterations");
            }
            nodes = std::move(pr.ranking);
        } else {
            nodes = indegree_ranking(graph);
        }
        std::string csv;
        if (o_.group_by == "token") {
            auto tokens = group_by_token(nodes, o_.reduce == "mean" ? Reduce::mean : Reduce::sum);
            if (o_.top != 0 && tokens.size() > o_.top) tokens.resize(o_.top);
            csv = token_ranking_csv(tokens);
        } else {
            if (o_.top != 0 && nodes.size() > o_.top) nodes.resize(o_.top);
            csv = ranking_csv(nodes);
        }
        emit(csv, o_.csv_path);
        return finish();
    }

    int layers() {
        const GhostGraph graph = load_ghostgraph(o_.graph_path).graph;
        const LayerProfile profile = layer_indegree_profile(graph);
        if (profile.empty) warn("graph has no in-degree on neuron layers; all ratios are 0");
        emit(layer_profile_csv(profile), o_.csv_path);
        return finish();
    }

    int subgraph() {
        std::map<std::string, GhostGraph> graphs;
        for (const auto& path : o_.files) {
            const std::string name = fs::path(path).stem().string();
            if (!graphs.emplace(name, load_ghostgraph(path).graph).second) {
                fail(ErrorKind::config, "two graphs share the dataset name '" + name + "'");
            }
        }
        const std::optional<std::size_t> top_k = o_.top_k;
        PageRankOptions options{o_.damping, o_.tol, o_.max_iter};
        const GhostGraph shared = shared_subgraph(graphs, o_.min_datasets, top_k, options);
        if (!o_.dot_path.empty()) write_file(o_.dot_path, export_dot(shared));
        if (!o_.out_path.empty()) {
            BuildReport report;
            report.nodes_total = static_cast<std::int64_t>(shared.nodes().size());
            report.edges_total = static_cast<std::int64_t>(shared.edges().size());
            report.weight_total = shared.weight_total();
            save_ghostgraph({shared, report}, o_.out_path);
        }
        if (o_.dot_path.empty() && o_.out_path.empty()) out_ << export_dot(shared);
        else out_ << "shared nodes " << shared.nodes().size() << ", edges " << shared.edges().size() << '\n';
        return finish();
    }

    int perturb(bool mute) {
        const CampaignConfig config = load_campaign_config(o_.config_path, hooks_.env);
        auto runner = hooks_.make_runner(config.runner_url);
        auto judge = hooks_.make_judge(config.judge_url);
        CampaignOutcome outcome;
        if (!mute) {
            outcome = run_mask_campaign(config, *runner, *judge);
        } else if (o_.sweep_layers) {
            outcome = run_layer_sweep(config, o_.token, *runner, *judge);
        } else {
            outcome = run_mute_campaign(config, *runner, *judge);
        }
        for (const auto& w : outcome.warnings) warn(w);
        out_ << outcome.summary;
        for (const auto& f : outcome.files) out_ << "wrote " << (fs::path(config.output_dir) / f).string() << '\n';
        return finish();
    }

    int report() {
        const std::string md = render_report(o_.results_dir);
        emit(md, o_.out_path);
        return kOk;
    }

private:
    void warn(const std::string& message) {
        print_warning(err_, message);
        ++warnings_;
    }

    int finish() {
        if (o_.strict && warnings_ != 0) {
            print_error(err_, "strict", std::to_string(warnings_) + " warning(s) treated as failure");
            return kStrictWarning;
        }
        return kOk;
    }

    void emit(const std::string& text, const std::string& path) {
        if (path.empty()) {
            out_ << text;
        } else {
            write_file(path, text);
        }
    }

    void print_report(const BuildReport& r) {
        const std::pair<const char*, std::int64_t> rows[] = {
            {"samples_seen", r.samples_seen},
            {"traces_merged", r.traces_merged},
            {"traces_skipped_question_target", r.traces_skipped_question_target},
            {"nodes_total", r.nodes_total},
            {"edges_total", r.edges_total},
            {"weight_total", r.weight_total},
        };
        for (const auto& [name, value] : rows) {
            const std::string label = name;
            out_ << label << std::string(32 - label.size(), ' ') << value << '\n';
        }
    }

    Options& o_;
    std::ostream& out_;
    std::ostream& err_;
    const Hooks& hooks_;
    std::size_t warnings_ = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    Options o;
    CLI::App app{"GraphGhost: aggregate attribution graphs and test what they find", "graphghost"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--strict", o.strict, "Treat warnings as failures (exit code 4)");

    const auto ratio = CLI::Range(0.0, 1.0);

    auto* validate = app.add_subcommand("validate", "Check trace files and print line-level diagnostics");
    validate->add_option("files", o.files, "Trace files (JSON lines)")->required()->check(CLI::ExistingFile);
    validate->add_flag("--lenient", o.lenient, "Accept unknown fields");

    auto* build = app.add_subcommand("build", "Aggregate traces into a GhostGraph");
    build->add_option("--out", o.out_path, "Output graph file")->required();
    build->add_option("files", o.files, "Trace files")->required()->check(CLI::ExistingFile);
    build->add_option("--node-ratio", o.node_ratio, "Fraction of nodes kept per trace")->check(ratio);
    build->add_option("--edge-ratio", o.edge_ratio, "Fraction of edges kept per trace")->check(ratio);
    build->add_flag("--dedupe-per-trace", o.dedupe, "Count each keyed edge at most once per trace");
    build->add_flag("--lenient", o.lenient, "Skip malformed records instead of failing");

    auto* merge = app.add_subcommand("merge", "Merge GhostGraphs of the same model");
    merge->add_option("--out", o.out_path, "Output graph file")->required();
    merge->add_option("graphs", o.files, "Graph files")->required()->check(CLI::ExistingFile);

    auto add_pagerank_flags = [&](CLI::App* cmd) {
        cmd->add_option("--damping", o.damping, "PageRank damping factor in (0, 1)");
        cmd->add_option("--tol", o.tol, "PageRank L1 convergence tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--max-iter", o.max_iter, "PageRank iteration cap")->check(CLI::PositiveNumber);
    };

    auto* rank = app.add_subcommand("rank", "Rank nodes by in-degree or reversed-edge PageRank");
    rank->add_option("--graph", o.graph_path, "Graph file")->required()->check(CLI::ExistingFile);
    rank->add_option("--by", o.by, "Ranking measure")->check(CLI::IsMember({"indegree", "pagerank"}));
    rank->add_option("--group-by", o.group_by, "Rank nodes or tokens")->check(CLI::IsMember({"token", "node"}));
    rank->add_option("--reduce", o.reduce, "Token grouping reduction")->check(CLI::IsMember({"sum", "mean"}));
    rank->add_option("--top", o.top, "Keep the first N rows (0 keeps all)");
    rank->add_option("--csv", o.csv_path, "Output CSV (stdout when omitted)");
    add_pagerank_flags(rank);

    auto* layers = app.add_subcommand("layers", "Per-layer in-degree ratios");
    layers->add_option("--graph", o.graph_path, "Graph file")->required()->check(CLI::ExistingFile);
    layers->add_option("--csv", o.csv_path, "Output CSV (stdout when omitted)");

    auto* subgraph = app.add_subcommand("subgraph", "Nodes and edges shared across datasets");
    subgraph->add_option("--graphs", o.files, "Graph files, one per dataset")->required()->check(CLI::ExistingFile);
    subgraph->add_option("--min-datasets", o.min_datasets, "Minimum number of datasets covering a node")
        ->check(CLI::PositiveNumber);
    subgraph->add_option("--top-k", o.top_k, "Top PageRank nodes added per dataset");
    subgraph->add_option("--dot", o.dot_path, "Output DOT file");
    subgraph->add_option("--out", o.out_path, "Output graph file");
    add_pagerank_flags(subgraph);

    auto* perturb = app.add_subcommand("perturb", "Run masking or muting campaigns against a runner");
    perturb->require_subcommand(1);
    auto* mask = perturb->add_subcommand("mask", "Contributing-token masking vs a size-matched random baseline");
    mask->add_option("--config", o.config_path, "Campaign config (JSON)")->required()->check(CLI::ExistingFile);
    auto* mute = perturb->add_subcommand("mute", "Mute top-ranked neuron nodes band by band");
    mute->add_option("--config", o.config_path, "Campaign config (JSON)")->required()->check(CLI::ExistingFile);
    auto* sweep = mute->add_flag("--sweep-layers", o.sweep_layers, "Mute one token at every layer in turn");
    mute->add_option("--token", o.token, "Token muted by --sweep-layers")->needs(sweep);
    sweep->needs(mute->get_option("--token"));

    auto* report = app.add_subcommand("report", "Markdown summary of campaign outputs");
    report->add_option("--results", o.results_dir, "Campaign output directory")->required();
    report->add_option("--out", o.out_path, "Output Markdown (stdout when omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        print_error(err, error_kind_name(ErrorKind::config), e.what());
        return kConfig;
    }

    Command cmd(o, out, err, hooks);
    try {
        if (*validate) return cmd.validate();
        if (*build) return cmd.build();
        if (*merge) return cmd.merge();
        if (*rank) return cmd.rank();
        if (*layers) return cmd.layers();
        if (*subgraph) return cmd.subgraph();
        if (*mask) return cmd.perturb(false);
        if (*mute) return cmd.perturb(true);
        if (*report) return cmd.report();
    } catch (const Error& e) {
        print_error(err, error_kind_name(e.kind()), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        print_error(err, "internal", e.what());
        return kValidation;
    }
    return kConfig;
}

}  // namespace graphghost::cli
