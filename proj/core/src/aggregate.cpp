// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/aggregate.hpp"

#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "graphghost/error.hpp"
#include "graphghost/filter.hpp"

namespace graphghost {

namespace {

bool is_unset(const GhostGraph& g) {
    return g.empty() && g.model_id().empty();
}

void require_same_model(const std::string& model_a, int layer_a, const std::string& model_b, int layer_b) {
    if (model_a != model_b) {
        fail(ErrorKind::validation, "mixed model_id: '" + model_a + "' vs '" + model_b + "'");
    }
    if (layer_a != layer_b) {
        fail(ErrorKind::validation, "mixed logit_layer for model '" + model_a + "': " + std::to_string(layer_a) +
                                        " vs " + std::to_string(layer_b));
    }
}

}  // namespace

BuildReport totals_of(const GhostGraph& graph, BuildReport counters) {
    counters.nodes_total = static_cast<std::int64_t>(graph.nodes().size());
    counters.edges_total = static_cast<std::int64_t>(graph.edges().size());
    counters.weight_total = graph.weight_total();
    return counters;
}

BuildResult build_ghostgraph(std::span<const SampleTrace> traces, const BuildOptions& options) {
    BuildResult result;
    if (traces.empty()) return result;

    const auto& first = traces.front();
    for (const auto& t : traces) require_same_model(first.model_id, first.logit_layer, t.model_id, t.logit_layer);

    GhostGraph& g = result.graph;
    g.set_model(first.model_id, first.logit_layer);
    std::set<std::string> samples;

    for (const auto& raw : traces) {
        samples.insert(raw.sample_id);
        if (raw.targets_question()) {
            ++result.report.traces_skipped_question_target;
            continue;
        }
        const SampleTrace trace = apply_filters(raw, options.filter);
        ++result.report.traces_merged;

        std::unordered_map<std::int64_t, const NodeKey*> key_of;
        for (const auto& node : trace.nodes) {
            g.add_node(canonical_node_key(node), trace.dataset);
            key_of[node.id] = &node.key;
        }

        if (!options.dedupe_per_trace) {
            for (const auto& e : trace.edges) {
                g.add_edge_occurrence(*key_of.at(e.src), *key_of.at(e.dst), e.attribution, trace.dataset);
            }
            continue;
        }

        std::map<EdgeKey, double> per_trace;
        for (const auto& e : trace.edges) per_trace[{*key_of.at(e.src), *key_of.at(e.dst)}] += e.attribution;
        for (const auto& [edge, attribution] : per_trace) {
            g.add_edge_occurrence(edge.first, edge.second, attribution, trace.dataset);
        }
    }

    result.report.samples_seen = static_cast<std::int64_t>(samples.size());
    result.report = totals_of(g, result.report);
    return result;
}

GhostGraph merge_ghostgraphs(const GhostGraph& a, const GhostGraph& b) {
    if (is_unset(b)) return a;
    if (is_unset(a)) return b;
    require_same_model(a.model_id(), a.logit_layer(), b.model_id(), b.logit_layer());

    GhostGraph out = a;
    for (const auto& [key, tags] : b.nodes()) out.add_node(key, tags);
    for (const auto& [edge, record] : b.edges()) out.accumulate_edge(edge.first, edge.second, record);
    return out;
}

BuildReport merge_reports(const BuildReport& a, const BuildReport& b, const GhostGraph& merged) {
    BuildReport out;
    out.samples_seen = a.samples_seen + b.samples_seen;
    out.traces_merged = a.traces_merged + b.traces_merged;
    out.traces_skipped_question_target = a.traces_skipped_question_target + b.traces_skipped_question_target;
    return totals_of(merged, out);
}

}  // namespace graphghost
