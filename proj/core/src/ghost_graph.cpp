// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/ghost_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphghost/error.hpp"

namespace graphghost {

void GhostGraph::add_node(const NodeKey& key, const std::string& dataset) {
    nodes_[key].insert(dataset);
}

void GhostGraph::add_node(const NodeKey& key, const std::set<std::string>& datasets) {
    nodes_[key].insert(datasets.begin(), datasets.end());
}

void GhostGraph::check_endpoint(const NodeKey& key) const {
    if (!contains(key)) {
        fail(ErrorKind::validation, "edge endpoint " + display_label(key) + " is not a node");
    }
}

void GhostGraph::add_edge_occurrence(const NodeKey& src, const NodeKey& dst, double attribution,
                                     const std::string& dataset) {
    check_endpoint(src);
    check_endpoint(dst);
    auto& record = edges_[{src, dst}];
    record.weight += 1;
    record.attribution_sum += attribution;
    record.dataset_counts[dataset] += 1;
}

void GhostGraph::accumulate_edge(const NodeKey& src, const NodeKey& dst, const EdgeRecord& record) {
    check_endpoint(src);
    check_endpoint(dst);
    auto& into = edges_[{src, dst}];
    into.weight += record.weight;
    into.attribution_sum += record.attribution_sum;
    for (const auto& [tag, count] : record.dataset_counts) into.dataset_counts[tag] += count;
}

std::int64_t GhostGraph::weight_total() const {
    std::int64_t total = 0;
    for (const auto& [key, record] : edges_) total += record.weight;
    return total;
}

namespace {

int ordering_layer(const NodeKey& key, int logit_layer) {
    return key.kind == NodeKind::logit ? logit_layer : key.layer;
}

}  // namespace

void GhostGraph::check_invariants() const {
    for (const auto& [key, tags] : nodes_) {
        if (key.token.empty()) fail(ErrorKind::validation, "node with empty token text");
        if (key.layer < 0) fail(ErrorKind::validation, "node " + display_label(key) + " has negative layer");
        if (key.kind == NodeKind::logit && key.layer != logit_layer_) {
            fail(ErrorKind::validation, "logit node " + display_label(key) + " is not on the logit layer " +
                                            std::to_string(logit_layer_));
        }
        if (key.kind != NodeKind::logit && key.layer >= logit_layer_) {
            fail(ErrorKind::validation, "node " + display_label(key) + " is not below the logit layer " +
                                            std::to_string(logit_layer_));
        }
    }
    for (const auto& [edge, record] : edges_) {
        const auto& [src, dst] = edge;
        check_endpoint(src);
        check_endpoint(dst);
        if (ordering_layer(src, logit_layer_) >= ordering_layer(dst, logit_layer_)) {
            fail(ErrorKind::validation,
                 "edge " + display_label(src) + " -> " + display_label(dst) + " violates layer ordering");
        }
        if (record.weight < 1) {
            fail(ErrorKind::validation, "edge " + display_label(src) + " -> " + display_label(dst) +
                                            " has non-positive weight");
        }
        std::int64_t counted = 0;
        for (const auto& [tag, count] : record.dataset_counts) counted += count;
        if (counted != record.weight) {
            fail(ErrorKind::validation, "edge " + display_label(src) + " -> " + display_label(dst) +
                                            " weight does not match its dataset counts");
        }
    }
}

bool structurally_equal(const GhostGraph& a, const GhostGraph& b, double attribution_rel_tol) {
    if (a.model_id() != b.model_id() || a.logit_layer() != b.logit_layer()) return false;
    if (a.nodes() != b.nodes()) return false;
    if (a.edges().size() != b.edges().size()) return false;
    auto ia = a.edges().begin();
    auto ib = b.edges().begin();
    for (; ia != a.edges().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        const auto& ra = ia->second;
        const auto& rb = ib->second;
        if (ra.weight != rb.weight || ra.dataset_counts != rb.dataset_counts) return false;
        const double scale = std::max({1.0, std::abs(ra.attribution_sum), std::abs(rb.attribution_sum)});
        if (std::abs(ra.attribution_sum - rb.attribution_sum) > attribution_rel_tol * scale) return false;
    }
    return true;
}

}  // namespace graphghost
