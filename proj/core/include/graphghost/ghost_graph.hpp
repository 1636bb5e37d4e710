// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "graphghost/node_key.hpp"

namespace graphghost {

struct EdgeRecord {
    std::int64_t weight = 0;            // occurrence count, == sum of dataset_counts
    double attribution_sum = 0.0;       // diagnostics only; never drives analytics
    std::map<std::string, std::int64_t> dataset_counts;

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

using EdgeKey = std::pair<NodeKey, NodeKey>;

/// Multi-sample aggregate of attribution graphs: nodes are (token, layer)
/// identities, edges carry integer occurrence weights.
///
/// Single writer, many readers: const member functions may run concurrently,
/// mutation needs exclusive access. Node and edge maps iterate in NodeKey
/// order, which makes every traversal deterministic.
class GhostGraph {
public:
    GhostGraph() = default;
    GhostGraph(std::string model_id, int logit_layer)
        : model_id_(std::move(model_id)), logit_layer_(logit_layer) {}

    const std::string& model_id() const { return model_id_; }
    int logit_layer() const { return logit_layer_; }
    void set_model(std::string model_id, int logit_layer) {
        model_id_ = std::move(model_id);
        logit_layer_ = logit_layer;
    }

    /// Node -> set of dataset tags it was observed in.
    const std::map<NodeKey, std::set<std::string>>& nodes() const { return nodes_; }
    const std::map<EdgeKey, EdgeRecord>& edges() const { return edges_; }

    bool empty() const { return nodes_.empty() && edges_.empty(); }
    bool contains(const NodeKey& key) const { return nodes_.count(key) != 0; }

    void add_node(const NodeKey& key, const std::string& dataset);
    void add_node(const NodeKey& key, const std::set<std::string>& datasets);

    /// Records one more occurrence of src -> dst. Endpoints must already be nodes.
    void add_edge_occurrence(const NodeKey& src, const NodeKey& dst, double attribution,
                             const std::string& dataset);

    /// Adds a whole record (weights, sums and per-dataset counts) onto src -> dst.
    void accumulate_edge(const NodeKey& src, const NodeKey& dst, const EdgeRecord& record);

    std::int64_t weight_total() const;

    /// Throws Error(validation) when an invariant is broken: dangling endpoint,
    /// layer ordering, non-positive weight, or weight != sum of dataset counts.
    void check_invariants() const;

    friend bool operator==(const GhostGraph&, const GhostGraph&) = default;

private:
    void check_endpoint(const NodeKey& key) const;

    std::string model_id_;
    int logit_layer_ = 0;
    std::map<NodeKey, std::set<std::string>> nodes_;
    std::map<EdgeKey, EdgeRecord> edges_;
};

/// Equality on everything except attribution sums, which are compared with a
/// relative tolerance because floating-point addition is order-sensitive.
bool structurally_equal(const GhostGraph& a, const GhostGraph& b, double attribution_rel_tol = 1e-9);

}  // namespace graphghost
