// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphghost/ghost_graph.hpp"
#include "graphghost/node_key.hpp"

namespace graphghost {

struct RankedNode {
    NodeKey key;
    double score = 0.0;
    std::size_t rank = 0;  // 1-based

    friend bool operator==(const RankedNode&, const RankedNode&) = default;
};

/// A ranking entry aggregated over every layer a token appears on.
struct RankedToken {
    std::string token;
    double score = 0.0;
    std::size_t rank = 0;

    friend bool operator==(const RankedToken&, const RankedToken&) = default;
};

enum class Reduce { sum, mean };

/// Weighted in-degree of every node, descending; ties by NodeKey order.
std::vector<RankedNode> indegree_ranking(const GhostGraph& g);

/// Groups node scores by token text over all non-logit layers.
std::vector<RankedToken> group_by_token(const std::vector<RankedNode>& nodes, Reduce reduce);

/// indegree_ranking grouped by token; logit nodes excluded.
std::vector<RankedToken> token_indegree_ranking(const GhostGraph& g, Reduce reduce = Reduce::sum);

struct LayerShare {
    std::int64_t in_degree_sum = 0;
    double ratio = 0.0;

    friend bool operator==(const LayerShare&, const LayerShare&) = default;
};

/// Share of total weighted in-degree landing on each non-logit layer. The
/// logit layer's in-degree is reported on its own and excluded from the
/// normalization.
struct LayerProfile {
    std::map<int, LayerShare> per_layer;
    int logit_layer = 0;
    std::int64_t logit_in_degree = 0;
    bool empty = true;  // no in-degree on any non-logit layer; all ratios are 0
};

LayerProfile layer_indegree_profile(const GhostGraph& g);

/// Read-only weighted digraph over a fixed node list. Arcs index into nodes().
class DigraphView {
public:
    struct Arc {
        std::size_t src = 0;
        std::size_t dst = 0;
        std::int64_t weight = 0;

        friend bool operator==(const Arc&, const Arc&) = default;
    };

    DigraphView() = default;
    DigraphView(std::vector<NodeKey> nodes, std::vector<Arc> arcs);

    static DigraphView of(const GhostGraph& g);

    const std::vector<NodeKey>& nodes() const { return nodes_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    std::optional<std::size_t> index_of(const NodeKey& key) const;
    std::int64_t weight_total() const;

    /// Flips the direction of every arc with a logit endpoint. On a view of a
    /// GhostGraph this turns neuron -> logit arcs into logit -> neuron; doing
    /// it twice restores the original orientation.
    DigraphView with_logit_arcs_flipped() const;

    friend bool operator==(const DigraphView&, const DigraphView&) = default;

private:
    std::vector<NodeKey> nodes_;
    std::vector<Arc> arcs_;
};

/// View of g in which edges into logit nodes point back at their sources.
DigraphView reverse_logit_edges(const GhostGraph& g);

struct PageRankOptions {
    double damping = 0.85;
    double tol = 1e-9;
    int max_iter = 200;
};

struct PageRankResult {
    std::vector<RankedNode> ranking;
    bool converged = true;
    int iterations = 0;
    double residual = 0.0;  // L1 change of the last iteration
};

/// Weighted PageRank by power iteration: transition probability proportional
/// to arc weight among a node's out-arcs, dangling mass and teleport spread
/// uniformly. Stops once the L1 change drops below tol. Throws Error(config)
/// on damping outside (0,1), tol <= 0 or max_iter < 1.
PageRankResult pagerank(const DigraphView& view, const PageRankOptions& options = {});

/// Raw score vector in view.nodes() order; the ranking above is built from it.
std::vector<double> pagerank_scores(const DigraphView& view, const PageRankOptions& options,
                                    bool* converged = nullptr, int* iterations = nullptr,
                                    double* residual = nullptr);

/// Cross-dataset subgraph: merges the graphs, then keeps every node found in
/// at least `min_datasets` inputs plus each input's `top_k` PageRank nodes
/// (logit edges reversed), together with the induced edges. Node provenance
/// of the result is the set of input names containing the node. top_k unset
/// means unbounded.
GhostGraph shared_subgraph(const std::map<std::string, GhostGraph>& graphs, std::size_t min_datasets,
                           std::optional<std::size_t> top_k, const PageRankOptions& options = {});

}  // namespace graphghost
