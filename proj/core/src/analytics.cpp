// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/analytics.hpp"

#include <algorithm>
#include <map>

namespace graphghost {

namespace {

void sort_and_rank(std::vector<RankedNode>& entries) {
    std::sort(entries.begin(), entries.end(), [](const RankedNode& a, const RankedNode& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.key < b.key;
    });
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = i + 1;
}

}  // namespace

std::vector<RankedNode> indegree_ranking(const GhostGraph& g) {
    std::map<NodeKey, std::int64_t> in_degree;
    for (const auto& [key, tags] : g.nodes()) in_degree[key] = 0;
    for (const auto& [edge, record] : g.edges()) in_degree[edge.second] += record.weight;

    std::vector<RankedNode> out;
    out.reserve(in_degree.size());
    for (const auto& [key, degree] : in_degree) out.push_back({key, static_cast<double>(degree), 0});
    sort_and_rank(out);
    return out;
}

std::vector<RankedToken> group_by_token(const std::vector<RankedNode>& nodes, Reduce reduce) {
    struct Acc {
        double sum = 0.0;
        std::size_t count = 0;
    };
    std::map<std::string, Acc> by_token;
    // Summing in NodeKey order keeps the floating-point result independent
    // of the incoming rank order.
    std::vector<const RankedNode*> ordered;
    for (const auto& n : nodes) {
        if (n.key.kind != NodeKind::logit) ordered.push_back(&n);
    }
    std::sort(ordered.begin(), ordered.end(), [](const RankedNode* a, const RankedNode* b) { return a->key < b->key; });
    for (const RankedNode* n : ordered) {
        auto& acc = by_token[n->key.token];
        acc.sum += n->score;
        acc.count += 1;
    }

    std::vector<RankedToken> out;
    out.reserve(by_token.size());
    for (const auto& [token, acc] : by_token) {
        const double score = reduce == Reduce::sum ? acc.sum : acc.sum / static_cast<double>(acc.count);
        out.push_back({token, score, 0});
    }
    std::sort(out.begin(), out.end(), [](const RankedToken& a, const RankedToken& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.token < b.token;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

std::vector<RankedToken> token_indegree_ranking(const GhostGraph& g, Reduce reduce) {
    return group_by_token(indegree_ranking(g), reduce);
}

LayerProfile layer_indegree_profile(const GhostGraph& g) {
    LayerProfile profile;
    profile.logit_layer = g.logit_layer();
    for (const auto& [key, tags] : g.nodes()) {
        if (key.kind != NodeKind::logit) profile.per_layer.try_emplace(key.layer);
    }
    std::int64_t total = 0;
    for (const auto& [edge, record] : g.edges()) {
        const NodeKey& dst = edge.second;
        if (dst.kind == NodeKind::logit) {
            profile.logit_in_degree += record.weight;
        } else {
            profile.per_layer[dst.layer].in_degree_sum += record.weight;
            total += record.weight;
        }
    }
    profile.empty = total == 0;
    if (!profile.empty) {
        for (auto& [layer, share] : profile.per_layer) {
            share.ratio = static_cast<double>(share.in_degree_sum) / static_cast<double>(total);
        }
    }
    return profile;
}

DigraphView::DigraphView(std::vector<NodeKey> nodes, std::vector<Arc> arcs)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {}

DigraphView DigraphView::of(const GhostGraph& g) {
    std::vector<NodeKey> nodes;
    nodes.reserve(g.nodes().size());
    for (const auto& [key, tags] : g.nodes()) nodes.push_back(key);
    DigraphView view(std::move(nodes), {});
    view.arcs_.reserve(g.edges().size());
    for (const auto& [edge, record] : g.edges()) {
        view.arcs_.push_back({*view.index_of(edge.first), *view.index_of(edge.second), record.weight});
    }
    return view;
}

std::optional<std::size_t> DigraphView::index_of(const NodeKey& key) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), key);
    if (it != nodes_.end() && *it == key) return static_cast<std::size_t>(it - nodes_.begin());
    // Views built by hand need not be sorted.
    it = std::find(nodes_.begin(), nodes_.end(), key);
    if (it == nodes_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::int64_t DigraphView::weight_total() const {
    std::int64_t total = 0;
    for (const auto& arc : arcs_) total += arc.weight;
    return total;
}

DigraphView DigraphView::with_logit_arcs_flipped() const {
    DigraphView out = *this;
    for (auto& arc : out.arcs_) {
        if (nodes_[arc.src].kind == NodeKind::logit || nodes_[arc.dst].kind == NodeKind::logit) {
            std::swap(arc.src, arc.dst);
        }
    }
    return out;
}

DigraphView reverse_logit_edges(const GhostGraph& g) {
    return DigraphView::of(g).with_logit_arcs_flipped();
}

}  // namespace graphghost
