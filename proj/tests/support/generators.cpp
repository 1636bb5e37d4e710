// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "generators.hpp"

#include <algorithm>
#include <set>

namespace graphghost::testing {

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string random_token(Rng& rng) {
    static const std::vector<std::string> pieces = {"a", "b", " ", "7", "é", "分", "\"", "\\", "\n", ",", "🙂", "Z"};
    std::string out;
    const int n = uniform_int(rng, 1, 3);
    for (int i = 0; i < n; ++i) out += pieces[static_cast<std::size_t>(uniform_int(rng, 0, int(pieces.size()) - 1))];
    return out;
}

SampleTrace random_trace(Rng& rng, const TraceGenParams& p, const std::string& sample_id) {
    SampleTrace t;
    t.sample_id = sample_id;
    t.dataset = p.datasets[static_cast<std::size_t>(uniform_int(rng, 0, int(p.datasets.size()) - 1))];
    t.model_id = p.model_id;
    t.logit_layer = p.logit_layer;
    const int n_tokens = uniform_int(rng, 2, p.max_tokens);
    for (int i = 0; i < n_tokens; ++i) {
        t.tokens.push_back({i, p.vocab[static_cast<std::size_t>(uniform_int(rng, 0, int(p.vocab.size()) - 1))]});
    }
    t.question_token_count = uniform_int(rng, 1, n_tokens - 1);
    int target = uniform_int(rng, t.question_token_count, n_tokens - 1);
    if (uniform_real(rng, 0.0, 1.0) < p.question_target_rate) target = uniform_int(rng, 0, t.question_token_count - 1);
    t.target = {t.tokens[static_cast<std::size_t>(target)].text, target};

    const int n_nodes = uniform_int(rng, 1, p.max_nodes);
    std::int64_t next_id = uniform_int(rng, -5, 5);
    for (int i = 0; i < n_nodes; ++i) {
        PositionedNode node;
        node.id = next_id;
        next_id += uniform_int(rng, 1, 3);
        const bool logit = i == 0 || uniform_real(rng, 0.0, 1.0) < 0.08;
        node.position = logit ? target : uniform_int(rng, 0, n_tokens - 1);
        node.key.token = t.tokens[static_cast<std::size_t>(node.position)].text;
        if (logit) {
            node.key.layer = p.logit_layer;
            node.key.kind = NodeKind::logit;
        } else {
            node.key.layer = uniform_int(rng, 0, p.logit_layer - 1);
            node.key.kind = node.key.layer == 0 ? NodeKind::embedding : NodeKind::neuron;
        }
        // Quarter-steps keep values exact and make activation ties likely.
        node.activation = uniform_int(rng, -16, 16) * 0.25;
        t.nodes.push_back(std::move(node));
    }
    std::shuffle(t.nodes.begin(), t.nodes.end(), rng);

    auto order = [&](const PositionedNode& n) { return n.key.kind == NodeKind::logit ? p.logit_layer : n.key.layer; };
    const int n_edges = uniform_int(rng, 0, 2 * n_nodes);
    for (int i = 0; i < n_edges && n_nodes > 1; ++i) {
        const auto& a = t.nodes[static_cast<std::size_t>(uniform_int(rng, 0, n_nodes - 1))];
        const auto& b = t.nodes[static_cast<std::size_t>(uniform_int(rng, 0, n_nodes - 1))];
        if (order(a) == order(b)) continue;
        const auto& src = order(a) < order(b) ? a : b;
        const auto& dst = order(a) < order(b) ? b : a;
        t.edges.push_back({src.id, dst.id, uniform_int(rng, -12, 12) * 0.125});
    }
    return t;
}

std::vector<SampleTrace> random_trace_set(Rng& rng, const TraceGenParams& p) {
    std::vector<SampleTrace> out;
    const int n = uniform_int(rng, 0, p.max_traces);
    for (int i = 0; i < n; ++i) out.push_back(random_trace(rng, p, "s" + std::to_string(uniform_int(rng, 0, 6))));
    return out;
}

DigraphView random_digraph(Rng& rng, int max_nodes, double density) {
    const int n = uniform_int(rng, 1, max_nodes);
    std::vector<NodeKey> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back({"t" + std::to_string(i), i, NodeKind::neuron});
    std::vector<DigraphView::Arc> arcs;
    for (int s = 0; s < n; ++s) {
        for (int d = 0; d < n; ++d) {
            if (s == d || uniform_real(rng, 0.0, 1.0) >= density) continue;
            arcs.push_back({static_cast<std::size_t>(s), static_cast<std::size_t>(d), uniform_int(rng, 1, 9)});
        }
    }
    std::shuffle(arcs.begin(), arcs.end(), rng);
    return DigraphView(std::move(nodes), std::move(arcs));
}

GhostGraph random_ghostgraph(Rng& rng, int max_nodes, int logit_layer) {
    GhostGraph g("gen-model", logit_layer);
    const int n = uniform_int(rng, 1, max_nodes);
    std::vector<NodeKey> keys;
    std::set<NodeKey> seen;
    for (int i = 0; i < n; ++i) {
        NodeKey k;
        k.token = random_token(rng);
        if (uniform_real(rng, 0.0, 1.0) < 0.15) {
            k.layer = logit_layer;
            k.kind = NodeKind::logit;
        } else {
            k.layer = uniform_int(rng, 0, logit_layer - 1);
            k.kind = k.layer == 0 ? NodeKind::embedding : NodeKind::neuron;
        }
        if (!seen.insert(k).second) continue;
        keys.push_back(k);
        g.add_node(k, uniform_int(rng, 0, 1) ? "gsm8k" : "math");
    }
    const int attempts = uniform_int(rng, 0, 3 * static_cast<int>(keys.size()));
    for (int i = 0; i < attempts; ++i) {
        const auto& a = keys[static_cast<std::size_t>(uniform_int(rng, 0, int(keys.size()) - 1))];
        const auto& b = keys[static_cast<std::size_t>(uniform_int(rng, 0, int(keys.size()) - 1))];
        if (a.layer == b.layer) continue;
        const auto& src = a.layer < b.layer ? a : b;
        const auto& dst = a.layer < b.layer ? b : a;
        const int reps = uniform_int(rng, 1, 4);
        for (int r = 0; r < reps; ++r) g.add_edge_occurrence(src, dst, 0.5, uniform_int(rng, 0, 1) ? "gsm8k" : "math");
    }
    return g;
}

}  // namespace graphghost::testing
