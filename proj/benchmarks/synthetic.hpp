// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <string>
#include <vector>

#include "graphghost/trace.hpp"

namespace graphghost::bench {

// Layer-ordered synthetic traces over a small vocabulary.
inline std::vector<SampleTrace> synthetic_traces(int count, int nodes_per_trace, int logit_layer, unsigned seed) {
    std::mt19937_64 rng(seed);
    const std::vector<std::string> vocab{"the", " 2", " +", "=", " ", ".", "A", "yes", " trips", ","};
    std::vector<SampleTrace> out;
    for (int i = 0; i < count; ++i) {
        SampleTrace t;
        t.sample_id = "b" + std::to_string(i);
        t.dataset = "gsm8k";
        t.model_id = "bench";
        t.logit_layer = logit_layer;
        const int length = 24;
        t.question_token_count = 16;
        for (int p = 0; p < length; ++p) t.tokens.push_back({p, vocab[rng() % vocab.size()]});
        t.target = {t.tokens.back().text, length - 1};
        t.nodes.push_back({0, length - 1, {t.target.text, logit_layer, NodeKind::logit}, 1.0});
        for (int n = 1; n < nodes_per_trace; ++n) {
            const int position = static_cast<int>(rng() % (length - 1));
            const int layer = static_cast<int>(rng() % logit_layer);
            const NodeKind kind = layer == 0 ? NodeKind::embedding : NodeKind::neuron;
            t.nodes.push_back({n, position, {t.tokens[static_cast<std::size_t>(position)].text, layer, kind},
                               0.25 * static_cast<double>(rng() % 16)});
        }
        for (int e = 0; e < 3 * nodes_per_trace; ++e) {
            const auto& a = t.nodes[rng() % t.nodes.size()];
            const auto& b = t.nodes[rng() % t.nodes.size()];
            if (a.key.layer == b.key.layer) continue;
            const auto& src = a.key.layer < b.key.layer ? a : b;
            const auto& dst = a.key.layer < b.key.layer ? b : a;
            t.edges.push_back({src.id, dst.id, 0.125 * static_cast<double>(rng() % 16)});
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace graphghost::bench
