// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/node_key.hpp"

namespace graphghost {

std::string_view kind_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::embedding: return "embedding";
        case NodeKind::neuron: return "neuron";
        case NodeKind::logit: return "logit";
    }
    return "neuron";
}

std::optional<NodeKind> parse_kind(std::string_view text) {
    if (text == "embedding") return NodeKind::embedding;
    if (text == "neuron") return NodeKind::neuron;
    if (text == "logit") return NodeKind::logit;
    return std::nullopt;
}

std::strong_ordering operator<=>(const NodeKey& a, const NodeKey& b) {
    if (auto c = a.layer <=> b.layer; c != 0) return c;
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    // char_traits<char>::compare orders as unsigned char, i.e. raw byte order.
    const int c = a.token.compare(b.token);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string display_label(const NodeKey& key) {
    return key.token + "_" + std::to_string(key.layer);
}

}  // namespace graphghost
