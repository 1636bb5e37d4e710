// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace graphghost {

/// Role of a node in an attribution graph. The declaration order is the
/// tie-break order used by NodeKey ordering.
enum class NodeKind : std::uint8_t { embedding = 0, neuron = 1, logit = 2 };

std::string_view kind_name(NodeKind kind);
std::optional<NodeKind> parse_kind(std::string_view text);

/// Identity of an aggregated neuron node: a (token, layer) pair plus its kind.
/// Token text is compared byte-for-byte, never Unicode-normalized.
///
/// Ordering is total: ascending layer, then kind, then unsigned byte order of
/// the token text.
struct NodeKey {
    std::string token;
    int layer = 0;
    NodeKind kind = NodeKind::neuron;

    friend bool operator==(const NodeKey&, const NodeKey&) = default;
    friend std::strong_ordering operator<=>(const NodeKey& a, const NodeKey& b);
};

/// "token_layer", the notation used for node labels in reports and DOT output.
std::string display_label(const NodeKey& key);

}  // namespace graphghost
