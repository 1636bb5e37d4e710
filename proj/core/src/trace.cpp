// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/trace.hpp"

#include <algorithm>

namespace graphghost {

const PositionedNode* SampleTrace::find_node(std::int64_t id) const {
    auto it = std::find_if(nodes.begin(), nodes.end(),
                           [id](const PositionedNode& n) { return n.id == id; });
    return it == nodes.end() ? nullptr : &*it;
}

NodeKey canonical_node_key(const PositionedNode& node) {
    return node.key;
}

}  // namespace graphghost
