// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "graphghost/trace.hpp"

namespace graphghost {

/// Throws Error(config) unless both ratios lie in (0, 1].
void validate_filter_config(const TraceFilterConfig& cfg);

/// Number of elements a ratio keeps out of `count`: ceil(ratio * count),
/// at least one when count > 0.
std::size_t retained_count(double ratio, std::size_t count);

/// Prunes a trace to its most influential nodes and edges.
///
/// Keeps ceil(node_ratio * |nodes|) nodes by |activation| (ties: NodeKey
/// order, then position, then id) and ceil(edge_ratio * |edges|) edges by
/// |attribution| (ties: (src, dst) id order), then drops edges that lost an
/// endpoint. Logit nodes and nodes at the target position are always kept
/// and count against the node budget. Element order of the input is
/// preserved. Applying the same config twice is a no-op.
SampleTrace apply_filters(const SampleTrace& trace, const TraceFilterConfig& cfg);

}  // namespace graphghost
