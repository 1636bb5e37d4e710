// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "graphghost/aggregate.hpp"
#include "graphghost/ghost_graph.hpp"

namespace graphghost {

inline constexpr std::string_view kGhostFormatName = "graphghost.ghostgraph";
inline constexpr std::string_view kGhostFormatVersion = "1";

/// A GhostGraph file: the graph plus the report of the build that produced it.
struct GhostDocument {
    GhostGraph graph;
    BuildReport report;

    friend bool operator==(const GhostDocument&, const GhostDocument&) = default;
};

/// Canonical, byte-deterministic encoding. Nodes are listed in NodeKey order
/// and referenced by index from the edges and provenance sections.
std::string export_ghostgraph(const GhostDocument& doc);
void export_ghostgraph(const GhostDocument& doc, std::ostream& out);
void save_ghostgraph(const GhostDocument& doc, const std::string& path);

/// Throws Error(unsupported_version) on a version mismatch, Error(format) on
/// truncated or malformed documents, Error(validation) on invariant breaks.
GhostDocument import_ghostgraph(std::string_view text);
GhostDocument import_ghostgraph(std::istream& in);
GhostDocument load_ghostgraph(const std::string& path);

}  // namespace graphghost
