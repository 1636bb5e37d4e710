// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "graphghost/error.hpp"

namespace graphghost {

void validate_filter_config(const TraceFilterConfig& cfg) {
    auto check = [](double ratio, const char* name) {
        if (!(ratio > 0.0 && ratio <= 1.0)) {
            fail(ErrorKind::config, std::string(name) + " must be in (0, 1], got " + std::to_string(ratio));
        }
    };
    check(cfg.node_ratio, "node_ratio");
    check(cfg.edge_ratio, "edge_ratio");
}

std::size_t retained_count(double ratio, std::size_t count) {
    if (count == 0) return 0;
    // The slack absorbs representation error in products such as 0.48 * 25.
    const double exact = ratio * static_cast<double>(count);
    auto kept = static_cast<std::size_t>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
    return std::clamp<std::size_t>(kept, 1, count);
}

SampleTrace apply_filters(const SampleTrace& trace, const TraceFilterConfig& cfg) {
    validate_filter_config(cfg);
    if (trace.applied_filter == cfg) return trace;

    SampleTrace out = trace;
    out.applied_filter = cfg;
    if (cfg.keeps_everything()) return out;

    const auto& nodes = trace.nodes;
    std::vector<bool> keep_node(nodes.size(), false);
    std::size_t forced = 0;
    std::vector<std::size_t> ranked;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].key.kind == NodeKind::logit || nodes[i].position == trace.target.position) {
            keep_node[i] = true;
            ++forced;
        } else {
            ranked.push_back(i);
        }
    }
    std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
        const auto& na = nodes[a];
        const auto& nb = nodes[b];
        const double ma = std::abs(na.activation);
        const double mb = std::abs(nb.activation);
        if (ma != mb) return ma > mb;
        if (auto c = na.key <=> nb.key; c != 0) return c < 0;
        if (na.position != nb.position) return na.position < nb.position;
        return na.id < nb.id;
    });
    const std::size_t budget = retained_count(cfg.node_ratio, nodes.size());
    const std::size_t free_slots = budget > forced ? budget - forced : 0;
    for (std::size_t r = 0; r < std::min(free_slots, ranked.size()); ++r) keep_node[ranked[r]] = true;

    std::unordered_set<std::int64_t> kept_ids;
    out.nodes.clear();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!keep_node[i]) continue;
        out.nodes.push_back(nodes[i]);
        kept_ids.insert(nodes[i].id);
    }

    const auto& edges = trace.edges;
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ea = edges[a];
        const auto& eb = edges[b];
        const double ma = std::abs(ea.attribution);
        const double mb = std::abs(eb.attribution);
        if (ma != mb) return ma > mb;
        if (ea.src != eb.src) return ea.src < eb.src;
        if (ea.dst != eb.dst) return ea.dst < eb.dst;
        return a < b;
    });
    std::vector<bool> keep_edge(edges.size(), false);
    const std::size_t edge_budget = retained_count(cfg.edge_ratio, edges.size());
    for (std::size_t r = 0; r < edge_budget; ++r) keep_edge[order[r]] = true;

    out.edges.clear();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (keep_edge[i] && kept_ids.count(edges[i].src) != 0 && kept_ids.count(edges[i].dst) != 0) {
            out.edges.push_back(edges[i]);
        }
    }
    return out;
}

}  // namespace graphghost
