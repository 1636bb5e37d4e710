// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/ghost_io.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <vector>

#include "graphghost/error.hpp"
#include "json_text.hpp"

namespace graphghost {

using nlohmann::json;

namespace {

void append_report_field(std::string& out, const char* key, std::int64_t value, bool last = false) {
    detail::append_key(out, key);
    detail::append_json_int(out, value);
    if (!last) out += ',';
}

[[noreturn]] void format_error(const std::string& message) {
    fail(ErrorKind::format, "graph document: " + message);
}

const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) format_error(std::string("missing field '") + key + "'");
    return *it;
}

std::int64_t require_int(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_number_integer()) format_error(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::string require_string(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_string()) format_error(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

const json& require_array(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_array()) format_error(std::string("field '") + key + "' must be an array");
    return v;
}

}  // namespace

std::string export_ghostgraph(const GhostDocument& doc) {
    using namespace detail;
    const GhostGraph& g = doc.graph;
    std::map<NodeKey, std::size_t> index;
    for (const auto& [key, tags] : g.nodes()) index.emplace(key, index.size());

    std::string out = "{";
    append_key(out, "format");
    append_json_string(out, kGhostFormatName);
    out += ',';
    append_key(out, "version");
    append_json_string(out, kGhostFormatVersion);
    out += ',';
    append_key(out, "model_id");
    append_json_string(out, g.model_id());
    out += ',';
    append_key(out, "logit_layer");
    append_json_int(out, g.logit_layer());
    out += ",\n";

    append_key(out, "nodes");
    out += '[';
    bool first = true;
    for (const auto& [key, tags] : g.nodes()) {
        out += first ? "\n" : ",\n";
        first = false;
        out += '{';
        append_key(out, "token");
        append_json_string(out, key.token);
        out += ',';
        append_key(out, "layer");
        append_json_int(out, key.layer);
        out += ',';
        append_key(out, "kind");
        append_json_string(out, kind_name(key.kind));
        out += '}';
    }
    out += "],\n";

    append_key(out, "edges");
    out += '[';
    first = true;
    for (const auto& [edge, record] : g.edges()) {
        out += first ? "\n" : ",\n";
        first = false;
        out += '{';
        append_key(out, "src");
        append_json_int(out, static_cast<std::int64_t>(index.at(edge.first)));
        out += ',';
        append_key(out, "dst");
        append_json_int(out, static_cast<std::int64_t>(index.at(edge.second)));
        out += ',';
        append_key(out, "weight");
        append_json_int(out, record.weight);
        out += ',';
        append_key(out, "attribution_sum");
        append_json_double(out, record.attribution_sum);
        out += ',';
        append_key(out, "dataset_counts");
        out += '{';
        bool first_tag = true;
        for (const auto& [tag, count] : record.dataset_counts) {
            if (!first_tag) out += ',';
            first_tag = false;
            append_json_string(out, tag);
            out += ':';
            append_json_int(out, count);
        }
        out += "}}";
    }
    out += "],\n";

    append_key(out, "provenance");
    out += '[';
    first = true;
    for (const auto& [key, tags] : g.nodes()) {
        out += first ? "\n" : ",\n";
        first = false;
        out += '{';
        append_key(out, "node");
        append_json_int(out, static_cast<std::int64_t>(index.at(key)));
        out += ',';
        append_key(out, "datasets");
        out += '[';
        bool first_tag = true;
        for (const auto& tag : tags) {
            if (!first_tag) out += ',';
            first_tag = false;
            append_json_string(out, tag);
        }
        out += "]}";
    }
    out += "],\n";

    append_key(out, "report");
    out += '{';
    const BuildReport& r = doc.report;
    append_report_field(out, "samples_seen", r.samples_seen);
    append_report_field(out, "traces_merged", r.traces_merged);
    append_report_field(out, "traces_skipped_question_target", r.traces_skipped_question_target);
    append_report_field(out, "nodes_total", r.nodes_total);
    append_report_field(out, "edges_total", r.edges_total);
    append_report_field(out, "weight_total", r.weight_total, true);
    out += "}}\n";
    return out;
}

void export_ghostgraph(const GhostDocument& doc, std::ostream& out) {
    out << export_ghostgraph(doc);
}

void save_ghostgraph(const GhostDocument& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::config, "cannot write graph file '" + path + "'");
    export_ghostgraph(doc, out);
    if (!out) fail(ErrorKind::config, "failed writing graph file '" + path + "'");
}

GhostDocument import_ghostgraph(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        format_error(std::string("truncated or malformed: ") + e.what());
    }
    if (!root.is_object()) format_error("top level must be an object");
    if (require_string(root, "format") != kGhostFormatName) format_error("not a GhostGraph document");
    const std::string version = require_string(root, "version");
    if (version != kGhostFormatVersion) {
        fail(ErrorKind::unsupported_version, "graph document: unsupported version \"" + version + "\"");
    }

    GhostDocument doc;
    GhostGraph& g = doc.graph;
    g.set_model(require_string(root, "model_id"), static_cast<int>(require_int(root, "logit_layer")));

    std::vector<NodeKey> keys;
    for (const auto& item : require_array(root, "nodes")) {
        if (!item.is_object()) format_error("node entries must be objects");
        NodeKey key;
        key.token = require_string(item, "token");
        key.layer = static_cast<int>(require_int(item, "layer"));
        auto kind = parse_kind(require_string(item, "kind"));
        if (!kind) format_error("unknown node kind");
        key.kind = *kind;
        if (!keys.empty() && !(keys.back() < key)) format_error("nodes are not in canonical order");
        keys.push_back(key);
    }

    auto node_at = [&](std::int64_t i) -> const NodeKey& {
        if (i < 0 || static_cast<std::size_t>(i) >= keys.size()) format_error("node index out of range");
        return keys[static_cast<std::size_t>(i)];
    };

    std::map<NodeKey, std::set<std::string>> provenance;
    for (const auto& item : require_array(root, "provenance")) {
        if (!item.is_object()) format_error("provenance entries must be objects");
        const NodeKey& key = node_at(require_int(item, "node"));
        for (const auto& tag : require_array(item, "datasets")) {
            if (!tag.is_string()) format_error("dataset tags must be strings");
            provenance[key].insert(tag.get<std::string>());
        }
    }
    for (const auto& key : keys) g.add_node(key, provenance[key]);

    for (const auto& item : require_array(root, "edges")) {
        if (!item.is_object()) format_error("edge entries must be objects");
        EdgeRecord record;
        const NodeKey& src = node_at(require_int(item, "src"));
        const NodeKey& dst = node_at(require_int(item, "dst"));
        record.weight = require_int(item, "weight");
        const json& sum = require(item, "attribution_sum");
        if (!sum.is_number()) format_error("attribution_sum must be a number");
        record.attribution_sum = sum.get<double>();
        const json& counts = require(item, "dataset_counts");
        if (!counts.is_object()) format_error("dataset_counts must be an object");
        for (const auto& [tag, count] : counts.items()) {
            if (!count.is_number_integer()) format_error("dataset counts must be integers");
            record.dataset_counts[tag] = count.get<std::int64_t>();
        }
        if (g.edges().count({src, dst}) != 0) format_error("duplicate edge");
        g.accumulate_edge(src, dst, record);
    }

    const json& report = require(root, "report");
    if (!report.is_object()) format_error("report must be an object");
    doc.report.samples_seen = require_int(report, "samples_seen");
    doc.report.traces_merged = require_int(report, "traces_merged");
    doc.report.traces_skipped_question_target = require_int(report, "traces_skipped_question_target");
    doc.report.nodes_total = require_int(report, "nodes_total");
    doc.report.edges_total = require_int(report, "edges_total");
    doc.report.weight_total = require_int(report, "weight_total");

    g.check_invariants();
    if (doc.report.weight_total != g.weight_total()) format_error("report weight_total disagrees with edges");
    return doc;
}

GhostDocument import_ghostgraph(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return import_ghostgraph(text);
}

GhostDocument load_ghostgraph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::config, "cannot open graph file '" + path + "'");
    try {
        return import_ghostgraph(in);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

}  // namespace graphghost
