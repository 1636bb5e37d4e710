// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <unordered_map>

#include "json_text.hpp"

namespace graphghost {

using nlohmann::json;

std::string format_diagnostic(const Diagnostic& d) {
    std::string out;
    if (d.line != 0) out += "line " + std::to_string(d.line) + ": ";
    out += d.severity == Severity::error ? "error: " : "warning: ";
    out += d.message;
    return out;
}

namespace {

// Pulls typed fields out of a parsed record, recording a diagnostic for each
// missing or mistyped field instead of throwing.
class FieldReader {
public:
    FieldReader(std::vector<Diagnostic>& diagnostics, std::size_t line, Strictness strictness)
        : diagnostics_(diagnostics), line_(line), strictness_(strictness) {}

    void error(const std::string& message, ErrorKind kind = ErrorKind::validation) {
        diagnostics_.push_back({line_, Severity::error, kind, message});
    }

    const json* member(const json& obj, const std::string& path, const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            error("field '" + join(path, key) + "': missing");
            return nullptr;
        }
        return &*it;
    }

    std::optional<std::string> string_field(const json& obj, const std::string& path, const char* key) {
        const json* v = member(obj, path, key);
        if (v == nullptr) return std::nullopt;
        if (!v->is_string()) {
            error("field '" + join(path, key) + "': expected string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }

    std::optional<std::int64_t> int_field(const json& obj, const std::string& path, const char* key,
                                          std::int64_t min_value = std::numeric_limits<std::int64_t>::min()) {
        const json* v = member(obj, path, key);
        if (v == nullptr) return std::nullopt;
        if (!v->is_number_integer()) {
            error("field '" + join(path, key) + "': expected integer");
            return std::nullopt;
        }
        std::int64_t value = v->is_number_unsigned()
                                 ? static_cast<std::int64_t>(std::min<std::uint64_t>(
                                       v->get<std::uint64_t>(),
                                       static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())))
                                 : v->get<std::int64_t>();
        if (value < min_value) {
            error("field '" + join(path, key) + "': must be >= " + std::to_string(min_value));
            return std::nullopt;
        }
        return value;
    }

    std::optional<int> small_int_field(const json& obj, const std::string& path, const char* key,
                                       int min_value = 0) {
        auto v = int_field(obj, path, key, min_value);
        if (!v) return std::nullopt;
        if (*v > std::numeric_limits<int>::max()) {
            error("field '" + join(path, key) + "': out of range");
            return std::nullopt;
        }
        return static_cast<int>(*v);
    }

    std::optional<double> number_field(const json& obj, const std::string& path, const char* key) {
        const json* v = member(obj, path, key);
        if (v == nullptr) return std::nullopt;
        if (!v->is_number()) {
            error("field '" + join(path, key) + "': expected number");
            return std::nullopt;
        }
        double value = v->get<double>();
        if (!std::isfinite(value)) {
            error("field '" + join(path, key) + "': must be finite");
            return std::nullopt;
        }
        return value;
    }

    const json* array_field(const json& obj, const std::string& path, const char* key) {
        const json* v = member(obj, path, key);
        if (v == nullptr) return nullptr;
        if (!v->is_array()) {
            error("field '" + join(path, key) + "': expected array");
            return nullptr;
        }
        return v;
    }

    bool expect_object(const json& v, const std::string& path) {
        if (!v.is_object()) {
            error("field '" + path + "': expected object");
            return false;
        }
        return true;
    }

    void check_known(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
        for (const auto& [key, value] : obj.items()) {
            bool found = std::any_of(known.begin(), known.end(), [&](const char* k) { return key == k; });
            if (found) continue;
            const std::string message = "field '" + join(path, key.c_str()) + "': unknown field";
            if (strictness_ == Strictness::strict) {
                error(message);
            } else {
                diagnostics_.push_back({line_, Severity::warning, ErrorKind::validation, message + " ignored"});
            }
        }
    }

    static std::string join(const std::string& path, const char* key) {
        return path.empty() ? std::string(key) : path + "." + key;
    }

private:
    std::vector<Diagnostic>& diagnostics_;
    std::size_t line_;
    Strictness strictness_;
};

std::string indexed(const char* name, std::size_t i) {
    return std::string(name) + "[" + std::to_string(i) + "]";
}

int ordering_layer(const PositionedNode& node, int logit_layer) {
    return node.key.kind == NodeKind::logit ? logit_layer : node.key.layer;
}

}  // namespace

std::vector<Diagnostic> validate_trace(const SampleTrace& t) {
    std::vector<Diagnostic> out;
    auto error = [&](std::string message) {
        out.push_back({0, Severity::error, ErrorKind::validation, std::move(message)});
    };
    auto warning = [&](std::string message) {
        out.push_back({0, Severity::warning, ErrorKind::validation, std::move(message)});
    };

    if (t.sample_id.empty()) error("field 'sample_id': must be non-empty");
    if (t.logit_layer < 0) error("field 'logit_layer': must be >= 0");

    const int n_tokens = static_cast<int>(t.tokens.size());
    for (int i = 0; i < n_tokens; ++i) {
        if (t.tokens[static_cast<std::size_t>(i)].position != i) {
            error("field 'tokens[" + std::to_string(i) + "].position': expected " + std::to_string(i) +
                  " (positions must be 0..n-1 in order)");
            break;
        }
    }
    if (t.question_token_count < 0 || t.question_token_count > n_tokens) {
        error("field 'question_token_count': " + std::to_string(t.question_token_count) +
              " exceeds token count " + std::to_string(n_tokens));
    }
    if (t.target.position < 0 || t.target.position >= n_tokens) {
        error("field 'target.position': " + std::to_string(t.target.position) + " is outside the token list");
    } else {
        if (t.tokens[static_cast<std::size_t>(t.target.position)].text != t.target.text) {
            error("field 'target.text': does not match token at position " + std::to_string(t.target.position));
        }
        if (t.targets_question()) {
            warning("target at position " + std::to_string(t.target.position) +
                    " lies inside the question; the trace will be skipped when building graphs");
        }
    }

    std::unordered_map<std::int64_t, const PositionedNode*> by_id;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& node = t.nodes[i];
        const std::string where = "node " + std::to_string(node.id);
        if (!by_id.emplace(node.id, &node).second) {
            error("field '" + indexed("nodes", i) + ".id': duplicate node_id " + std::to_string(node.id));
        }
        if (node.position < 0 || node.position >= n_tokens) {
            error(where + ": position " + std::to_string(node.position) + " is outside the token list");
        }
        if (node.key.token.empty()) error(where + ": token_text must be non-empty");
        if (node.key.layer < 0) error(where + ": layer must be >= 0");
        if (node.key.kind == NodeKind::logit && node.key.layer != t.logit_layer) {
            error(where + ": logit node layer " + std::to_string(node.key.layer) +
                  " differs from logit_layer " + std::to_string(t.logit_layer));
        }
        if (node.key.kind != NodeKind::logit && node.key.layer >= t.logit_layer) {
            error(where + ": layer " + std::to_string(node.key.layer) + " is not below logit_layer " +
                  std::to_string(t.logit_layer));
        }
        if (node.key.kind != NodeKind::logit && node.position >= 0 && node.position < n_tokens &&
            t.tokens[static_cast<std::size_t>(node.position)].text != node.key.token) {
            warning(where + ": token_text differs from the token at position " + std::to_string(node.position));
        }
    }

    for (std::size_t i = 0; i < t.edges.size(); ++i) {
        const auto& edge = t.edges[i];
        const std::string where = "edge " + std::to_string(i) + " (" + std::to_string(edge.src) + " -> " +
                                  std::to_string(edge.dst) + ")";
        auto src = by_id.find(edge.src);
        auto dst = by_id.find(edge.dst);
        if (src == by_id.end()) error(where + ": dangling src node_id " + std::to_string(edge.src));
        if (dst == by_id.end()) error(where + ": dangling dst node_id " + std::to_string(edge.dst));
        if (edge.src == edge.dst) error(where + ": self-loop");
        if (src != by_id.end() && dst != by_id.end() && edge.src != edge.dst) {
            const int ls = ordering_layer(*src->second, t.logit_layer);
            const int ld = ordering_layer(*dst->second, t.logit_layer);
            if (ls >= ld) {
                error(where + ": src layer " + std::to_string(ls) + " must be below dst layer " +
                      std::to_string(ld));
            }
        }
    }
    return out;
}

LineCheck check_trace_line(std::string_view line, std::size_t line_no, Strictness strictness) {
    LineCheck result;
    auto& diags = result.diagnostics;
    FieldReader r(diags, line_no, strictness);

    json record;
    try {
        record = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
        r.error(std::string("malformed record: ") + e.what());
        return result;
    }
    if (!r.expect_object(record, "<record>")) return result;

    // Version first: an unknown version makes every other message noise.
    if (const json* version = r.member(record, "", "schema_version")) {
        if (!version->is_string() || version->get<std::string>() != kTraceSchemaVersion) {
            r.error("field 'schema_version': unsupported version " + version->dump() + " (expected \"" +
                        std::string(kTraceSchemaVersion) + "\")",
                    ErrorKind::unsupported_version);
            return result;
        }
    } else {
        return result;
    }

    r.check_known(record, "",
                  {"schema_version", "sample_id", "dataset", "model_id", "logit_layer", "question_token_count",
                   "tokens", "target", "nodes", "edges"});

    SampleTrace t;
    if (auto v = r.string_field(record, "", "sample_id")) t.sample_id = *v;
    if (auto v = r.string_field(record, "", "dataset")) t.dataset = *v;
    if (auto v = r.string_field(record, "", "model_id")) t.model_id = *v;
    if (auto v = r.small_int_field(record, "", "logit_layer")) t.logit_layer = *v;
    if (auto v = r.small_int_field(record, "", "question_token_count")) t.question_token_count = *v;

    if (const json* tokens = r.array_field(record, "", "tokens")) {
        for (std::size_t i = 0; i < tokens->size(); ++i) {
            const auto& item = (*tokens)[i];
            const std::string path = indexed("tokens", i);
            if (!r.expect_object(item, path)) continue;
            r.check_known(item, path, {"position", "text"});
            TokenEntry entry;
            if (auto v = r.small_int_field(item, path, "position")) entry.position = *v;
            if (auto v = r.string_field(item, path, "text")) entry.text = *v;
            t.tokens.push_back(std::move(entry));
        }
    }

    if (const json* target = r.member(record, "", "target")) {
        if (r.expect_object(*target, "target")) {
            r.check_known(*target, "target", {"text", "position"});
            if (auto v = r.string_field(*target, "target", "text")) t.target.text = *v;
            if (auto v = r.small_int_field(*target, "target", "position")) t.target.position = *v;
        }
    }

    if (const json* nodes = r.array_field(record, "", "nodes")) {
        for (std::size_t i = 0; i < nodes->size(); ++i) {
            const auto& item = (*nodes)[i];
            const std::string path = indexed("nodes", i);
            if (!r.expect_object(item, path)) continue;
            r.check_known(item, path, {"id", "position", "layer", "token_text", "activation", "kind"});
            PositionedNode node;
            if (auto v = r.int_field(item, path, "id")) node.id = *v;
            if (auto v = r.small_int_field(item, path, "position")) node.position = *v;
            if (auto v = r.small_int_field(item, path, "layer")) node.key.layer = *v;
            if (auto v = r.string_field(item, path, "token_text")) node.key.token = *v;
            if (auto v = r.number_field(item, path, "activation")) node.activation = *v;
            if (auto v = r.string_field(item, path, "kind")) {
                if (auto kind = parse_kind(*v)) {
                    node.key.kind = *kind;
                } else {
                    r.error("field '" + path + ".kind': unknown kind \"" + *v + "\"");
                }
            }
            t.nodes.push_back(std::move(node));
        }
    }

    if (const json* edges = r.array_field(record, "", "edges")) {
        for (std::size_t i = 0; i < edges->size(); ++i) {
            const auto& item = (*edges)[i];
            const std::string path = indexed("edges", i);
            if (!r.expect_object(item, path)) continue;
            r.check_known(item, path, {"src", "dst", "attribution"});
            AttributionEdge edge;
            if (auto v = r.int_field(item, path, "src")) edge.src = *v;
            if (auto v = r.int_field(item, path, "dst")) edge.dst = *v;
            if (auto v = r.number_field(item, path, "attribution")) edge.attribution = *v;
            t.edges.push_back(edge);
        }
    }

    const bool structural_ok =
        std::none_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
    if (!structural_ok) return result;

    for (auto d : validate_trace(t)) {
        d.line = line_no;
        diags.push_back(std::move(d));
    }
    const bool ok =
        std::none_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
    if (ok) result.trace = std::move(t);
    return result;
}

ParseResult parse_trace_stream(std::istream& in, const ParseOptions& options) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        LineCheck check = check_trace_line(line, line_no, options.strictness);
        if (check.trace) {
            result.traces.push_back(std::move(*check.trace));
            for (auto& d : check.diagnostics) result.diagnostics.push_back(std::move(d));
            continue;
        }
        auto first_error = std::find_if(check.diagnostics.begin(), check.diagnostics.end(),
                                        [](const Diagnostic& d) { return d.severity == Severity::error; });
        if (options.strictness == Strictness::strict) {
            throw Error(first_error->kind, "line " + std::to_string(line_no) + ": " + first_error->message);
        }
        result.diagnostics.push_back({line_no, Severity::warning, first_error->kind,
                                      "record skipped: " + first_error->message});
    }
    return result;
}

ParseResult parse_trace_file(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::config, "cannot open trace file '" + path + "'");
    try {
        return parse_trace_stream(in, options);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

std::string serialize_trace(const SampleTrace& t) {
    using namespace detail;
    std::string out;
    out.reserve(128 + 96 * t.nodes.size() + 48 * t.edges.size() + 32 * t.tokens.size());
    out += '{';
    append_key(out, "schema_version");
    append_json_string(out, kTraceSchemaVersion);
    out += ',';
    append_key(out, "sample_id");
    append_json_string(out, t.sample_id);
    out += ',';
    append_key(out, "dataset");
    append_json_string(out, t.dataset);
    out += ',';
    append_key(out, "model_id");
    append_json_string(out, t.model_id);
    out += ',';
    append_key(out, "logit_layer");
    append_json_int(out, t.logit_layer);
    out += ',';
    append_key(out, "question_token_count");
    append_json_int(out, t.question_token_count);
    out += ',';
    append_key(out, "tokens");
    out += '[';
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
        if (i != 0) out += ',';
        out += '{';
        append_key(out, "position");
        append_json_int(out, t.tokens[i].position);
        out += ',';
        append_key(out, "text");
        append_json_string(out, t.tokens[i].text);
        out += '}';
    }
    out += "],";
    append_key(out, "target");
    out += '{';
    append_key(out, "text");
    append_json_string(out, t.target.text);
    out += ',';
    append_key(out, "position");
    append_json_int(out, t.target.position);
    out += "},";
    append_key(out, "nodes");
    out += '[';
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& n = t.nodes[i];
        if (i != 0) out += ',';
        out += '{';
        append_key(out, "id");
        append_json_int(out, n.id);
        out += ',';
        append_key(out, "position");
        append_json_int(out, n.position);
        out += ',';
        append_key(out, "layer");
        append_json_int(out, n.key.layer);
        out += ',';
        append_key(out, "token_text");
        append_json_string(out, n.key.token);
        out += ',';
        append_key(out, "activation");
        append_json_double(out, n.activation);
        out += ',';
        append_key(out, "kind");
        append_json_string(out, kind_name(n.key.kind));
        out += '}';
    }
    out += "],";
    append_key(out, "edges");
    out += '[';
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
        const auto& e = t.edges[i];
        if (i != 0) out += ',';
        out += '{';
        append_key(out, "src");
        append_json_int(out, e.src);
        out += ',';
        append_key(out, "dst");
        append_json_int(out, e.dst);
        out += ',';
        append_key(out, "attribution");
        append_json_double(out, e.attribution);
        out += '}';
    }
    out += "]}";
    return out;
}

void write_trace_stream(std::ostream& out, std::span<const SampleTrace> traces) {
    for (const auto& t : traces) out << serialize_trace(t) << '\n';
}

}  // namespace graphghost
