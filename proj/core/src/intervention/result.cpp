// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/intervention/result.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "../json_text.hpp"
#include "graphghost/error.hpp"

namespace graphghost {

using nlohmann::json;

std::string serialize_result(const InterventionResult& r) {
    using namespace detail;
    std::string out = "{";
    append_key(out, "sample_id");
    append_json_string(out, r.sample_id);
    out += ',';
    append_key(out, "experiment");
    append_json_string(out, r.experiment);
    out += ',';
    append_key(out, "variant");
    append_json_string(out, r.variant);
    out += ',';
    append_key(out, "mutes");
    out += '[';
    for (std::size_t i = 0; i < r.mutes.size(); ++i) {
        if (i != 0) out += ',';
        out += '{';
        append_key(out, "token_text");
        append_json_string(out, r.mutes[i].token_text);
        out += ',';
        append_key(out, "layer");
        append_json_int(out, r.mutes[i].layer);
        out += '}';
    }
    out += "],";
    append_key(out, "sparsity");
    if (r.sparsity) {
        append_json_double(out, *r.sparsity);
    } else {
        out += "null";
    }
    out += ',';
    append_key(out, "original_answer");
    append_json_string(out, r.original_answer);
    out += ',';
    append_key(out, "perturbed_answer");
    append_json_string(out, r.perturbed_answer);
    out += ',';
    append_key(out, "fidelity");
    append_json_int(out, r.fidelity);
    out += ',';
    append_key(out, "infidelity");
    append_json_int(out, r.infidelity());
    out += ',';
    append_key(out, "language_changed");
    append_json_int(out, r.language_changed);
    out += ',';
    append_key(out, "judge_mode");
    append_json_string(out, judge_mode_name(r.judge_mode));
    out += ',';
    append_key(out, "judge_undecided");
    out += r.judge_undecided ? "true" : "false";
    out += ',';
    append_key(out, "truncated");
    out += r.truncated ? "true" : "false";
    out += ',';
    append_key(out, "intervention_site");
    append_json_string(out, r.intervention_site);
    out += '}';
    return out;
}

namespace {

[[noreturn]] void bad(const std::string& what) {
    fail(ErrorKind::format, "result record: " + what);
}

const json& at(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

template <typename T>
T typed(const json& j, const char* key) {
    try {
        return at(j, key).get<T>();
    } catch (const json::type_error&) {
        bad(std::string("field '") + key + "' has the wrong type");
    }
}

int zero_one(const json& j, const char* key) {
    const int v = typed<int>(j, key);
    if (v != 0 && v != 1) bad(std::string("field '") + key + "' must be 0 or 1");
    return v;
}

}  // namespace

InterventionResult parse_result(std::string_view line) {
    json j;
    try {
        j = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
        bad(std::string("malformed: ") + e.what());
    }
    if (!j.is_object()) bad("expected object");
    InterventionResult r;
    r.sample_id = typed<std::string>(j, "sample_id");
    r.experiment = typed<std::string>(j, "experiment");
    r.variant = typed<std::string>(j, "variant");
    const json& mutes = at(j, "mutes");
    if (!mutes.is_array()) bad("field 'mutes' must be an array");
    for (const auto& m : mutes) {
        if (!m.is_object()) bad("mute entries must be objects");
        r.mutes.push_back({typed<std::string>(m, "token_text"), typed<int>(m, "layer")});
    }
    const json& sp = at(j, "sparsity");
    if (!sp.is_null()) {
        if (!sp.is_number()) bad("field 'sparsity' must be a number or null");
        r.sparsity = sp.get<double>();
    }
    r.original_answer = typed<std::string>(j, "original_answer");
    r.perturbed_answer = typed<std::string>(j, "perturbed_answer");
    r.fidelity = zero_one(j, "fidelity");
    if (zero_one(j, "infidelity") != 1 - r.fidelity) bad("infidelity must equal 1 - fidelity");
    r.language_changed = zero_one(j, "language_changed");
    auto mode = parse_judge_mode(typed<std::string>(j, "judge_mode"));
    if (!mode) bad("unknown judge_mode");
    r.judge_mode = *mode;
    r.judge_undecided = typed<bool>(j, "judge_undecided");
    r.truncated = typed<bool>(j, "truncated");
    r.intervention_site = typed<std::string>(j, "intervention_site");
    return r;
}

void write_results(std::ostream& out, std::span<const InterventionResult> results) {
    for (const auto& r : results) out << serialize_result(r) << '\n';
}

std::vector<InterventionResult> read_results(std::istream& in) {
    std::vector<InterventionResult> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(parse_result(line));
        } catch (const Error& e) {
            throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<InterventionResult> read_results_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::config, "cannot open results file '" + path + "'");
    return read_results(in);
}

}  // namespace graphghost
