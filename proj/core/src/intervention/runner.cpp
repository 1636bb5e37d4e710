// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/intervention/runner.hpp"

#include <json.hpp>

#include "graphghost/error.hpp"
#include "graphghost/intervention/judge.hpp"

namespace graphghost {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view mute_scope_name(MuteScope scope) {
    return scope == MuteScope::prompt_only ? "prompt" : "all";
}

std::optional<MuteScope> parse_mute_scope(std::string_view text) {
    if (text == "all") return MuteScope::all_positions;
    if (text == "prompt") return MuteScope::prompt_only;
    return std::nullopt;
}

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& problem) {
    fail(ErrorKind::validation, "field '" + field + "': " + problem);
}

json parse_body(std::string_view body) {
    try {
        json j = json::parse(body.begin(), body.end());
        if (!j.is_object()) bad_field("<body>", "expected object");
        return j;
    } catch (const json::parse_error& e) {
        fail(ErrorKind::validation, std::string("malformed body: ") + e.what());
    }
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad_field(key, "missing");
    return *it;
}

std::string string_of(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) bad_field(key, "expected string");
    return v.get<std::string>();
}

std::int64_t int_of(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) bad_field(key, "expected integer");
    return v.get<std::int64_t>();
}

bool bool_of(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) bad_field(key, "expected boolean");
    return v.get<bool>();
}

std::vector<std::string> strings_of(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) bad_field(key, "expected array");
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) bad_field(key, "expected array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

void put_generate(ordered_json& j, const GenerateRequest& r) {
    if (r.prompt_text) {
        j["prompt_text"] = *r.prompt_text;
    } else {
        j["prompt_tokens"] = r.prompt_tokens;
    }
    j["max_new_tokens"] = r.decoding.max_new_tokens;
    j["seed"] = r.decoding.seed;
    j["greedy"] = r.decoding.greedy;
}

GenerateRequest take_generate(const json& j) {
    GenerateRequest r;
    const bool has_tokens = j.contains("prompt_tokens");
    const bool has_text = j.contains("prompt_text");
    if (has_tokens == has_text) bad_field("prompt_tokens", "exactly one of prompt_tokens / prompt_text is required");
    if (has_tokens) {
        r.prompt_tokens = strings_of(j, "prompt_tokens");
    } else {
        r.prompt_text = string_of(j, "prompt_text");
    }
    const auto max_new = int_of(j, "max_new_tokens");
    if (max_new < 1 || max_new > 1'000'000) bad_field("max_new_tokens", "must be in [1, 1000000]");
    r.decoding.max_new_tokens = static_cast<int>(max_new);
    const json& seed = field(j, "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
        bad_field("seed", "expected non-negative integer");
    }
    r.decoding.seed = seed.get<std::uint64_t>();
    r.decoding.greedy = bool_of(j, "greedy");
    return r;
}

}  // namespace

std::string encode_info(const RunnerInfo& info) {
    ordered_json j;
    j["model_id"] = info.model_id;
    j["n_layers"] = info.n_layers;
    j["logit_layer"] = info.logit_layer;
    j["intervention_site"] = info.intervention_site;
    return j.dump();
}

RunnerInfo decode_info(std::string_view body) {
    const json j = parse_body(body);
    RunnerInfo info;
    info.model_id = string_of(j, "model_id");
    info.n_layers = static_cast<int>(int_of(j, "n_layers"));
    info.logit_layer = static_cast<int>(int_of(j, "logit_layer"));
    info.intervention_site = string_of(j, "intervention_site");
    return info;
}

std::string encode_generate_request(const GenerateRequest& request) {
    ordered_json j;
    put_generate(j, request);
    return j.dump();
}

GenerateRequest decode_generate_request(std::string_view body) {
    return take_generate(parse_body(body));
}

std::string encode_masked_request(const MaskedRequest& request) {
    ordered_json j;
    put_generate(j, request.base);
    j["keep_positions"] = request.keep_positions;
    j["blank_token"] = request.blank_token;
    return j.dump();
}

MaskedRequest decode_masked_request(std::string_view body) {
    const json j = parse_body(body);
    MaskedRequest r;
    r.base = take_generate(j);
    const json& keep = field(j, "keep_positions");
    if (!keep.is_array()) bad_field("keep_positions", "expected array");
    for (const auto& p : keep) {
        if (!p.is_number_integer() || p.get<std::int64_t>() < 0) bad_field("keep_positions", "expected positions >= 0");
        r.keep_positions.push_back(p.get<int>());
    }
    r.blank_token = string_of(j, "blank_token");
    return r;
}

std::string encode_muted_request(const MutedRequest& request) {
    ordered_json j;
    put_generate(j, request.base);
    ordered_json mutes = ordered_json::array();
    for (const auto& m : request.mutes) {
        ordered_json item;
        item["token_text"] = m.token_text;
        item["layer"] = m.layer;
        mutes.push_back(std::move(item));
    }
    j["mutes"] = std::move(mutes);
    j["mute_scope"] = std::string(mute_scope_name(request.scope));
    return j.dump();
}

MutedRequest decode_muted_request(std::string_view body) {
    const json j = parse_body(body);
    MutedRequest r;
    r.base = take_generate(j);
    const json& mutes = field(j, "mutes");
    if (!mutes.is_array()) bad_field("mutes", "expected array");
    for (const auto& m : mutes) {
        if (!m.is_object()) bad_field("mutes", "expected array of objects");
        MuteTarget t;
        t.token_text = string_of(m, "token_text");
        t.layer = static_cast<int>(int_of(m, "layer"));
        r.mutes.push_back(std::move(t));
    }
    if (j.contains("mute_scope")) {
        auto scope = parse_mute_scope(string_of(j, "mute_scope"));
        if (!scope) bad_field("mute_scope", "expected \"all\" or \"prompt\"");
        r.scope = *scope;
    }
    return r;
}

std::string encode_generation(const Generation& generation) {
    ordered_json j;
    j["text"] = generation.text;
    j["tokens"] = generation.tokens;
    j["truncated"] = generation.truncated;
    return j.dump();
}

Generation decode_generation(std::string_view body, int max_new_tokens) {
    const json j = parse_body(body);
    Generation g;
    g.text = string_of(j, "text");
    g.tokens = strings_of(j, "tokens");
    if (j.contains("truncated")) {
        g.truncated = bool_of(j, "truncated");
    } else {
        g.truncated = max_new_tokens > 0 && static_cast<int>(g.tokens.size()) >= max_new_tokens;
    }
    return g;
}

std::string encode_judge_request(const JudgeRequest& request) {
    ordered_json j;
    j["question"] = request.question;
    j["answer_a"] = request.answer_a;
    j["answer_b"] = request.answer_b;
    j["prompt"] = judge_prompt(request.answer_a, request.answer_b);
    return j.dump();
}

JudgeRequest decode_judge_request(std::string_view body) {
    const json j = parse_body(body);
    return {string_of(j, "question"), string_of(j, "answer_a"), string_of(j, "answer_b")};
}

std::string encode_judge_response(bool same) {
    ordered_json j;
    j["same"] = same;
    return j.dump();
}

bool decode_judge_response(std::string_view body) {
    return bool_of(parse_body(body), "same");
}

}  // namespace graphghost
