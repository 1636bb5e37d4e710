// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphghost {

/// GET /v1/info
struct RunnerInfo {
    std::string model_id;
    int n_layers = 0;
    int logit_layer = 0;
    std::string intervention_site;  // where the runner applies mutes, recorded on every result

    friend bool operator==(const RunnerInfo&, const RunnerInfo&) = default;
};

struct DecodingConfig {
    int max_new_tokens = 256;
    std::uint64_t seed = 0;
    bool greedy = true;

    friend bool operator==(const DecodingConfig&, const DecodingConfig&) = default;
};

struct MuteTarget {
    std::string token_text;
    int layer = 0;

    friend bool operator==(const MuteTarget&, const MuteTarget&) = default;
    friend auto operator<=>(const MuteTarget&, const MuteTarget&) = default;
};

/// Which positions a mute applies to: every position whose token matches
/// (prompt and generated), or prompt positions only.
enum class MuteScope { all_positions, prompt_only };

std::string_view mute_scope_name(MuteScope scope);
std::optional<MuteScope> parse_mute_scope(std::string_view text);

/// POST /v1/generate body. Exactly one of prompt_tokens / prompt_text is sent.
struct GenerateRequest {
    std::vector<std::string> prompt_tokens;
    std::optional<std::string> prompt_text;
    DecodingConfig decoding;

    friend bool operator==(const GenerateRequest&, const GenerateRequest&) = default;
};

/// POST /v1/generate_masked: question positions outside keep_positions are
/// replaced by blank_token before generation.
struct MaskedRequest {
    GenerateRequest base;
    std::vector<int> keep_positions;
    std::string blank_token = " ";

    friend bool operator==(const MaskedRequest&, const MaskedRequest&) = default;
};

/// POST /v1/generate_muted
struct MutedRequest {
    GenerateRequest base;
    std::vector<MuteTarget> mutes;
    MuteScope scope = MuteScope::all_positions;

    friend bool operator==(const MutedRequest&, const MutedRequest&) = default;
};

struct Generation {
    std::string text;
    std::vector<std::string> tokens;
    bool truncated = false;  // generation stopped at max_new_tokens

    friend bool operator==(const Generation&, const Generation&) = default;
};

/// Client side of the runner wire contract. Implementations throw
/// Error(transport, retriable) on network failures, Error(capability) when an
/// endpoint is missing and Error(plan) when the runner rejects a layer.
class RunnerClient {
public:
    virtual ~RunnerClient() = default;
    virtual RunnerInfo info() = 0;
    virtual Generation generate(const GenerateRequest& request) = 0;
    virtual Generation generate_masked(const MaskedRequest& request) = 0;
    virtual Generation generate_muted(const MutedRequest& request) = 0;
};

// Wire encoding (JSON bodies). Decoders throw Error(validation) naming the
// offending field. Shared by the HTTP client and by test doubles serving the
// contract.
std::string encode_info(const RunnerInfo& info);
RunnerInfo decode_info(std::string_view body);
std::string encode_generate_request(const GenerateRequest& request);
GenerateRequest decode_generate_request(std::string_view body);
std::string encode_masked_request(const MaskedRequest& request);
MaskedRequest decode_masked_request(std::string_view body);
std::string encode_muted_request(const MutedRequest& request);
MutedRequest decode_muted_request(std::string_view body);
std::string encode_generation(const Generation& generation);
/// `max_new_tokens` marks the result truncated when the body carries no
/// explicit "truncated" flag and the token count reached the limit.
Generation decode_generation(std::string_view body, int max_new_tokens);

struct JudgeRequest {
    std::string question;
    std::string answer_a;
    std::string answer_b;
};
std::string encode_judge_request(const JudgeRequest& request);
JudgeRequest decode_judge_request(std::string_view body);
std::string encode_judge_response(bool same);
bool decode_judge_response(std::string_view body);

}  // namespace graphghost
