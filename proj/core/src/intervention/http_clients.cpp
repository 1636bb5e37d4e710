// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/intervention/http_clients.hpp"

#include <httplib.h>

#include <stdexcept>

#include "graphghost/error.hpp"

namespace graphghost {

namespace {

httplib::Client make_client(const std::string& base_url, const HttpOptions& options) {
    try {
        httplib::Client client(base_url);
        if (client.is_valid()) {
            client.set_connection_timeout(options.connect_timeout_s, 0);
            client.set_read_timeout(options.read_timeout_s, 0);
            client.set_write_timeout(options.read_timeout_s, 0);
            return client;
        }
    } catch (const std::invalid_argument&) {
    }
    fail(ErrorKind::config, "invalid endpoint URL '" + base_url + "'");
}

[[noreturn]] void transport_failure(const std::string& base_url, const char* path, const std::string& why) {
    throw Error(ErrorKind::transport, std::string(path) + " at " + base_url + ": " + why, /*retriable=*/true);
}

std::string check_response(const httplib::Result& res, const std::string& base_url, const char* path) {
    if (!res) transport_failure(base_url, path, httplib::to_string(res.error()));
    const int status = res->status;
    if (status == 200) return res->body;
    const std::string detail = "HTTP " + std::to_string(status) + (res->body.empty() ? "" : ": " + res->body);
    if (status == 404 || status == 405 || status == 501) {
        fail(ErrorKind::capability, std::string(path) + " not supported by " + base_url + " (" + detail + ")");
    }
    if (status == 422) fail(ErrorKind::plan, std::string(path) + " rejected by " + base_url + " (" + detail + ")");
    if (status == 400) fail(ErrorKind::validation, std::string(path) + " rejected by " + base_url + " (" + detail + ")");
    // 5xx and anything else: worth retrying.
    transport_failure(base_url, path, detail);
}

}  // namespace

HttpRunnerClient::HttpRunnerClient(std::string base_url, HttpOptions options)
    : base_url_(std::move(base_url)), options_(options) {
    make_client(base_url_, options_);
}

std::string HttpRunnerClient::post(const char* path, const std::string& body) {
    auto client = make_client(base_url_, options_);
    return check_response(client.Post(path, body, "application/json"), base_url_, path);
}

RunnerInfo HttpRunnerClient::info() {
    auto client = make_client(base_url_, options_);
    const std::string body = check_response(client.Get("/v1/info"), base_url_, "/v1/info");
    return decode_info(body);
}

Generation HttpRunnerClient::generate(const GenerateRequest& request) {
    return decode_generation(post("/v1/generate", encode_generate_request(request)),
                             request.decoding.max_new_tokens);
}

Generation HttpRunnerClient::generate_masked(const MaskedRequest& request) {
    return decode_generation(post("/v1/generate_masked", encode_masked_request(request)),
                             request.base.decoding.max_new_tokens);
}

Generation HttpRunnerClient::generate_muted(const MutedRequest& request) {
    return decode_generation(post("/v1/generate_muted", encode_muted_request(request)),
                             request.base.decoding.max_new_tokens);
}

HttpJudgeClient::HttpJudgeClient(std::string base_url, HttpOptions options)
    : base_url_(std::move(base_url)), options_(options) {
    make_client(base_url_, options_);
}

JudgeVerdict HttpJudgeClient::judge(const std::string& question, const std::string& answer_a,
                                    const std::string& answer_b) {
    auto client = make_client(base_url_, options_);
    const std::string body = check_response(
        client.Post("/v1/judge", encode_judge_request({question, answer_a, answer_b}), "application/json"),
        base_url_, "/v1/judge");
    JudgeVerdict verdict;
    verdict.mode = JudgeMode::external;
    verdict.same = decode_judge_response(body);
    return verdict;
}

}  // namespace graphghost
