// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "graphghost/intervention/judge.hpp"
#include "graphghost/intervention/runner.hpp"

namespace graphghost {

struct HttpOptions {
    int connect_timeout_s = 10;
    int read_timeout_s = 600;
};

/// RunnerClient speaking the /v1 HTTP contract. A fresh connection is opened
/// per call, so one instance may be shared between threads.
class HttpRunnerClient final : public RunnerClient {
public:
    explicit HttpRunnerClient(std::string base_url, HttpOptions options = {});

    RunnerInfo info() override;
    Generation generate(const GenerateRequest& request) override;
    Generation generate_masked(const MaskedRequest& request) override;
    Generation generate_muted(const MutedRequest& request) override;

private:
    std::string post(const char* path, const std::string& body);

    std::string base_url_;
    HttpOptions options_;
};

/// POST /v1/judge {question, answer_a, answer_b, prompt} -> {same}
class HttpJudgeClient final : public JudgeClient {
public:
    explicit HttpJudgeClient(std::string base_url, HttpOptions options = {});

    JudgeVerdict judge(const std::string& question, const std::string& answer_a,
                       const std::string& answer_b) override;

private:
    std::string base_url_;
    HttpOptions options_;
};

}  // namespace graphghost
