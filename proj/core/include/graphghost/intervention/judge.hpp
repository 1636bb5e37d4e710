// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace graphghost {

enum class JudgeMode { external, deterministic };

std::string_view judge_mode_name(JudgeMode mode);
std::optional<JudgeMode> parse_judge_mode(std::string_view text);

struct JudgeVerdict {
    bool same = false;
    bool undecided = false;  // a final result could not be extracted
    JudgeMode mode = JudgeMode::deterministic;
};

/// Decides whether two answers to the same question reach the same final result.
class JudgeClient {
public:
    virtual ~JudgeClient() = default;
    virtual JudgeVerdict judge(const std::string& question, const std::string& answer_a,
                               const std::string& answer_b) = 0;
};

/// Final result of a free-text answer, normalized: the last number (commas
/// and currency dropped, trailing fractional zeros removed), else the last
/// standalone option letter A-E, else the last yes/no (true/false map to
/// yes/no). nullopt when none is present.
std::optional<std::string> extract_final_result(std::string_view answer);

/// Byte-identical answers are the same; otherwise both final results must be
/// extractable and equal. Symmetric in its answer arguments.
JudgeVerdict deterministic_judge(std::string_view question, std::string_view answer_a, std::string_view answer_b);

/// Prompt sent along with external judge requests.
std::string judge_prompt(std::string_view answer_a, std::string_view answer_b);

class DeterministicJudge final : public JudgeClient {
public:
    JudgeVerdict judge(const std::string& question, const std::string& answer_a,
                       const std::string& answer_b) override {
        return deterministic_judge(question, answer_a, answer_b);
    }
};

}  // namespace graphghost
