// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "graphghost/error.hpp"
#include "graphghost/intervention/runner.hpp"

namespace graphghost {
namespace {

template <typename F>
void expect_validation(F&& f) {
    try {
        f();
        FAIL() << "expected a validation error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::validation);
    }
}

GenerateRequest tokens_request() {
    GenerateRequest r;
    r.prompt_tokens = {"4", " 5", " |", "\"", "分"};
    r.decoding = {64, 1234567890123ULL, true};
    return r;
}

TEST(Wire, InfoBody) {
    const RunnerInfo info{"toy-path-6l", 6, 6, "mlp-out"};
    const std::string body = encode_info(info);
    EXPECT_EQ(body, R"({"model_id":"toy-path-6l","n_layers":6,"logit_layer":6,"intervention_site":"mlp-out"})");
    EXPECT_EQ(decode_info(body), info);
    expect_validation([] { decode_info(R"({"model_id":"m","n_layers":"6","logit_layer":6,"intervention_site":""})"); });
    expect_validation([] { decode_info(R"({"model_id":"m"})"); });
    expect_validation([] { decode_info("[1]"); });
    expect_validation([] { decode_info("{"); });
}

TEST(Wire, GenerateBody) {
    const GenerateRequest r = tokens_request();
    const std::string body = encode_generate_request(r);
    EXPECT_EQ(body, "{\"prompt_tokens\":[\"4\",\" 5\",\" |\",\"\\\"\",\"分\"],\"max_new_tokens\":64,"
                    "\"seed\":1234567890123,\"greedy\":true}");
    EXPECT_EQ(decode_generate_request(body), r);

    GenerateRequest text;
    text.prompt_text = "What is 2+2?";
    text.decoding.greedy = false;
    EXPECT_EQ(decode_generate_request(encode_generate_request(text)), text);
}

TEST(Wire, GenerateBodyRejectsBadFields) {
    expect_validation([] { decode_generate_request(R"({"max_new_tokens":4,"seed":0,"greedy":true})"); });
    expect_validation([] {
        decode_generate_request(R"({"prompt_text":"a","prompt_tokens":["a"],"max_new_tokens":4,"seed":0,"greedy":true})");
    });
    expect_validation([] { decode_generate_request(R"({"prompt_text":"a","max_new_tokens":0,"seed":0,"greedy":true})"); });
    expect_validation([] { decode_generate_request(R"({"prompt_text":"a","max_new_tokens":4,"seed":-1,"greedy":true})"); });
    expect_validation([] { decode_generate_request(R"({"prompt_text":"a","max_new_tokens":4,"seed":0,"greedy":1})"); });
    expect_validation([] { decode_generate_request(R"({"prompt_tokens":[1],"max_new_tokens":4,"seed":0,"greedy":true})"); });
}

TEST(Wire, MaskedBody) {
    MaskedRequest r{tokens_request(), {0, 2, 4}, "_"};
    const std::string body = encode_masked_request(r);
    EXPECT_NE(body.find(R"("greedy":true,"keep_positions":[0,2,4],"blank_token":"_"})"), std::string::npos);
    EXPECT_EQ(decode_masked_request(body), r);
    expect_validation([] {
        decode_masked_request(
            R"({"prompt_text":"a","max_new_tokens":4,"seed":0,"greedy":true,"keep_positions":[-1],"blank_token":" "})");
    });
}

TEST(Wire, MutedBody) {
    MutedRequest r{tokens_request(), {{" ", 5}, {".", 0}}, MuteScope::prompt_only};
    const std::string body = encode_muted_request(r);
    EXPECT_NE(body.find(R"("mutes":[{"token_text":" ","layer":5},{"token_text":".","layer":0}],"mute_scope":"prompt"})"),
              std::string::npos);
    EXPECT_EQ(decode_muted_request(body), r);

    // Scope defaults to every position when absent.
    const MutedRequest plain = decode_muted_request(
        R"({"prompt_text":"a","max_new_tokens":4,"seed":0,"greedy":true,"mutes":[{"token_text":"a","layer":1}]})");
    EXPECT_EQ(plain.scope, MuteScope::all_positions);
    expect_validation([] {
        decode_muted_request(
            R"({"prompt_text":"a","max_new_tokens":4,"seed":0,"greedy":true,"mutes":[],"mute_scope":"some"})");
    });
    expect_validation([] {
        decode_muted_request(R"({"prompt_text":"a","max_new_tokens":4,"seed":0,"greedy":true,"mutes":[1]})");
    });
}

TEST(Wire, GenerationBody) {
    const Generation g{"so 2", {"so", " 2"}, false};
    EXPECT_EQ(encode_generation(g), R"({"text":"so 2","tokens":["so"," 2"],"truncated":false})");
    EXPECT_EQ(decode_generation(encode_generation(g), 8), g);
    // Without an explicit flag, truncation is inferred from the token budget.
    EXPECT_TRUE(decode_generation(R"({"text":"ab","tokens":["a","b"]})", 2).truncated);
    EXPECT_FALSE(decode_generation(R"({"text":"ab","tokens":["a","b"]})", 3).truncated);
    expect_validation([] { decode_generation(R"({"text":"ab"})", 3); });
}

TEST(Wire, JudgeBodies) {
    const std::string body = encode_judge_request({"How many?", "= 2 trips", "= 2"});
    EXPECT_EQ(body,
              R"({"question":"How many?","answer_a":"= 2 trips","answer_b":"= 2","prompt":"Comparing two answers )"
              R"(for a question: Answer1 {= 2 trips}, Answer2 {= 2}. Do they have the same final results?"})");
    const JudgeRequest back = decode_judge_request(body);
    EXPECT_EQ(back.question, "How many?");
    EXPECT_EQ(back.answer_b, "= 2");
    EXPECT_EQ(encode_judge_response(true), R"({"same":true})");
    EXPECT_TRUE(decode_judge_response(R"({"same":true})"));
    EXPECT_FALSE(decode_judge_response(R"({"same":false,"reason":"x"})"));
    expect_validation([] { decode_judge_response(R"({"same":"yes"})"); });
}

TEST(Wire, MuteScopeNames) {
    EXPECT_EQ(mute_scope_name(MuteScope::all_positions), "all");
    EXPECT_EQ(parse_mute_scope("prompt"), MuteScope::prompt_only);
    EXPECT_EQ(parse_mute_scope("none"), std::nullopt);
}

}  // namespace
}  // namespace graphghost
