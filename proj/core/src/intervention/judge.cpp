// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/intervention/judge.hpp"

#include <cctype>

namespace graphghost {

std::string_view judge_mode_name(JudgeMode mode) {
    return mode == JudgeMode::external ? "external" : "deterministic";
}

std::optional<JudgeMode> parse_judge_mode(std::string_view text) {
    if (text == "external") return JudgeMode::external;
    if (text == "deterministic") return JudgeMode::deterministic;
    return std::nullopt;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }

std::string normalize_number(std::string integer, std::string fraction, bool negative) {
    std::string digits;
    for (char c : integer) {
        if (c != ',') digits += c;
    }
    const auto nonzero = digits.find_first_not_of('0');
    digits = nonzero == std::string::npos ? "0" : digits.substr(nonzero);
    while (!fraction.empty() && fraction.back() == '0') fraction.pop_back();
    std::string out = digits;
    if (!fraction.empty()) out += "." + fraction;
    if (negative && out != "0") out = "-" + out;
    return out;
}

std::optional<std::string> last_number(std::string_view s) {
    std::optional<std::string> found;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!is_digit(s[i])) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < s.size() && is_digit(s[i])) ++i;
        std::string integer(s.substr(start, i - start));
        // Thousands separators: a comma followed by exactly three digits.
        while (i + 3 < s.size() && s[i] == ',' && is_digit(s[i + 1]) && is_digit(s[i + 2]) && is_digit(s[i + 3]) &&
               (i + 4 >= s.size() || !is_digit(s[i + 4]))) {
            integer += s.substr(i, 4);
            i += 4;
        }
        std::string fraction;
        if (i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1])) {
            const std::size_t frac_start = ++i;
            while (i < s.size() && is_digit(s[i])) ++i;
            fraction = std::string(s.substr(frac_start, i - frac_start));
        }
        const bool negative = start > 0 && s[start - 1] == '-' && (start == 1 || !is_alnum(s[start - 2]));
        found = normalize_number(std::move(integer), std::move(fraction), negative);
    }
    return found;
}

std::optional<std::string> last_option_letter(std::string_view s) {
    std::optional<std::string> found;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c < 'A' || c > 'E') continue;
        if (i > 0 && is_alnum(s[i - 1])) continue;
        if (i + 1 < s.size() && is_alnum(s[i + 1])) continue;
        if (c == 'A') {
            // "A total of ..." is the article, not an option.
            std::size_t j = i + 1;
            while (j < s.size() && s[j] == ' ') ++j;
            if (j > i + 1 && j < s.size() && is_ascii_lower(s[j])) continue;
        }
        found = std::string(1, c);
    }
    return found;
}

std::optional<std::string> last_yes_no(std::string_view s) {
    std::optional<std::string> found;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!std::isalpha(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < s.size() && is_alnum(s[i])) ++i;
        std::string word(s.substr(start, i - start));
        for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (word == "yes" || word == "true") found = "yes";
        if (word == "no" || word == "false") found = "no";
    }
    return found;
}

}  // namespace

std::optional<std::string> extract_final_result(std::string_view answer) {
    if (auto n = last_number(answer)) return "number:" + *n;
    if (auto o = last_option_letter(answer)) return "option:" + *o;
    if (auto y = last_yes_no(answer)) return "yesno:" + *y;
    return std::nullopt;
}

JudgeVerdict deterministic_judge(std::string_view /*question*/, std::string_view answer_a, std::string_view answer_b) {
    JudgeVerdict verdict;
    verdict.mode = JudgeMode::deterministic;
    if (answer_a == answer_b) {
        verdict.same = true;
        return verdict;
    }
    const auto a = extract_final_result(answer_a);
    const auto b = extract_final_result(answer_b);
    if (!a || !b) {
        verdict.undecided = true;
        return verdict;
    }
    verdict.same = *a == *b;
    return verdict;
}

std::string judge_prompt(std::string_view answer_a, std::string_view answer_b) {
    std::string out = "Comparing two answers for a question: Answer1 {";
    out += answer_a;
    out += "}, Answer2 {";
    out += answer_b;
    out += "}. Do they have the same final results?";
    return out;
}

}  // namespace graphghost
