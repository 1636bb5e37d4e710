// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0
//
// Canonical JSON text emission shared by the trace, graph and result writers.
// nlohmann/json parses; emission is hand-rolled so that field order and float
// formatting (shortest round-trip via std::to_chars) are fixed.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace graphghost::detail {

inline void append_json_string(std::string& out, std::string_view text) {
    out += nlohmann::json(std::string(text)).dump();
}

inline void append_json_double(std::string& out, double value) {
    if (value == 0.0 && std::signbit(value)) {
        out += "-0.0";  // "-0" would read back as integer zero
        return;
    }
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    out.append(buffer, end);
}

inline void append_json_int(std::string& out, std::int64_t value) {
    out += std::to_string(value);
}

inline void append_key(std::string& out, std::string_view key) {
    out += '"';
    out += key;
    out += "\":";
}

inline std::string format_double(double value) {
    std::string out;
    append_json_double(out, value);
    return out;
}

}  // namespace graphghost::detail
