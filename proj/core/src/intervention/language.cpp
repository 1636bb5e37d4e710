// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/intervention/language.hpp"

#include <cstdint>

namespace graphghost {

namespace {

enum class Script { none, combining, latin, greek, cyrillic, armenian, hebrew, arabic, indic, thai, georgian, ideographic };

Script classify(char32_t cp) {
    if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z')) return Script::latin;
    if (cp < 0x80) return Script::none;
    if (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7) return Script::latin;
    if (cp >= 0x300 && cp <= 0x36F) return Script::combining;
    if ((cp >= 0x1E00 && cp <= 0x1EFF) || (cp >= 0x2C60 && cp <= 0x2C7F) || (cp >= 0xA720 && cp <= 0xA7FF) ||
        (cp >= 0xFF21 && cp <= 0xFF3A) || (cp >= 0xFF41 && cp <= 0xFF5A)) {
        return Script::latin;
    }
    if (cp >= 0x370 && cp <= 0x3FF && cp != 0x37E && cp != 0x387) return Script::greek;
    if (cp >= 0x400 && cp <= 0x52F) return Script::cyrillic;
    if (cp >= 0x531 && cp <= 0x587) return Script::armenian;
    if (cp >= 0x5D0 && cp <= 0x5EA) return Script::hebrew;
    if ((cp >= 0x620 && cp <= 0x64A) || (cp >= 0x671 && cp <= 0x6D3)) return Script::arabic;
    if (cp >= 0x900 && cp <= 0xDFF) return Script::indic;
    if (cp >= 0xE01 && cp <= 0xE3A) return Script::thai;
    if (cp >= 0x10A0 && cp <= 0x10FF) return Script::georgian;
    if ((cp >= 0x1100 && cp <= 0x11FF) || (cp >= 0x3040 && cp <= 0x309F) || (cp >= 0x30A0 && cp <= 0x30FF) ||
        (cp >= 0x3130 && cp <= 0x318F) || (cp >= 0x3400 && cp <= 0x4DBF) || (cp >= 0x4E00 && cp <= 0x9FFF) ||
        (cp >= 0xAC00 && cp <= 0xD7AF) || (cp >= 0xF900 && cp <= 0xFAFF) || (cp >= 0x20000 && cp <= 0x2FFFF)) {
        return Script::ideographic;
    }
    return Script::none;
}

// Returns the next code point, or U+FFFD (classified as none) for a bad sequence.
char32_t next_code_point(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
        ++i;
        return b0;
    } else if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + static_cast<std::size_t>(extra) >= s.size()) {
        i = s.size();
        return 0xFFFD;
    }
    for (int k = 1; k <= extra; ++k) {
        const auto b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += static_cast<std::size_t>(extra) + 1;
    return cp;
}

}  // namespace

double ScriptShare::non_latin_share() const {
    if (total() == 0) return 0.0;
    return static_cast<double>(other_units) / static_cast<double>(total());
}

ScriptShare script_share(std::string_view utf8) {
    ScriptShare share;
    Script run = Script::none;
    std::size_t i = 0;
    while (i < utf8.size()) {
        const Script script = classify(next_code_point(utf8, i));
        if (script == Script::combining) continue;  // marks extend whatever run they sit in
        if (script == Script::ideographic) {
            ++share.other_units;
            run = Script::none;
            continue;
        }
        if (script == Script::none) {
            run = Script::none;
            continue;
        }
        if (script != run) {
            if (script == Script::latin) {
                ++share.latin_units;
            } else {
                ++share.other_units;
            }
            run = script;
        }
    }
    return share;
}

bool language_changed(std::string_view original, std::string_view perturbed, double threshold) {
    return script_share(perturbed).non_latin_share() > threshold &&
           script_share(original).non_latin_share() <= threshold;
}

}  // namespace graphghost
