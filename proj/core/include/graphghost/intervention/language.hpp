// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>

namespace graphghost {

inline constexpr double kLanguageShiftThreshold = 0.3;

/// Script make-up of a text. A run of letters from an alphabetic script
/// (Latin, Greek, Cyrillic, Arabic, ...) counts as one unit; every Han, kana
/// or Hangul character counts as one unit of its own, since each stands for
/// roughly a word.
struct ScriptShare {
    std::size_t latin_units = 0;
    std::size_t other_units = 0;

    std::size_t total() const { return latin_units + other_units; }
    /// 0 for texts without letters.
    double non_latin_share() const;
};

/// Decodes UTF-8 (invalid bytes are skipped) and classifies letters by script.
ScriptShare script_share(std::string_view utf8);

/// True when the perturbed answer's non-Latin share exceeds `threshold` while
/// the original's does not.
bool language_changed(std::string_view original, std::string_view perturbed,
                      double threshold = kLanguageShiftThreshold);

}  // namespace graphghost
