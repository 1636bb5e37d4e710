// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphghost/error.hpp"
#include "graphghost/trace.hpp"

namespace graphghost {

inline constexpr std::string_view kTraceSchemaVersion = "1";

enum class Severity { warning, error };

struct Diagnostic {
    std::size_t line = 0;  // 1-based; 0 when not tied to a line
    Severity severity = Severity::error;
    ErrorKind kind = ErrorKind::validation;
    std::string message;
};

std::string format_diagnostic(const Diagnostic& d);

/// strict: unknown fields are errors and the first invalid record fails the
/// whole stream. lenient: unknown fields are ignored and invalid records are
/// skipped with a warning.
enum class Strictness { strict, lenient };

struct ParseOptions {
    Strictness strictness = Strictness::strict;
};

struct ParseResult {
    std::vector<SampleTrace> traces;
    std::vector<Diagnostic> diagnostics;  // warnings, plus skipped-record notes in lenient mode
};

/// Result of checking one interchange line; collects every problem rather
/// than stopping at the first.
struct LineCheck {
    std::optional<SampleTrace> trace;  // set iff there are no error diagnostics
    std::vector<Diagnostic> diagnostics;
};

LineCheck check_trace_line(std::string_view line, std::size_t line_no, Strictness strictness);

/// Semantic checks on an in-memory trace (ids, positions, layer ordering...).
/// Diagnostics carry line 0.
std::vector<Diagnostic> validate_trace(const SampleTrace& trace);

/// Reads line-delimited trace records. In strict mode throws Error naming the
/// line and the violated field on the first invalid record.
ParseResult parse_trace_stream(std::istream& in, const ParseOptions& options = {});
ParseResult parse_trace_file(const std::string& path, const ParseOptions& options = {});

/// Canonical one-line encoding (no trailing newline): schema field order,
/// shortest round-trip floats, raw UTF-8.
std::string serialize_trace(const SampleTrace& trace);
void write_trace_stream(std::ostream& out, std::span<const SampleTrace> traces);

}  // namespace graphghost
