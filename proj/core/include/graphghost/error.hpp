// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphghost {

enum class ErrorKind {
    validation,           // malformed or invariant-violating input data
    unsupported_version,  // schema/format version we do not read
    config,               // bad flags, ratios, plans, campaign files
    plan,                 // intervention plan inconsistent with the runner
    capability,           // runner lacks an endpoint we need
    transport,            // network / HTTP failure talking to a runner or judge
    format,               // truncated or corrupt graph/report documents
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, bool retriable = false)
        : std::runtime_error(message), kind_(kind), retriable_(retriable) {}

    ErrorKind kind() const noexcept { return kind_; }
    bool retriable() const noexcept { return retriable_; }

private:
    ErrorKind kind_;
    bool retriable_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace graphghost
