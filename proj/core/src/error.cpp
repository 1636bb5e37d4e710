// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#include "graphghost/error.hpp"

namespace graphghost {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::validation: return "validation";
        case ErrorKind::unsupported_version: return "unsupported-version";
        case ErrorKind::config: return "config";
        case ErrorKind::plan: return "plan";
        case ErrorKind::capability: return "capability";
        case ErrorKind::transport: return "transport";
        case ErrorKind::format: return "format";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace graphghost
