// Copyright 2026 The GraphGhost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphghost/error.hpp"
#include "graphghost/intervention/campaign.hpp"
#include "graphghost/intervention/judge.hpp"
#include "graphghost/intervention/runner.hpp"

namespace graphghost::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 1,
    kConfig = 2,
    kTransport = 3,
    kStrictWarning = 4,
};

int exit_code_for(ErrorKind kind);

/// Seams for the perturb subcommand; defaults talk HTTP.
struct Hooks {
    std::function<std::unique_ptr<RunnerClient>(const std::string& url)> make_runner;
    std::function<std::unique_ptr<JudgeClient>(const std::optional<std::string>& url)> make_judge;
    EnvLookup env;
};

Hooks default_hooks();

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks = default_hooks());

}  // namespace graphghost::cli
