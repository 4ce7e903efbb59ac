// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/core.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace teamc {

/// Parses "VxHxW" (or "HxW" for one view).
PatchGrid parse_grid(std::string_view text);

/// Entry point of the `teamc` tool. `args` excludes the program name.
/// Subcommands: gen, prune, merge, pipeline, cost, viz, bench.
/// Returns 0 on success; on failure writes one diagnostic line to `err` and returns nonzero.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace teamc
