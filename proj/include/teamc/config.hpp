// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/pipeline.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace teamc {

/// Environment variable that, when set, replaces the configured seed.
inline constexpr const char* kSeedEnvVar = "TEAMC_SEED";

/// Parses a JSON config. Recognized keys: kernel_size, tau, context_fraction, top_m,
/// merge_mode ("soft"|"hard"), merge_layer, total_layers, seed, aggregation ("max"|"mean"),
/// per_view_anchors, epsilon. Missing keys keep their defaults; unknown keys are rejected.
/// Throws ParameterError on malformed input or an invalid resulting config.
CompressionConfig parse_config(std::string_view json_text);
CompressionConfig load_config(const std::filesystem::path& path);

/// Applies TEAMC_SEED when `env_value` holds a value.
void apply_seed_override(CompressionConfig& config, const std::optional<std::string>& env_value);
std::optional<std::string> seed_from_environment();

std::string config_to_json(const CompressionConfig& config);

/// u=0.25, m=80, k=3, tau=1, merge at layer 16 of 32.
CompressionConfig goal_long_config();

std::string to_string(MergeMode mode);
std::string to_string(Aggregation aggregation);

}  // namespace teamc
