// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/config.hpp"

#include "teamc/io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <set>

namespace teamc {

using nlohmann::json;

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {"kernel_size", "tau",          "context_fraction", "top_m",
                                               "merge_mode",  "merge_layer",  "total_layers",     "seed",
                                               "aggregation", "per_view_anchors", "epsilon"};
    return keys;
}

template <typename T>
T get_as(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config key '") + key + "': " + e.what());
    }
}

std::uint64_t parse_seed(const std::string& text) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-')
        throw ParameterError(std::string(kSeedEnvVar) + " is not an unsigned integer: '" + text + "'");
    return v;
}

}  // namespace

std::string to_string(MergeMode mode) {
    return mode == MergeMode::Hard ? "hard" : "soft";
}

std::string to_string(Aggregation aggregation) {
    return aggregation == Aggregation::Mean ? "mean" : "max";
}

CompressionConfig goal_long_config() {
    CompressionConfig c;
    c.expand = {3, 1};
    c.context_fraction = 0.25;
    c.merge.m = 80;
    c.merge_layer = 16;
    c.total_layers = 32;
    return c;
}

CompressionConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParameterError("config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known_keys().contains(key))
            throw ParameterError("unknown config key '" + key + "'");

    CompressionConfig c = goal_long_config();
    if (j.contains("kernel_size"))
        c.expand.kernel_size = get_as<int>(j, "kernel_size");
    if (j.contains("tau"))
        c.expand.tau = get_as<int>(j, "tau");
    if (j.contains("context_fraction"))
        c.context_fraction = get_as<double>(j, "context_fraction");
    if (j.contains("top_m"))
        c.merge.m = get_as<Index>(j, "top_m");
    if (j.contains("merge_layer"))
        c.merge_layer = get_as<Index>(j, "merge_layer");
    if (j.contains("total_layers"))
        c.total_layers = get_as<Index>(j, "total_layers");
    if (j.contains("seed"))
        c.seed = get_as<std::uint64_t>(j, "seed");
    if (j.contains("epsilon"))
        c.merge.epsilon = get_as<double>(j, "epsilon");
    if (j.contains("per_view_anchors"))
        c.per_view_anchors = get_as<bool>(j, "per_view_anchors");
    if (j.contains("merge_mode")) {
        const auto mode = get_as<std::string>(j, "merge_mode");
        if (mode == "soft")
            c.merge.mode = MergeMode::Soft;
        else if (mode == "hard")
            c.merge.mode = MergeMode::Hard;
        else
            throw ParameterError("merge_mode must be 'soft' or 'hard', got '" + mode + "'");
    }
    if (j.contains("aggregation")) {
        const auto agg = get_as<std::string>(j, "aggregation");
        if (agg == "max")
            c.aggregation = Aggregation::Max;
        else if (agg == "mean")
            c.aggregation = Aggregation::Mean;
        else
            throw ParameterError("aggregation must be 'max' or 'mean', got '" + agg + "'");
    }
    c.validate();
    return c;
}

CompressionConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_file(path));
}

void apply_seed_override(CompressionConfig& config, const std::optional<std::string>& env_value) {
    if (env_value)
        config.seed = parse_seed(*env_value);
}

std::optional<std::string> seed_from_environment() {
    if (const char* v = std::getenv(kSeedEnvVar))
        return std::string(v);
    return std::nullopt;
}

std::string config_to_json(const CompressionConfig& c) {
    json j = {{"kernel_size", c.expand.kernel_size},
              {"tau", c.expand.tau},
              {"context_fraction", c.context_fraction},
              {"top_m", c.merge.m},
              {"merge_mode", to_string(c.merge.mode)},
              {"merge_layer", c.merge_layer},
              {"total_layers", c.total_layers},
              {"seed", c.seed},
              {"aggregation", to_string(c.aggregation)},
              {"per_view_anchors", c.per_view_anchors},
              {"epsilon", c.merge.epsilon}};
    return j.dump(2);
}

}  // namespace teamc
