// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace teamc {

using nlohmann::json;

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << v;
    return os.str();
}

std::string join_counts(const std::vector<Index>& counts) {
    std::string out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(counts[i]);
    }
    return out;
}

}  // namespace

std::string format_index_list(const IndexSet& set) {
    return join_counts(set.values());
}

std::string format_prune_report(const PruneResult& result, const PatchGrid& grid, double elapsed_ms,
                                bool with_timing) {
    std::ostringstream os;
    os << "stage=prune\n"
       << "grid=" << grid.views << "x" << grid.height << "x" << grid.width << "\n"
       << "visual_tokens=" << grid.total() << "\n"
       << "anchors=" << result.anchors.count() << "\n"
       << "expanded=" << result.expanded.count() << "\n"
       << "context=" << result.context.size() << "\n"
       << "keep_size=" << result.kept_idx.size() << "\n"
       << "pruned=" << result.pruned << "\n"
       << "kept_indices=" << format_index_list(result.kept_idx) << "\n";
    if (with_timing)
        os << "prune_ms=" << format_double(elapsed_ms) << "\n";
    return os.str();
}

std::string format_merge_report(const MergeReport& report, Index rows_in, Index rows_out, double elapsed_ms,
                                bool with_timing) {
    std::ostringstream os;
    os << "stage=merge\n"
       << "rows_in=" << rows_in << "\n"
       << "rows_out=" << rows_out << "\n"
       << "visual_before=" << report.tokens_before << "\n"
       << "visual_after=" << report.tokens_after << "\n"
       << "source_indices=" << format_index_list(report.source_indices) << "\n";
    const double total = std::accumulate(report.absorbed_weight.begin(), report.absorbed_weight.end(), 0.0);
    os << "absorbed_weight_total=" << format_double(total) << "\n";
    if (with_timing)
        os << "merge_ms=" << format_double(elapsed_ms) << "\n";
    return os.str();
}

std::string format_pipeline_report(const PipelineReport& r, bool with_timing) {
    std::ostringstream os;
    os << "stage=pipeline\n"
       << "visual_tokens=" << r.visual_tokens << "\n"
       << "keep_size=" << r.keep_size << "\n"
       << "pruned=" << r.pruned << "\n"
       << "merged=" << r.merged << "\n"
       << "final_visual=" << r.final_visual << "\n"
       << "non_visual=" << r.non_visual << "\n"
       << "schedule=" << join_counts(r.schedule.visual) << "\n"
       << "kept_indices=" << format_index_list(r.kept_idx) << "\n"
       << "source_indices=" << format_index_list(r.source_idx) << "\n";
    if (with_timing) {
        os << "prune_ms=" << format_double(r.timings.prune_ms) << "\n"
           << "merge_ms=" << format_double(r.timings.merge_ms) << "\n";
    }
    return os.str();
}

std::string pipeline_report_json(const PipelineReport& r, bool with_timing) {
    json j = {{"visual_tokens", r.visual_tokens},
              {"keep_size", r.keep_size},
              {"pruned", r.pruned},
              {"merged", r.merged},
              {"final_visual", r.final_visual},
              {"non_visual", r.non_visual},
              {"schedule", json::parse(schedule_to_json(r.schedule))},
              {"kept_indices", r.kept_idx.values()},
              {"source_indices", r.source_idx.values()}};
    if (with_timing)
        j["timings_ms"] = {{"prune", r.timings.prune_ms}, {"merge", r.timings.merge_ms}};
    return j.dump(2) + "\n";
}

std::string schedule_to_json(const TokenSchedule& schedule) {
    return json{{"non_visual", schedule.non_visual}, {"visual", schedule.visual}}.dump();
}

TokenSchedule parse_schedule(std::string_view json_text) {
    try {
        const json j = json::parse(json_text);
        TokenSchedule s;
        s.non_visual = j.at("non_visual").get<Index>();
        s.visual = j.at("visual").get<std::vector<Index>>();
        if (s.non_visual < 0 || std::any_of(s.visual.begin(), s.visual.end(), [](Index c) { return c < 0; }))
            throw ParameterError("schedule: token counts must be non-negative");
        return s;
    } catch (const json::exception& e) {
        throw ParameterError(std::string("schedule: ") + e.what());
    }
}

TimingStats summarize_timings(std::vector<double> samples) {
    TimingStats s;
    s.reps = static_cast<Index>(samples.size());
    if (samples.empty())
        return s;
    std::sort(samples.begin(), samples.end());
    auto rank = [&](double q) {
        const auto r = static_cast<std::size_t>(std::ceil(q * static_cast<double>(samples.size())));
        return samples[std::clamp<std::size_t>(r, 1, samples.size()) - 1];
    };
    s.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    s.p50_ms = rank(0.50);
    s.p95_ms = rank(0.95);
    s.min_ms = samples.front();
    s.max_ms = samples.back();
    return s;
}

std::string format_timing_stats(std::string_view stage, const TimingStats& s) {
    std::ostringstream os;
    os << "stage=" << stage << "\n"
       << "reps=" << s.reps << "\n"
       << "mean_ms=" << format_double(s.mean_ms) << "\n"
       << "p50_ms=" << format_double(s.p50_ms) << "\n"
       << "p95_ms=" << format_double(s.p95_ms) << "\n"
       << "min_ms=" << format_double(s.min_ms) << "\n"
       << "max_ms=" << format_double(s.max_ms) << "\n";
    return os.str();
}

}  // namespace teamc
