// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/costmodel.hpp"
#include "teamc/pipeline.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace teamc {

// Reports are line-oriented `key=value` text. Index lists are comma separated.
// Timing lines are omitted when `with_timing` is false so reports can be diffed byte for byte.

std::string format_index_list(const IndexSet& set);

std::string format_prune_report(const PruneResult& result, const PatchGrid& grid, double elapsed_ms,
                                bool with_timing);
std::string format_merge_report(const MergeReport& report, Index rows_in, Index rows_out, double elapsed_ms,
                                bool with_timing);
std::string format_pipeline_report(const PipelineReport& report, bool with_timing);
std::string pipeline_report_json(const PipelineReport& report, bool with_timing);

/// {"non_visual": n, "visual": [c0, c1, ...]}
std::string schedule_to_json(const TokenSchedule& schedule);
TokenSchedule parse_schedule(std::string_view json_text);

struct TimingStats {
    Index reps = 0;
    double mean_ms = 0.0;
    double p50_ms = 0.0;
    double p95_ms = 0.0;
    double min_ms = 0.0;
    double max_ms = 0.0;
};

/// Nearest-rank percentiles over the samples.
TimingStats summarize_timings(std::vector<double> samples_ms);
std::string format_timing_stats(std::string_view stage, const TimingStats& stats);

}  // namespace teamc
