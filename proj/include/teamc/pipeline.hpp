// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/core.hpp"
#include "teamc/costmodel.hpp"
#include "teamc/expand.hpp"
#include "teamc/merge.hpp"
#include "teamc/similarity.hpp"

#include <cstdint>

namespace teamc {

/// Every knob of the two-stage compressor.
struct CompressionConfig {
    ExpandParams expand;
    double context_fraction = 0.25;
    MergeParams merge;
    Aggregation aggregation = Aggregation::Max;
    bool per_view_anchors = false;
    Index merge_layer = 16;
    Index total_layers = 32;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Half-open row range [begin, end) of visual tokens inside a hidden-state sequence.
struct RowRange {
    Index begin = 0;
    Index end = 0;

    Index size() const { return end - begin; }
};

struct PruneResult {
    TokenMatrix kept;
    IndexSet kept_idx;
    BinaryMask anchors;
    BinaryMask expanded;
    IndexSet context;
    Index pruned = 0;
};

struct MergeStageResult {
    TokenMatrix compressed;
    MergeReport report;
};

struct StageTimings {
    double prune_ms = 0.0;
    double merge_ms = 0.0;
};

struct PipelineReport {
    Index visual_tokens = 0;   ///< visual tokens before compression
    Index keep_size = 0;       ///< survivors of the pre-backbone stage
    Index pruned = 0;          ///< visual_tokens - keep_size
    Index merged = 0;          ///< targets folded away at merge_layer
    Index final_visual = 0;
    Index non_visual = 0;
    IndexSet kept_idx;         ///< original visual indices that entered the backbone
    IndexSet source_idx;       ///< original visual indices that survived merging
    std::vector<double> absorbed_weight;
    TokenSchedule schedule;
    StageTimings timings;
};

/// Anchors -> expansion -> context union; returns the surviving image rows in original order.
PruneResult prune_stage(const TokenMatrix& e_img, const TokenMatrix& e_lang, const PatchGrid& grid,
                        const CompressionConfig& config);

/// Replaces the visual rows of `hidden` by top_m merged source rows, leaving other rows untouched.
MergeStageResult merge_stage(const TokenMatrix& hidden, const TokenMatrix& guidance, RowRange visual,
                             const CompressionConfig& config);

/// Full two-stage run with an identity backbone between the reduction points.
/// The hidden sequence is laid out as [kept visual | language | guidance].
PipelineReport run_pipeline(const TokenMatrix& e_img, const TokenMatrix& e_lang, const TokenMatrix& guidance,
                            const PatchGrid& grid, const CompressionConfig& config);

}  // namespace teamc
