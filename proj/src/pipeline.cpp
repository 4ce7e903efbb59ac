// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/pipeline.hpp"

#include "teamc/sampling.hpp"

#include <chrono>

namespace teamc {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

void CompressionConfig::validate() const {
    expand.validate();
    merge.validate();
    if (!(context_fraction >= 0.0 && context_fraction <= 1.0))
        throw ParameterError("context_fraction must lie in [0, 1]");
    if (total_layers < 1)
        throw ParameterError("total_layers must be positive");
    if (merge_layer < 0 || merge_layer >= total_layers)
        throw ParameterError("merge_layer " + std::to_string(merge_layer) + " outside [0, " +
                             std::to_string(total_layers) + ")");
}

PruneResult prune_stage(const TokenMatrix& e_img, const TokenMatrix& e_lang, const PatchGrid& grid,
                        const CompressionConfig& config) {
    config.validate();
    require_tokens(e_img, "prune_stage: image tokens");
    require_tokens(e_lang, "prune_stage: language tokens");

    PruneResult out;
    out.anchors = anchor_mask(e_lang, e_img, grid, config.per_view_anchors);
    Rng rng(config.seed);
    out.expanded = expand_mask(out.anchors, config.expand, rng);
    out.context = context_indices(grid.total(), config.context_fraction);
    out.kept_idx = keep_set(out.expanded, out.context);
    out.kept = gather_rows(e_img, out.kept_idx);
    out.pruned = grid.total() - out.kept_idx.size();
    return out;
}

MergeStageResult merge_stage(const TokenMatrix& hidden, const TokenMatrix& guidance, RowRange visual,
                             const CompressionConfig& config) {
    config.validate();
    require_tokens(hidden, "merge_stage: hidden states");
    require_tokens(guidance, "merge_stage: guidance tokens");
    if (visual.begin < 0 || visual.end < visual.begin || visual.end > hidden.rows())
        throw RangeError("merge_stage: visual range [" + std::to_string(visual.begin) + ", " +
                         std::to_string(visual.end) + ") outside " + std::to_string(hidden.rows()) + " rows");
    const Index m = config.merge.m;
    if (m > visual.size())
        throw ParameterError("merge_stage: top_m " + std::to_string(m) + " exceeds " + std::to_string(visual.size()) +
                             " visual tokens");

    const auto visual_rows = hidden.middleRows(visual.begin, visual.size());
    const IndexSet source = select_sources(visual_rows, guidance, m, config.aggregation);
    const auto [s, t] = split_source_target(visual_rows, source);
    MergeResult<float> merged = soft_bipartite_merge(s, t, config.merge);

    MergeStageResult out;
    out.compressed.resize(hidden.rows() - (visual.size() - m), hidden.cols());
    out.compressed.topRows(visual.begin) = hidden.topRows(visual.begin);
    out.compressed.middleRows(visual.begin, m) = merged.merged;
    out.compressed.bottomRows(hidden.rows() - visual.end) = hidden.bottomRows(hidden.rows() - visual.end);
    out.report = std::move(merged.report);
    out.report.source_indices = source;
    return out;
}

PipelineReport run_pipeline(const TokenMatrix& e_img, const TokenMatrix& e_lang, const TokenMatrix& guidance,
                            const PatchGrid& grid, const CompressionConfig& config) {
    if (e_lang.cols() != e_img.cols() || guidance.cols() != e_img.cols())
        throw ShapeError("run_pipeline: image, language and guidance embedding dims differ");

    PipelineReport report;
    auto start = Clock::now();
    PruneResult pruned = prune_stage(e_img, e_lang, grid, config);
    report.timings.prune_ms = elapsed_ms(start);

    const Index kept = pruned.kept_idx.size();
    TokenMatrix hidden(kept + e_lang.rows() + guidance.rows(), e_img.cols());
    hidden << pruned.kept, e_lang, guidance;

    start = Clock::now();
    MergeStageResult merged = merge_stage(hidden, guidance, {0, kept}, config);
    report.timings.merge_ms = elapsed_ms(start);

    report.visual_tokens = grid.total();
    report.keep_size = kept;
    report.pruned = pruned.pruned;
    report.final_visual = config.merge.m;
    report.merged = kept - config.merge.m;
    report.non_visual = e_lang.rows() + guidance.rows();
    report.kept_idx = pruned.kept_idx;
    std::vector<Index> sources;
    sources.reserve(static_cast<std::size_t>(merged.report.source_indices.size()));
    for (Index local : merged.report.source_indices)
        sources.push_back(pruned.kept_idx[local]);
    report.source_idx = IndexSet::from_sorted(std::move(sources));
    report.absorbed_weight = std::move(merged.report.absorbed_weight);
    report.schedule = TokenSchedule::step(config.total_layers, config.merge_layer, kept, config.merge.m,
                                          report.non_visual);
    return report;
}

}  // namespace teamc
