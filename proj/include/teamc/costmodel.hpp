// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/core.hpp"

#include <cstdint>
#include <vector>

namespace teamc {

using FlopCount = std::uint64_t;

/// Decoder backbone dimensions. Defaults describe a 7B-class model.
struct BackboneSpec {
    Index layers = 32;
    Index hidden = 4096;
    Index ffn = 11008;
    Index heads = 32;

    void validate() const;
};

/// Visual-token count entering each backbone layer, plus the fixed non-visual tokens.
struct TokenSchedule {
    std::vector<Index> visual;
    Index non_visual = 0;

    Index layers() const { return static_cast<Index>(visual.size()); }
    Index tokens_at(Index layer) const { return visual.at(static_cast<std::size_t>(layer)) + non_visual; }

    static TokenSchedule flat(Index layers, Index visual, Index non_visual);
    /// `before` visual tokens for layers [0, step_layer), `after` from step_layer on.
    static TokenSchedule step(Index layers, Index step_layer, Index before, Index after, Index non_visual);

    friend bool operator==(const TokenSchedule&, const TokenSchedule&) = default;
};

/// Per-layer flops split by term. A multiply-accumulate counts as 2 flops.
struct LayerFlops {
    FlopCount projections = 0;  ///< Q, K, V and output: 4 n×d×d GEMMs
    FlopCount attention = 0;    ///< QKᵀ and the weighted sum over V: 2 n×n×d GEMMs
    FlopCount feed_forward = 0; ///< up and down projections: 2 n×d×d_ff GEMMs

    FlopCount total() const { return projections + attention + feed_forward; }
};

/// 8·n·d² + 4·n²·d + 4·n·d·d_ff.
LayerFlops layer_flops_terms(Index n, const BackboneSpec& spec);
FlopCount layer_flops(Index n, const BackboneSpec& spec);

FlopCount schedule_flops(const TokenSchedule& schedule, const BackboneSpec& spec);

double relative_flops(const TokenSchedule& candidate, const TokenSchedule& baseline, const BackboneSpec& spec);

}  // namespace teamc
