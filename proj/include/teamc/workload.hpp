// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/core.hpp"

#include <cstdint>

namespace teamc {

/// Synthetic scene: square foreground blocks planted on a multi-view patch grid.
struct WorkloadSpec {
    PatchGrid grid{2, 16, 16};
    Index blocks = 1;
    Index block_min = 5;
    Index block_max = 5;
    Index dim = 64;
    double margin = 0.5;           ///< guaranteed cosine gap between foreground and background
    double anchor_fraction = 0.3;  ///< share of each block's cells that become language anchors
    Index guide_tokens = 4;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Workload {
    PatchGrid grid;
    TokenMatrix e_img;
    TokenMatrix e_lang;     ///< one token per planted anchor (one token when no blocks)
    TokenMatrix guidance;
    BinaryMask truth;       ///< planted block cells
    BinaryMask anchors;     ///< cells whose embedding equals a language token
};

/// Every foreground patch is at least `margin` more cosine-similar to every language token
/// than any background patch. Fully determined by `spec.seed`.
Workload generate_workload(const WorkloadSpec& spec);

}  // namespace teamc
