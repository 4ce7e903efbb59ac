// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/core.hpp"

namespace teamc {

struct ExpandParams {
    int kernel_size = 3;  ///< odd neighborhood width k
    int tau = 1;          ///< density threshold

    void validate() const;
};

/// Number of set bits in the k×k window centred on each cell, zero padded, per view.
DensityMap density_map(const BinaryMask& mask, int kernel_size);

/// Union of the k×k windows around every cell with density > tau.
BinaryMask dense_region(const DensityMap& density, int tau);

/// Cells with 0 < density < tau, the ones that each trigger one random flip.
IndexSet sparse_cells(const DensityMap& density, int tau);

/// Grows a relevance mask from its own density map.
///
/// Cells with F > tau have their whole window switched on. Then, scanning cells in
/// view/row/column order, every cell with 0 < F < tau switches on one currently unset
/// cell of its window, drawn uniformly from `rng`; a window without unset cells consumes
/// no draw. Both rules read the density of the input mask. Cells with F == tau are inert.
BinaryMask expand_mask(const BinaryMask& mask, const ExpandParams& params, Rng& rng);

}  // namespace teamc
