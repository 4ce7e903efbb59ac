// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/expand.hpp"

#include <algorithm>

namespace teamc {

namespace {

void check_kernel(int k) {
    if (k < 1 || k % 2 == 0)
        throw ParameterError("kernel size must be a positive odd integer, got " + std::to_string(k));
}

struct Window {
    Index r0, r1, c0, c1;  // inclusive bounds, clipped to the grid
};

Window window_at(const PatchGrid& g, Index row, Index col, int k) {
    const Index h = k / 2;
    return {std::max<Index>(row - h, 0), std::min<Index>(row + h, g.height - 1), std::max<Index>(col - h, 0),
            std::min<Index>(col + h, g.width - 1)};
}

}  // namespace

void ExpandParams::validate() const {
    check_kernel(kernel_size);
    if (tau < 0)
        throw ParameterError("tau must be non-negative, got " + std::to_string(tau));
}

DensityMap density_map(const BinaryMask& mask, int kernel_size) {
    check_kernel(kernel_size);
    const PatchGrid& g = mask.grid();
    if (g.total() == 0)
        throw ParameterError("density_map: empty grid");
    DensityMap out(g, kernel_size);

    // Summed-area table per view, (height+1)×(width+1).
    const Index W1 = g.width + 1;
    std::vector<int> sat(static_cast<std::size_t>((g.height + 1) * W1));
    for (Index v = 0; v < g.views; ++v) {
        std::fill(sat.begin(), sat.end(), 0);
        const Index base = v * g.cells_per_view();
        for (Index r = 0; r < g.height; ++r) {
            int row_sum = 0;
            for (Index c = 0; c < g.width; ++c) {
                row_sum += mask.test(base + r * g.width + c) ? 1 : 0;
                sat[static_cast<std::size_t>((r + 1) * W1 + c + 1)] =
                    sat[static_cast<std::size_t>(r * W1 + c + 1)] + row_sum;
            }
        }
        auto at = [&](Index r, Index c) { return sat[static_cast<std::size_t>(r * W1 + c)]; };
        for (Index r = 0; r < g.height; ++r) {
            for (Index c = 0; c < g.width; ++c) {
                const Window w = window_at(g, r, c, kernel_size);
                out.at(base + r * g.width + c) =
                    at(w.r1 + 1, w.c1 + 1) - at(w.r0, w.c1 + 1) - at(w.r1 + 1, w.c0) + at(w.r0, w.c0);
            }
        }
    }
    return out;
}

BinaryMask dense_region(const DensityMap& density, int tau) {
    const PatchGrid& g = density.grid();
    BinaryMask out(g);
    for (Index v = 0; v < g.views; ++v) {
        const Index base = v * g.cells_per_view();
        for (Index r = 0; r < g.height; ++r) {
            for (Index c = 0; c < g.width; ++c) {
                if (density.at(base + r * g.width + c) <= tau)
                    continue;
                const Window w = window_at(g, r, c, density.kernel_size());
                for (Index rr = w.r0; rr <= w.r1; ++rr)
                    for (Index cc = w.c0; cc <= w.c1; ++cc)
                        out.set(base + rr * g.width + cc);
            }
        }
    }
    return out;
}

IndexSet sparse_cells(const DensityMap& density, int tau) {
    std::vector<Index> cells;
    const auto& counts = density.counts();
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] > 0 && counts[i] < tau)
            cells.push_back(static_cast<Index>(i));
    return IndexSet::from_sorted(std::move(cells));
}

BinaryMask expand_mask(const BinaryMask& mask, const ExpandParams& params, Rng& rng) {
    params.validate();
    const PatchGrid& g = mask.grid();
    const DensityMap density = density_map(mask, params.kernel_size);

    BinaryMask out = dense_region(density, params.tau);
    for (Index i = 0; i < g.total(); ++i)
        if (mask.test(i))
            out.set(i);

    std::vector<Index> candidates;
    candidates.reserve(static_cast<std::size_t>(params.kernel_size) * static_cast<std::size_t>(params.kernel_size));
    for (Index cell : sparse_cells(density, params.tau)) {
        const GridCoord at = unflatten_index(g, cell);
        const Index base = at.view * g.cells_per_view();
        const Window w = window_at(g, at.row, at.col, params.kernel_size);
        candidates.clear();
        for (Index rr = w.r0; rr <= w.r1; ++rr)
            for (Index cc = w.c0; cc <= w.c1; ++cc)
                if (!out.test(base + rr * g.width + cc))
                    candidates.push_back(base + rr * g.width + cc);
        if (candidates.empty())
            continue;
        out.set(candidates[static_cast<std::size_t>(rng.uniform_index(candidates.size()))]);
    }
    return out;
}

}  // namespace teamc
