// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/core.hpp"

#include <algorithm>
#include <numbers>

namespace teamc {

PatchGrid::PatchGrid(Index views_, Index height_, Index width_) : views(views_), height(height_), width(width_) {
    if (views < 1 || height < 1 || width < 1)
        throw ParameterError("PatchGrid: views, height and width must all be >= 1");
}

Index flatten_index(const PatchGrid& grid, Index view, Index row, Index col) {
    if (view < 0 || view >= grid.views)
        throw RangeError("flatten_index: view " + std::to_string(view) + " out of range");
    if (row < 0 || row >= grid.height)
        throw RangeError("flatten_index: row " + std::to_string(row) + " out of range");
    if (col < 0 || col >= grid.width)
        throw RangeError("flatten_index: col " + std::to_string(col) + " out of range");
    return view * grid.cells_per_view() + row * grid.width + col;
}

GridCoord unflatten_index(const PatchGrid& grid, Index idx) {
    if (idx < 0 || idx >= grid.total())
        throw RangeError("unflatten_index: index " + std::to_string(idx) + " out of range");
    const Index per_view = grid.cells_per_view();
    const Index in_view = idx % per_view;
    return {idx / per_view, in_view / grid.width, in_view % grid.width};
}

IndexSet IndexSet::from_unsorted(std::vector<Index> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (!indices.empty() && indices.front() < 0)
        throw RangeError("IndexSet: negative index");
    IndexSet out;
    out.indices_ = std::move(indices);
    return out;
}

IndexSet IndexSet::from_sorted(std::vector<Index> indices) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0 || (i > 0 && indices[i] <= indices[i - 1]))
            throw RangeError("IndexSet: indices must be non-negative and strictly increasing");
    }
    IndexSet out;
    out.indices_ = std::move(indices);
    return out;
}

IndexSet IndexSet::iota(Index n) {
    IndexSet out;
    out.indices_.resize(static_cast<std::size_t>(std::max<Index>(n, 0)));
    for (std::size_t i = 0; i < out.indices_.size(); ++i)
        out.indices_[i] = static_cast<Index>(i);
    return out;
}

bool IndexSet::contains(Index idx) const {
    return std::binary_search(indices_.begin(), indices_.end(), idx);
}

void IndexSet::check_bound(Index bound, const char* what) const {
    if (!indices_.empty() && indices_.back() >= bound)
        throw RangeError(std::string(what) + ": index " + std::to_string(indices_.back()) +
                         " out of range for " + std::to_string(bound) + " tokens");
}

IndexSet IndexSet::unite(const IndexSet& other) const {
    IndexSet out;
    out.indices_.reserve(indices_.size() + other.indices_.size());
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                   std::back_inserter(out.indices_));
    return out;
}

IndexSet IndexSet::complement(Index n) const {
    IndexSet out;
    auto it = indices_.begin();
    for (Index i = 0; i < n; ++i) {
        while (it != indices_.end() && *it < i)
            ++it;
        if (it == indices_.end() || *it != i)
            out.indices_.push_back(i);
    }
    return out;
}

BinaryMask::BinaryMask(const PatchGrid& grid) : grid_(grid), bits_(static_cast<std::size_t>(grid.total()), 0) {}

Index BinaryMask::count() const {
    return static_cast<Index>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

IndexSet BinaryMask::indices() const {
    std::vector<Index> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i])
            out.push_back(static_cast<Index>(i));
    return IndexSet::from_sorted(std::move(out));
}

BinaryMask BinaryMask::view(Index v) const {
    if (v < 0 || v >= grid_.views)
        throw RangeError("BinaryMask::view: view " + std::to_string(v) + " out of range");
    BinaryMask out(PatchGrid(1, grid_.height, grid_.width));
    const auto per_view = static_cast<std::ptrdiff_t>(grid_.cells_per_view());
    std::copy_n(bits_.begin() + v * per_view, per_view, out.bits_.begin());
    return out;
}

BinaryMask BinaryMask::stack(const std::vector<BinaryMask>& views) {
    if (views.empty())
        throw ParameterError("BinaryMask::stack: no views");
    const PatchGrid& g = views.front().grid();
    Index total_views = 0;
    for (const auto& v : views)
        total_views += v.grid().views;
    BinaryMask out(PatchGrid(total_views, g.height, g.width));
    auto dst = out.bits_.begin();
    for (const auto& v : views) {
        if (v.grid().height != g.height || v.grid().width != g.width)
            throw ShapeError("BinaryMask::stack: view shapes differ");
        dst = std::copy(v.bits_.begin(), v.bits_.end(), dst);
    }
    return out;
}

DensityMap::DensityMap(const PatchGrid& grid, int kernel_size)
    : grid_(grid), kernel_size_(kernel_size), counts_(static_cast<std::size_t>(grid.total()), 0) {}

std::uint64_t Rng::mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() {
    ++counter_;
    return mix(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
    if (bound == 0)
        throw ParameterError("Rng::uniform_index: bound must be positive");
    const unsigned __int128 product = static_cast<unsigned __int128>(next_u64()) * bound;
    return static_cast<std::uint64_t>(product >> 64);
}

double Rng::uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform_real();
    const double u2 = uniform_real();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace teamc
