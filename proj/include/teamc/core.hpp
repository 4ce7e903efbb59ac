// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamc {

using Index = Eigen::Index;

/// Token embeddings, one token per row. Row-major so a token is a contiguous span.
template <typename Scalar>
using TokenMatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using TokenMatrix = TokenMatrixX<float>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& m, const char* what) {
    if (!m.allFinite())
        throw ParameterError(std::string(what) + ": non-finite value in token matrix");
}

template <typename Derived>
void require_tokens(const Eigen::DenseBase<Derived>& m, const char* what) {
    if (m.cols() < 1)
        throw ShapeError(std::string(what) + ": token matrix needs at least one column");
    require_finite(m, what);
}

/// Spatial layout of visual tokens: `views` stacked p×p (height×width) patch grids,
/// flattened view-major then row-major.
struct PatchGrid {
    Index views = 1;
    Index height = 0;
    Index width = 0;

    PatchGrid() = default;
    PatchGrid(Index views, Index height, Index width);

    Index cells_per_view() const { return height * width; }
    Index total() const { return views * height * width; }

    friend bool operator==(const PatchGrid&, const PatchGrid&) = default;
};

struct GridCoord {
    Index view = 0;
    Index row = 0;
    Index col = 0;

    friend bool operator==(const GridCoord&, const GridCoord&) = default;
};

Index flatten_index(const PatchGrid& grid, Index view, Index row, Index col);
GridCoord unflatten_index(const PatchGrid& grid, Index idx);

/// Sorted, unique token indices.
class IndexSet {
public:
    IndexSet() = default;

    /// Sorts and deduplicates.
    static IndexSet from_unsorted(std::vector<Index> indices);
    /// Throws RangeError unless strictly increasing and non-negative.
    static IndexSet from_sorted(std::vector<Index> indices);
    static IndexSet iota(Index n);

    Index size() const { return static_cast<Index>(indices_.size()); }
    bool empty() const { return indices_.empty(); }
    Index operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }
    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }
    const std::vector<Index>& values() const { return indices_; }

    bool contains(Index idx) const;
    /// Throws RangeError if any index is >= bound.
    void check_bound(Index bound, const char* what) const;

    IndexSet unite(const IndexSet& other) const;
    IndexSet complement(Index n) const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::vector<Index> indices_;
};

/// One relevance bit per grid cell, stacked per view.
class BinaryMask {
public:
    BinaryMask() = default;
    explicit BinaryMask(const PatchGrid& grid);

    const PatchGrid& grid() const { return grid_; }

    bool test(Index idx) const { return bits_[static_cast<std::size_t>(idx)] != 0; }
    bool test(Index view, Index row, Index col) const { return test(flatten_index(grid_, view, row, col)); }
    void set(Index idx, bool value = true) { bits_[static_cast<std::size_t>(idx)] = value ? 1 : 0; }
    void set(Index view, Index row, Index col, bool value = true) { set(flatten_index(grid_, view, row, col), value); }

    Index count() const;
    IndexSet indices() const;

    BinaryMask view(Index v) const;
    static BinaryMask stack(const std::vector<BinaryMask>& views);

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    PatchGrid grid_;
    std::vector<std::uint8_t> bits_;
};

/// Per-cell count of set mask bits inside a k×k neighborhood.
class DensityMap {
public:
    DensityMap() = default;
    DensityMap(const PatchGrid& grid, int kernel_size);

    const PatchGrid& grid() const { return grid_; }
    int kernel_size() const { return kernel_size_; }

    int at(Index idx) const { return counts_[static_cast<std::size_t>(idx)]; }
    int at(Index view, Index row, Index col) const { return at(flatten_index(grid_, view, row, col)); }
    int& at(Index idx) { return counts_[static_cast<std::size_t>(idx)]; }

    const std::vector<int>& counts() const { return counts_; }

private:
    PatchGrid grid_;
    int kernel_size_ = 1;
    std::vector<int> counts_;
};

/// Counter-based generator: draw n is SplitMix64's finalizer applied to
/// seed + (n + 1) * 0x9E3779B97F4A7C15. Bounded draws use the 128-bit
/// multiply-high reduction, so the stream is identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64();
    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound);
    /// Uniform in [0, 1) with 53 random bits.
    double uniform_real();
    /// Standard normal (Box-Muller, two draws per call).
    double normal();

    static std::uint64_t mix(std::uint64_t z);

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace teamc
