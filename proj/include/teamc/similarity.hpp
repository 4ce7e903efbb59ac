// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/core.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace teamc {

/// How per-guide cosine scores are folded into one relevance score per image token.
enum class Aggregation { Max, Mean };

/// Rows scaled to unit L2 norm; zero-norm rows stay zero.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
normalize_rows(const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out = x;
    for (Index i = 0; i < out.rows(); ++i) {
        const Scalar norm = out.row(i).norm();
        if (norm > Scalar(0))
            out.row(i) /= norm;
        else
            out.row(i).setZero();
    }
    return out;
}

/// Entry (i, j) is cos(a_i, b_j). Zero-norm rows give zero similarity.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
cosine_similarity_matrix(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.cols() != b.cols())
        throw ShapeError("cosine_similarity_matrix: embedding dims differ (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.cols()) + ")");
    if (a.rows() == 0 || b.rows() == 0)
        throw ShapeError("cosine_similarity_matrix: empty input");
    return normalize_rows(a) * normalize_rows(b).transpose();
}

/// Index of the largest entry; ties go to the lowest index.
template <typename Derived>
Index argmax_lowest(const Eigen::DenseBase<Derived>& v) {
    Index best = 0;
    for (Index i = 1; i < v.size(); ++i)
        if (v(i) > v(best))
            best = i;
    return best;
}

/// Marks, for every language token, the image token it is most cosine-similar to.
/// With `per_view` set, each language token marks its best token within every view.
template <typename DerivedL, typename DerivedI>
BinaryMask anchor_mask(const Eigen::MatrixBase<DerivedL>& e_lang, const Eigen::MatrixBase<DerivedI>& e_img,
                       const PatchGrid& grid, bool per_view = false) {
    if (e_img.rows() != grid.total())
        throw ShapeError("anchor_mask: " + std::to_string(e_img.rows()) + " image tokens for a grid of " +
                         std::to_string(grid.total()));
    if (e_lang.rows() < 1)
        throw ShapeError("anchor_mask: no language tokens");
    // Decisions are taken in double so that rescaling a row cannot flip an argmax by rounding.
    const Eigen::MatrixXd sim =
        cosine_similarity_matrix(e_lang.template cast<double>(), e_img.template cast<double>());
    BinaryMask mask(grid);
    const Index per = grid.cells_per_view();
    for (Index l = 0; l < sim.rows(); ++l) {
        if (per_view) {
            for (Index v = 0; v < grid.views; ++v)
                mask.set(v * per + argmax_lowest(sim.row(l).segment(v * per, per)));
        } else {
            mask.set(argmax_lowest(sim.row(l)));
        }
    }
    return mask;
}

/// Relevance of every image token to a set of guide tokens: max (or mean) cosine over guides.
template <typename DerivedI, typename DerivedG>
VectorX<typename DerivedI::Scalar> relevance_scores(const Eigen::MatrixBase<DerivedI>& e_img,
                                                    const Eigen::MatrixBase<DerivedG>& guides,
                                                    Aggregation aggregation = Aggregation::Max) {
    if (guides.rows() < 1)
        throw ShapeError("relevance_scores: no guide tokens");
    if (e_img.rows() == 0)
        return {};
    const auto sim = cosine_similarity_matrix(e_img, guides);
    if (aggregation == Aggregation::Mean)
        return sim.rowwise().mean();
    return sim.rowwise().maxCoeff();
}

/// Indices of the m largest scores, returned ascending. Equal scores prefer the lower index.
template <typename Derived>
IndexSet top_m(const Eigen::DenseBase<Derived>& scores, Index m) {
    const Index n = scores.size();
    if (m < 0 || m > n)
        throw RangeError("top_m: m=" + std::to_string(m) + " outside [0, " + std::to_string(n) + "]");
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return scores(a) > scores(b); });
    order.resize(static_cast<std::size_t>(m));
    return IndexSet::from_unsorted(std::move(order));
}

/// Top-m image tokens by guide relevance, ranked in double precision.
template <typename DerivedI, typename DerivedG>
IndexSet select_sources(const Eigen::MatrixBase<DerivedI>& e_img, const Eigen::MatrixBase<DerivedG>& guides, Index m,
                        Aggregation aggregation = Aggregation::Max) {
    const Eigen::VectorXd scores =
        relevance_scores(e_img.template cast<double>(), guides.template cast<double>(), aggregation);
    return top_m(scores, m);
}

}  // namespace teamc
