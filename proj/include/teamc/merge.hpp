// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/core.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace teamc {

enum class MergeMode { Soft, Hard };

struct MergeParams {
    Index m = 80;                  ///< source-set size
    MergeMode mode = MergeMode::Soft;
    double epsilon = 1e-6;         ///< RMSNorm stabilizer
    Index hidden_dim = 0;          ///< d in the 1/sqrt(d) scaling; 0 means the embedding width
    double temperature = 1.0;      ///< Sim is divided by this before the softmax

    void validate() const;
};

inline void MergeParams::validate() const {
    if (m < 1)
        throw ParameterError("merge: m must be positive, got " + std::to_string(m));
    if (!(epsilon > 0.0))
        throw ParameterError("merge: epsilon must be positive");
    if (hidden_dim < 0)
        throw ParameterError("merge: hidden_dim must be non-negative");
    if (!(temperature > 0.0))
        throw ParameterError("merge: temperature must be positive");
}

struct MergeReport {
    IndexSet source_indices;
    std::vector<double> absorbed_weight;  ///< s_j, total matching weight per source
    Index tokens_before = 0;
    Index tokens_after = 0;
};

template <typename Scalar>
struct MergeResult {
    TokenMatrixX<Scalar> merged;
    MergeReport report;
};

/// y = x / sqrt(mean(x^2) + eps), no learned gain.
template <typename Derived>
VectorX<typename Derived::Scalar> rms_norm(const Eigen::MatrixBase<Derived>& x, double epsilon = 1e-6) {
    using Scalar = typename Derived::Scalar;
    if (x.size() == 0)
        return VectorX<Scalar>();
    const Scalar ms = x.squaredNorm() / static_cast<Scalar>(x.size());
    return x.reshaped() / std::sqrt(ms + static_cast<Scalar>(epsilon));
}

/// rms_norm applied to every row.
template <typename Derived>
TokenMatrixX<typename Derived::Scalar> rms_norm_rows(const Eigen::MatrixBase<Derived>& x, double epsilon = 1e-6) {
    using Scalar = typename Derived::Scalar;
    TokenMatrixX<Scalar> out(x.rows(), x.cols());
    if (x.cols() == 0)
        return out;
    const auto eps = static_cast<Scalar>(epsilon);
    const auto inv_d = Scalar(1) / static_cast<Scalar>(x.cols());
    for (Index i = 0; i < x.rows(); ++i)
        out.row(i) = x.row(i) / std::sqrt(x.row(i).squaredNorm() * inv_d + eps);
    return out;
}

/// Gathers `rows` of `x` in order.
template <typename Derived>
TokenMatrixX<typename Derived::Scalar> gather_rows(const Eigen::MatrixBase<Derived>& x, const IndexSet& rows) {
    rows.check_bound(x.rows(), "gather_rows");
    TokenMatrixX<typename Derived::Scalar> out(rows.size(), x.cols());
    for (Index i = 0; i < rows.size(); ++i)
        out.row(i) = x.row(rows[i]);
    return out;
}

/// Source rows (ascending) and the remaining target rows (ascending).
template <typename Derived>
std::pair<TokenMatrixX<typename Derived::Scalar>, TokenMatrixX<typename Derived::Scalar>>
split_source_target(const Eigen::MatrixBase<Derived>& tokens, const IndexSet& source) {
    source.check_bound(tokens.rows(), "split_source_target");
    return {gather_rows(tokens, source), gather_rows(tokens, source.complement(tokens.rows()))};
}

/// W ∈ R^{N_T×N_S}: each target's distribution over sources. Soft mode is the row softmax of
/// rmsnorm(T)·rmsnorm(S)ᵀ / (sqrt(d)·temperature); hard mode is one-hot on the row argmax
/// (lowest source index on ties).
template <typename DerivedS, typename DerivedT>
Eigen::Matrix<typename DerivedS::Scalar, Eigen::Dynamic, Eigen::Dynamic>
soft_matching_matrix(const Eigen::MatrixBase<DerivedS>& s, const Eigen::MatrixBase<DerivedT>& t,
                     const MergeParams& params) {
    using Scalar = typename DerivedS::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (s.cols() != t.cols())
        throw ShapeError("merge: source and target embedding dims differ (" + std::to_string(s.cols()) + " vs " +
                         std::to_string(t.cols()) + ")");
    if (s.rows() == 0)
        throw ParameterError("merge: source set is empty");

    const Index d = params.hidden_dim > 0 ? params.hidden_dim : s.cols();
    const auto scale = static_cast<Scalar>(1.0 / (std::sqrt(static_cast<double>(d)) * params.temperature));
    Matrix w = (rms_norm_rows(t, params.epsilon) * rms_norm_rows(s, params.epsilon).transpose()) * scale;

    for (Index i = 0; i < w.rows(); ++i) {
        Index best = 0;
        for (Index j = 1; j < w.cols(); ++j)
            if (w(i, j) > w(i, best))
                best = j;
        if (params.mode == MergeMode::Hard) {
            w.row(i).setZero();
            w(i, best) = Scalar(1);
        } else {
            w.row(i) = (w.row(i).array() - w(i, best)).exp().matrix();
            w.row(i) /= w.row(i).sum();
        }
    }
    return w;
}

/// Folds targets into sources: A = WᵀT, s = Wᵀ1, S'_j = (S_j + A_j) / (1 + s_j).
template <typename DerivedS, typename DerivedT>
MergeResult<typename DerivedS::Scalar> soft_bipartite_merge(const Eigen::MatrixBase<DerivedS>& s,
                                                            const Eigen::MatrixBase<DerivedT>& t,
                                                            const MergeParams& params) {
    using Scalar = typename DerivedS::Scalar;
    params.validate();
    const auto w = soft_matching_matrix(s, t, params);
    const TokenMatrixX<Scalar> aggregated = w.transpose() * t;
    const VectorX<Scalar> weight = w.colwise().sum().transpose();

    MergeResult<Scalar> result;
    result.merged = s;
    if (t.rows() > 0) {
        for (Index j = 0; j < s.rows(); ++j)
            result.merged.row(j) = (s.row(j) + aggregated.row(j)) / (Scalar(1) + weight(j));
    }
    result.report.absorbed_weight.assign(weight.data(), weight.data() + weight.size());
    result.report.tokens_before = s.rows() + t.rows();
    result.report.tokens_after = s.rows();
    return result;
}

}  // namespace teamc
