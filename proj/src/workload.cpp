// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/workload.hpp"

#include <algorithm>
#include <cmath>

namespace teamc {

namespace {

// Language tokens are f + kLangSpread·g, foreground patches f + kFgSpread·h, background
// -γf + r, with g, h, r unit vectors orthogonal to the foreground direction f.
constexpr double kLangSpread = 0.3;
constexpr double kFgSpread = 0.2;

Eigen::VectorXd random_unit(Rng& rng, Index dim) {
    Eigen::VectorXd v(dim);
    do {
        for (Index i = 0; i < dim; ++i)
            v(i) = rng.normal();
    } while (v.norm() < 1e-6);
    return v.normalized();
}

Eigen::VectorXd random_orthogonal_unit(Rng& rng, const Eigen::VectorXd& f) {
    Eigen::VectorXd v;
    do {
        v = random_unit(rng, f.size());
        v -= v.dot(f) * f;
    } while (v.norm() < 1e-3);
    return v.normalized();
}

// Smallest cosine any foreground patch (anchors included) can have with a language token.
double foreground_floor() {
    const double a = kLangSpread;
    const double b = kFgSpread;
    const double anchor_pair = (1.0 - a * a) / (1.0 + a * a);
    const double patch = (1.0 - a * b) / (std::sqrt(1.0 + a * a) * std::sqrt(1.0 + b * b));
    return std::min(anchor_pair, patch);
}

// Largest cosine a background patch -γf + r can have with a language token.
double background_ceiling(double gamma) {
    const double a = kLangSpread;
    return (a - gamma) / (std::sqrt(1.0 + a * a) * std::sqrt(1.0 + gamma * gamma));
}

double background_pull(double margin) {
    // Slack for rounding the embeddings to float.
    const double target = foreground_floor() - margin - 1e-4;
    if (background_ceiling(1e6) > target)
        throw ParameterError("generate_workload: margin " + std::to_string(margin) + " is not attainable");
    double lo = 0.0;
    double hi = 1e6;
    if (background_ceiling(lo) <= target)
        return lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (background_ceiling(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

void set_row(TokenMatrix& m, Index row, const Eigen::VectorXd& v) {
    m.row(row) = v.transpose().cast<float>();
}

}  // namespace

void WorkloadSpec::validate() const {
    if (grid.total() < 1)
        throw ParameterError("workload: empty grid");
    if (blocks < 0)
        throw ParameterError("workload: negative block count");
    if (block_min < 1 || block_max < block_min)
        throw ParameterError("workload: block size range must satisfy 1 <= min <= max");
    if (blocks > 0 && block_max > std::min(grid.height, grid.width))
        throw ParameterError("workload: blocks of size " + std::to_string(block_max) + " do not fit the grid");
    if (dim < 2)
        throw ParameterError("workload: embedding dim must be >= 2");
    if (!(margin > 0.0))
        throw ParameterError("workload: margin must be positive");
    if (!(anchor_fraction >= 0.0 && anchor_fraction <= 1.0))
        throw ParameterError("workload: anchor_fraction must lie in [0, 1]");
    if (guide_tokens < 1)
        throw ParameterError("workload: need at least one guide token");
}

Workload generate_workload(const WorkloadSpec& spec) {
    spec.validate();
    const double gamma = background_pull(spec.margin);
    Rng rng(spec.seed);
    const PatchGrid& g = spec.grid;

    Workload w;
    w.grid = g;
    w.truth = BinaryMask(g);
    w.anchors = BinaryMask(g);

    std::vector<Index> cells;
    for (Index b = 0; b < spec.blocks; ++b) {
        const auto span = static_cast<std::uint64_t>(spec.block_max - spec.block_min + 1);
        const Index size = spec.block_min + static_cast<Index>(rng.uniform_index(span));
        const Index view = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(g.views)));
        const Index top = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(g.height - size + 1)));
        const Index left = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(g.width - size + 1)));
        cells.clear();
        for (Index r = top; r < top + size; ++r)
            for (Index c = left; c < left + size; ++c) {
                w.truth.set(view, r, c);
                cells.push_back(flatten_index(g, view, r, c));
            }
        // Partial Fisher-Yates picks the anchor cells.
        const auto n_anchor = std::max<Index>(
            1, static_cast<Index>(std::floor(spec.anchor_fraction * static_cast<double>(cells.size()) + 1e-9)));
        for (Index i = 0; i < n_anchor; ++i) {
            const auto j = i + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(cells.size()) - i));
            std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(j)]);
            w.anchors.set(cells[static_cast<std::size_t>(i)]);
        }
    }

    const Eigen::VectorXd f = random_unit(rng, spec.dim);
    const IndexSet anchor_cells = w.anchors.indices();
    w.e_lang.resize(std::max<Index>(1, anchor_cells.size()), spec.dim);
    for (Index l = 0; l < w.e_lang.rows(); ++l)
        set_row(w.e_lang, l, (f + kLangSpread * random_orthogonal_unit(rng, f)).normalized());

    w.e_img.resize(g.total(), spec.dim);
    Index next_anchor = 0;
    for (Index i = 0; i < g.total(); ++i) {
        // Magnitudes vary so that raw dot products and cosines disagree.
        const auto scale = static_cast<float>(0.5 + 1.5 * rng.uniform_real());
        if (w.anchors.test(i)) {
            w.e_img.row(i) = w.e_lang.row(next_anchor++) * scale;
            continue;
        }
        const Eigen::VectorXd v = w.truth.test(i) ? Eigen::VectorXd(f + kFgSpread * random_orthogonal_unit(rng, f))
                                                  : Eigen::VectorXd(-gamma * f + random_orthogonal_unit(rng, f));
        set_row(w.e_img, i, v.normalized() * scale);
    }

    w.guidance.resize(spec.guide_tokens, spec.dim);
    for (Index i = 0; i < spec.guide_tokens; ++i)
        set_row(w.guidance, i, (f + kLangSpread * random_orthogonal_unit(rng, f)).normalized());
    return w;
}

}  // namespace teamc
