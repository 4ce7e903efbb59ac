// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace teamc {

IndexSet context_indices(Index n_tokens, double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw ParameterError("context fraction must lie in [0, 1], got " + std::to_string(fraction));
    if (n_tokens < 0)
        throw ParameterError("context_indices: negative token count");
    // The nudge absorbs products like 0.35 * 180 = 62.999...
    const auto count = std::min<Index>(n_tokens, static_cast<Index>(std::floor(fraction * n_tokens + 1e-9)));
    std::vector<Index> out(static_cast<std::size_t>(count));
    for (Index t = 0; t < count; ++t)
        out[static_cast<std::size_t>(t)] = t * n_tokens / count;
    return IndexSet::from_sorted(std::move(out));
}

IndexSet keep_set(const BinaryMask& expanded, const IndexSet& context) {
    context.check_bound(expanded.grid().total(), "keep_set");
    return expanded.indices().unite(context);
}

}  // namespace teamc
