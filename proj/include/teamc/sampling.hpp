// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/core.hpp"

namespace teamc {

/// floor(u * n) indices spread at a uniform stride from 0: i_t = floor(t * n / count).
IndexSet context_indices(Index n_tokens, double fraction);

/// Tokens kept before the backbone: set cells of the expanded mask plus the context samples.
IndexSet keep_set(const BinaryMask& expanded, const IndexSet& context);

}  // namespace teamc
