// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/costmodel.hpp"

#include <algorithm>

namespace teamc {

void BackboneSpec::validate() const {
    if (layers < 1 || hidden < 1 || ffn < 1 || heads < 1)
        throw ParameterError("BackboneSpec: all dimensions must be positive");
    if (hidden % heads != 0)
        throw ParameterError("BackboneSpec: hidden dim " + std::to_string(hidden) + " not divisible by " +
                             std::to_string(heads) + " heads");
}

TokenSchedule TokenSchedule::flat(Index layers, Index visual, Index non_visual) {
    return step(layers, layers, visual, visual, non_visual);
}

TokenSchedule TokenSchedule::step(Index layers, Index step_layer, Index before, Index after, Index non_visual) {
    if (layers < 0 || step_layer < 0 || step_layer > layers || before < 0 || after < 0 || non_visual < 0)
        throw ParameterError("TokenSchedule: invalid step schedule");
    TokenSchedule s;
    s.non_visual = non_visual;
    s.visual.assign(static_cast<std::size_t>(layers), after);
    std::fill_n(s.visual.begin(), step_layer, before);
    return s;
}

LayerFlops layer_flops_terms(Index n, const BackboneSpec& spec) {
    if (n < 0)
        throw ParameterError("layer_flops: negative token count");
    const auto tn = static_cast<FlopCount>(n);
    const auto d = static_cast<FlopCount>(spec.hidden);
    const auto dff = static_cast<FlopCount>(spec.ffn);
    return {8 * tn * d * d, 4 * tn * tn * d, 4 * tn * d * dff};
}

FlopCount layer_flops(Index n, const BackboneSpec& spec) {
    return layer_flops_terms(n, spec).total();
}

FlopCount schedule_flops(const TokenSchedule& schedule, const BackboneSpec& spec) {
    if (schedule.layers() != spec.layers)
        throw ShapeError("schedule_flops: schedule has " + std::to_string(schedule.layers()) +
                         " layers, backbone has " + std::to_string(spec.layers));
    FlopCount total = 0;
    for (Index l = 0; l < schedule.layers(); ++l)
        total += layer_flops(schedule.tokens_at(l), spec);
    return total;
}

double relative_flops(const TokenSchedule& candidate, const TokenSchedule& baseline, const BackboneSpec& spec) {
    const FlopCount base = schedule_flops(baseline, spec);
    if (base == 0)
        throw ParameterError("relative_flops: baseline schedule has zero flops");
    return static_cast<double>(schedule_flops(candidate, spec)) / static_cast<double>(base);
}

}  // namespace teamc
