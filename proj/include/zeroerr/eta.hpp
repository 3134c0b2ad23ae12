#pragma once

#include <span>

#include "zeroerr/bounds.hpp"

namespace zeroerr {

/// Interval for Hbar of the disjoint union of `parts` mixed by P_A, evaluated
/// as (1/k) Hbar of the product of G_a^{k P_A(a)}. P_A must be rational with
/// denominator k. When every part is perfect the result is intersected with
/// the weighted sum of the parts' Korner entropies.
BoundInterval eta_bounds(std::span<const ProbabilisticGraph> parts, const Distribution & p_a,
                         const BoundsOptions & opts = {});

/// Product graph whose Hbar, divided by the denominator of P_A, equals eta.
ProbabilisticGraph eta_product(std::span<const ProbabilisticGraph> parts, const Distribution & p_a,
                               const ProductOptions & opts = {});

} // namespace zeroerr
