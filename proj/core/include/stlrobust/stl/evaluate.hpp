#pragma once

#include <cstddef>
#include <vector>

#include "stlrobust/stl/formula.hpp"
#include "stlrobust/stl/signal.hpp"

namespace stlrobust::stl {

/// Quantitative satisfaction value rho(phi, s, t) on sample instants.
///
/// Temporal windows are converted to sample offsets and evaluated bottom-up
/// over the whole window with sliding min/max, so the cost is linear in the
/// signal length for G/F and O(n * b) for U.
///
/// Throws HorizonError if any window shifted by t runs past the last sample,
/// UnknownChannelError if a predicate names a channel the signal lacks.
double evaluate(const Formula& formula, const Signal& signal, std::size_t t = 0);

/// rho at every index in [first, first + count).
std::vector<double> evaluate_trace(const Formula& formula, const Signal& signal,
                                   std::size_t first, std::size_t count);

/// Direct transcription of the recursive definition. Exponential in the
/// nesting of temporal operators; only meant as a test oracle.
double evaluate_reference(const Formula& formula, const Signal& signal, std::size_t t = 0);

}  // namespace stlrobust::stl
