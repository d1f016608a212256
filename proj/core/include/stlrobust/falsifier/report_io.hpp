#pragma once

#include <string>

#include "stlrobust/falsifier/falsifier.hpp"

namespace stlrobust::falsifier {

/// JSON document with the problem, delta*, counts and the sample log.
/// Wall-clock time is left out so reruns produce identical bytes.
std::string report_json(const FalsificationReport& report);

/// Columns: index, one per deviation dimension, gamma, objective, distance,
/// is_violation, lower_evals.
std::string sample_log_csv(const FalsificationReport& report);

}  // namespace stlrobust::falsifier
