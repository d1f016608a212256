#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stlrobust/optim/optimizer.hpp"
#include "stlrobust/stl/formula.hpp"
#include "stlrobust/stl/signal.hpp"
#include "stlrobust/systems/plant.hpp"

namespace stlrobust::falsifier {

enum class Mode { AnyViolation, MinViolation };

std::string_view to_string(Mode mode) noexcept;
/// Accepts "any-violation" and "min-violation".
Mode parse_mode(std::string_view text);

/// Gamma reported for a deviation whose simulation diverged.
inline constexpr double kBlowUpGamma = -1.0e6;

// ---------------------------------------------------------------------------
// Distances in the normalised deviation box
// ---------------------------------------------------------------------------

/// Affine map of each dimension's [lower, upper] onto [0, 1].
std::vector<double> normalize(const systems::Deviation& delta,
                              const systems::DeviationDomain& domain);

/// || normalize(delta) - normalize(delta_0) ||_p, p >= 1 (p may be +inf).
double distance(const systems::Deviation& delta, const systems::DeviationDomain& domain,
                double p = 2.0);

/// Largest possible normalised distance, k^(1/p).
double max_distance(const systems::DeviationDomain& domain, double p = 2.0);

/// Upper-layer objective v = f(delta, gamma).
///   any-violation: v = gamma
///   min-violation: v = distance(delta) if gamma < 0, else max_distance + gamma
///                  (offset by one ulp), so violating points always rank
///                  strictly ahead of satisfying ones.
double objective(Mode mode, const systems::Deviation& delta, double gamma,
                 const systems::DeviationDomain& domain, double p = 2.0);

// ---------------------------------------------------------------------------
// Lower layer: Gamma(S^delta, C, phi) estimated by CMA-ES over scenarios
// ---------------------------------------------------------------------------

struct LowerResult {
  double gamma = 0.0;
  std::vector<double> witness_scenario;
  /// Full trajectory of the witness, or the samples recorded before a blow-up.
  stl::Signal witness_trajectory;
  std::size_t evaluations = 0;
  bool blew_up = false;
};

/// Minimises rho(phi, simulate(instance, scenario), 0) over the plant's
/// scenario space and always spends the whole budget; a diverging
/// simulation ends the search with gamma = kBlowUpGamma.
/// Throws stl::HorizonError if phi looks past the instance horizon.
LowerResult lower_falsify(const systems::SystemInstance& instance, const stl::Formula& phi,
                          std::size_t budget, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Upper layer
// ---------------------------------------------------------------------------

struct FalsificationProblem {
  /// Carries the estimated range and zero-deviation point.
  systems::PlantPtr plant;
  stl::FormulaPtr specification;
  Mode mode = Mode::MinViolation;
  double p = 2.0;
  std::size_t upper_budget = 100;
  std::size_t lower_budget = 50;
  std::uint64_t seed = 0;
};

struct SampleRecord {
  std::size_t index = 0;
  systems::Deviation deviation;
  double gamma = 0.0;
  double objective = 0.0;
  double distance = 0.0;
  bool violation = false;
  bool blew_up = false;
  std::size_t lower_evaluations = 0;
  std::uint64_t lower_seed = 0;
};

struct FalsificationReport {
  std::string plant;
  std::string specification;
  Mode mode = Mode::MinViolation;
  optim::OptimizerKind optimizer = optim::OptimizerKind::CmaEs;
  std::uint64_t seed = 0;
  double p = 2.0;
  std::size_t upper_budget = 0;
  std::size_t lower_budget = 0;
  std::vector<systems::Dimension> dimensions;
  std::vector<double> zero;
  std::vector<SampleRecord> samples;
  /// Index into samples of delta*, empty when nothing violated.
  std::optional<std::size_t> best_index;
  std::size_t violations = 0;
  double wall_clock_seconds = 0.0;

  std::size_t total() const noexcept { return samples.size(); }
  const SampleRecord* best() const {
    return best_index ? &samples[*best_index] : nullptr;
  }
};

/// Seed handed to the lower layer for the index-th upper-layer sample.
std::uint64_t lower_seed(std::uint64_t upper_seed, std::size_t index) noexcept;

/// Two-layer search: ask a batch of deviations, estimate Gamma for each
/// (optionally on `jobs` threads), score them, tell, repeat until the upper
/// budget is spent. Output is independent of `jobs`.
FalsificationReport falsify(const FalsificationProblem& problem, optim::OptimizerKind optimizer,
                            std::size_t jobs = 1);

}  // namespace stlrobust::falsifier
