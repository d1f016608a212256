#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stlrobust/stl/formula.hpp"
#include "stlrobust/systems/plant.hpp"

namespace stlrobust::gridscan {

struct GridCell {
  std::size_t row = 0;  // along dimension 1
  std::size_t col = 0;  // along dimension 2
  systems::Deviation center;
  double gamma = 0.0;
  std::size_t evaluations = 0;
  bool blew_up = false;
};

struct GridScanResult {
  std::string plant;
  std::string specification;
  std::vector<systems::Dimension> dimensions;
  std::size_t resolution = 0;
  std::size_t lower_budget = 0;
  std::uint64_t seed = 0;
  /// Row-major: cells[row * resolution + col].
  std::vector<GridCell> cells;
};

struct ScanOptions {
  std::size_t resolution = 20;
  std::size_t lower_budget = 50;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

/// Center of cell `index` of `resolution` equal slices of [lower, upper].
double cell_center(const systems::Dimension& dim, std::size_t index, std::size_t resolution);

/// Runs lower_falsify once per cell center of the plant's 2-dim deviation
/// domain. Cell i uses seed derive_seed(seed, i). Throws
/// systems::DomainError unless the domain has exactly two dimensions.
GridScanResult scan(const systems::PlantPtr& plant, const stl::Formula& phi,
                    const ScanOptions& options);

/// Header `dev1,dev2,gamma,evals`, one row per cell in row-major order.
std::string export_csv(const GridScanResult& result);
std::string export_json(const GridScanResult& result);

}  // namespace stlrobust::gridscan
