#include "stlrobust/gridscan/gridscan.hpp"

#include <json.hpp>

#include "stlrobust/falsifier/falsifier.hpp"
#include "stlrobust/util/csv.hpp"
#include "stlrobust/util/parallel.hpp"

namespace stlrobust::gridscan {

double cell_center(const systems::Dimension& dim, std::size_t index, std::size_t resolution) {
  const double width = (dim.upper - dim.lower) / static_cast<double>(resolution);
  return dim.lower + (static_cast<double>(index) + 0.5) * width;
}

GridScanResult scan(const systems::PlantPtr& plant, const stl::Formula& phi,
                    const ScanOptions& options) {
  const auto& domain = plant->deviation_domain();
  if (domain.size() != 2)
    throw systems::DomainError("grid scan needs a 2-dimensional deviation domain, plant '" +
                               plant->id() + "' has " + std::to_string(domain.size()));
  if (options.resolution == 0) throw std::invalid_argument("grid resolution must be >= 1");

  GridScanResult result;
  result.plant = plant->id();
  result.specification = stl::to_string(phi);
  result.dimensions = domain.dimensions();
  result.resolution = options.resolution;
  result.lower_budget = options.lower_budget;
  result.seed = options.seed;

  const std::size_t n = options.resolution;
  result.cells.resize(n * n);
  util::parallel_for(n * n, options.jobs, [&](std::size_t i) {
    auto& cell = result.cells[i];
    cell.row = i / n;
    cell.col = i % n;
    cell.center = systems::Deviation{
        {cell_center(domain[0], cell.row, n), cell_center(domain[1], cell.col, n)}};
    const auto instance = systems::instantiate(plant, cell.center);
    const auto lower = falsifier::lower_falsify(instance, phi, options.lower_budget,
                                                util::derive_seed(options.seed, i));
    cell.gamma = lower.gamma;
    cell.evaluations = lower.evaluations;
    cell.blew_up = lower.blew_up;
  });
  return result;
}

std::string export_csv(const GridScanResult& result) {
  util::CsvWriter out({"dev1", "dev2", "gamma", "evals"});
  for (const auto& cell : result.cells) {
    out.cell(cell.center[0]).cell(cell.center[1]).cell(cell.gamma);
    out.cell(static_cast<std::int64_t>(cell.evaluations));
    out.end_row();
  }
  return out.str();
}

std::string export_json(const GridScanResult& result) {
  nlohmann::ordered_json doc;
  doc["plant"] = result.plant;
  doc["specification"] = result.specification;
  auto& dims = doc["domain"] = nlohmann::ordered_json::array();
  for (const auto& d : result.dimensions)
    dims.push_back({{"name", d.name}, {"lower", d.lower}, {"upper", d.upper}});
  doc["resolution"] = result.resolution;
  doc["lower_budget"] = result.lower_budget;
  doc["seed"] = result.seed;
  auto& cells = doc["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : result.cells) {
    cells.push_back({{"row", c.row},
                     {"col", c.col},
                     {"dev1", c.center[0]},
                     {"dev2", c.center[1]},
                     {"gamma", c.gamma},
                     {"evals", c.evaluations},
                     {"blew_up", c.blew_up}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace stlrobust::gridscan
