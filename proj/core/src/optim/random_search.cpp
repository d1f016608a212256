#include "stlrobust/optim/random_search.hpp"

namespace stlrobust::optim {

RandomSearch::RandomSearch(SearchBox box, std::uint64_t seed, std::size_t budget, std::size_t batch)
    : Optimizer(std::move(box), budget),
      rng_(seed),
      batch_(batch ? batch : default_population(this->box().size())) {}

std::vector<Point> RandomSearch::propose(std::size_t count) {
  std::vector<Point> out(count, Point(box().size()));
  for (auto& p : out)
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = std::uniform_real_distribution<double>(box().lower()[i], box().upper()[i])(rng_);
  return out;
}

}  // namespace stlrobust::optim
