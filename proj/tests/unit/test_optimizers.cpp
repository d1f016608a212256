#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "stlrobust/optim/cmaes.hpp"
#include "stlrobust/optim/random_search.hpp"

using namespace stlrobust::optim;

namespace {

SearchBox unit_box(std::size_t n) { return SearchBox(Point(n, 0.0), Point(n, 1.0)); }

double sphere(const Point& x, double center) {
  double s = 0.0;
  for (double v : x) s += (v - center) * (v - center);
  return s;
}

double run(Optimizer& opt, double center) {
  while (opt.remaining() > 0) {
    const auto batch = opt.ask();
    std::vector<double> values;
    for (const auto& x : batch) values.push_back(sphere(x, center));
    opt.tell(batch, values);
  }
  return opt.best().second;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

}  // namespace

TEST_CASE("Population sizes", "[optim]") {
  REQUIRE(default_population(2) == 6);
  REQUIRE(default_population(4) == 8);
  REQUIRE(default_population(8) == 10);
  CmaEs two(unit_box(2), 7, 100);
  REQUIRE(two.population_size() == 6);
  REQUIRE(two.parents() == 3);
  REQUIRE(CmaEs(unit_box(4), 7, 100).population_size() == 8);
  REQUIRE(two.sigma() == 0.25);
  REQUIRE(two.mean().isApprox(Eigen::Vector2d(0.5, 0.5)));
}

TEST_CASE("Ask and tell protocol", "[optim]") {
  for (auto kind : {OptimizerKind::Random, OptimizerKind::CmaEs}) {
    auto opt = make_optimizer(kind, unit_box(2), 3, 10);
    REQUIRE_THROWS_AS(opt->best(), std::logic_error);
    auto batch = opt->ask();
    REQUIRE(batch.size() == 6);
    REQUIRE_THROWS_AS(opt->ask(), std::logic_error);
    REQUIRE_THROWS_AS(opt->tell(batch, std::vector<double>(5, 0.0)), std::invalid_argument);
    std::vector<double> bad(6, 0.0);
    bad[2] = std::nan("");
    REQUIRE_THROWS_AS(opt->tell(batch, bad), std::invalid_argument);
    opt->tell(batch, std::vector<double>(6, 1.0));

    batch = opt->ask();
    REQUIRE(batch.size() == 4);  // capped by the remaining budget
    opt->tell(batch, std::vector<double>(4, 1.0));
    REQUIRE(opt->asked() == 10);
    REQUIRE_THROWS_AS(opt->ask(), BudgetExhausted);
  }
  REQUIRE_THROWS_AS(make_optimizer(OptimizerKind::CmaEs, unit_box(2), 0, 0), std::invalid_argument);
  REQUIRE(parse_optimizer_kind("cma-es") == OptimizerKind::CmaEs);
  REQUIRE(parse_optimizer_kind("random") == OptimizerKind::Random);
  REQUIRE_THROWS_AS(parse_optimizer_kind("nsga2"), std::invalid_argument);
}

TEST_CASE("Best point bookkeeping", "[optim]") {
  RandomSearch opt(unit_box(1), 1, 6, 3);

  SECTION("argmin of one batch") {
    auto b = opt.ask();
    opt.tell(b, std::vector<double>{3.0, 1.0, 2.0});
    REQUIRE(opt.best().first == b[1]);
  }

  SECTION("ties go to the earliest point") {
    auto b = opt.ask();
    opt.tell(b, std::vector<double>{1.0, 1.0, 5.0});
    REQUIRE(opt.best().first == b[0]);
    auto c = opt.ask();
    opt.tell(c, std::vector<double>{1.0, 4.0, 4.0});
    REQUIRE(opt.best().first == b[0]);
  }

  SECTION("global minimum across generations") {
    auto b = opt.ask();
    opt.tell(b, std::vector<double>{0.5, 2.0, 3.0});
    auto c = opt.ask();
    opt.tell(c, std::vector<double>{1.0, 0.75, 9.0});
    REQUIRE(opt.best().first == b[0]);
    REQUIRE(opt.best().second == 0.5);
  }
}

TEST_CASE("Seeded determinism and box constraints", "[optim][property]") {
  for (auto kind : {OptimizerKind::Random, OptimizerKind::CmaEs}) {
    const SearchBox box({-1.0, 0.0, 10.0}, {1.0, 0.001, 20.0});
    auto a = make_optimizer(kind, box, 7, 200);
    auto b = make_optimizer(kind, box, 7, 200);
    auto c = make_optimizer(kind, box, 8, 200);
    bool differs = false;
    while (a->remaining() > 0) {
      const auto pa = a->ask(), pb = b->ask(), pc = c->ask();
      REQUIRE(pa == pb);
      differs = differs || pa != pc;
      std::vector<double> va;
      for (const auto& x : pa) {
        REQUIRE(box.contains(x));
        va.push_back(std::abs(x[0] - 0.9) + x[1] + std::abs(x[2] - 19.9));
      }
      a->tell(pa, va);
      b->tell(pb, va);
      c->tell(pc, std::vector<double>(pc.size(), 0.0));
    }
    REQUIRE(differs);
  }
}

TEST_CASE("Random search ignores told values", "[optim]") {
  RandomSearch a(unit_box(2), 11, 30), b(unit_box(2), 11, 30);
  for (int g = 0; g < 5; ++g) {
    auto pa = a.ask(), pb = b.ask();
    REQUIRE(pa == pb);
    a.tell(pa, std::vector<double>(pa.size(), 1.0));
    std::vector<double> vb;
    for (std::size_t i = 0; i < pb.size(); ++i) vb.push_back(static_cast<double>(i));
    b.tell(pb, vb);
  }
}

TEST_CASE("One CMA-ES update by hand", "[optim][cmaes]") {
  // Identity covariance, mu = 3, weights proportional to ln(3.5) - ln(i).
  CmaEs opt(unit_box(2), 5, 100);
  const auto batch = opt.ask();
  std::vector<double> values;
  for (const auto& x : batch) values.push_back(sphere(x, 1.0));  // best near the (1, 1) corner

  std::vector<std::size_t> order{0, 1, 2, 3, 4, 5};
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  const double raw[] = {std::log(3.5) - std::log(1.0), std::log(3.5) - std::log(2.0),
                        std::log(3.5) - std::log(3.0)};
  const double total = raw[0] + raw[1] + raw[2];
  Eigen::Vector2d expected = Eigen::Vector2d::Zero();
  for (int i = 0; i < 3; ++i)
    expected += raw[i] / total * Eigen::Vector2d(batch[order[i]][0], batch[order[i]][1]);

  for (int i = 0; i < 3; ++i) REQUIRE(opt.weights()[i] == Catch::Approx(raw[i] / total).epsilon(1e-14));
  opt.tell(batch, values);
  REQUIRE((opt.mean() - expected).norm() < 1e-14);
  const double before = (Eigen::Vector2d(0.5, 0.5) - Eigen::Vector2d(1.0, 1.0)).norm();
  REQUIRE((opt.mean() - Eigen::Vector2d(1.0, 1.0)).norm() < before);
  REQUIRE(opt.generation() == 1);
}

TEST_CASE("All-equal values leave CMA-ES state alone", "[optim][cmaes]") {
  CmaEs opt(unit_box(3), 9, 100);
  const Eigen::VectorXd mean = opt.mean();
  const double sigma = opt.sigma();
  const Eigen::MatrixXd cov = opt.covariance();
  const auto batch = opt.ask();
  opt.tell(batch, std::vector<double>(batch.size(), 4.2));
  REQUIRE(opt.mean() == mean);
  REQUIRE(opt.sigma() == sigma);
  REQUIRE(opt.covariance() == cov);
  REQUIRE(opt.generation() == 1);
}

TEST_CASE("Covariance stays symmetric positive definite", "[optim][cmaes][property]") {
  CmaEs opt(unit_box(4), 21, 400);
  while (opt.remaining() > 0) {
    const auto batch = opt.ask();
    std::vector<double> values;
    for (const auto& x : batch) values.push_back(std::abs(x[0] - 0.2) + 10.0 * std::abs(x[1] - x[2]));
    opt.tell(batch, values);
    const auto& c = opt.covariance();
    REQUIRE((c - c.transpose()).norm() == 0.0);
    REQUIRE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(c).eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("CMA-ES converges on a sphere", "[optim][cmaes]") {
  CmaEs opt(unit_box(2), 3, 40 * 6);
  run(opt, 0.7);
  REQUIRE(opt.generation() == 40);
  REQUIRE((opt.mean() - Eigen::Vector2d(0.7, 0.7)).norm() < 1e-2);
}

TEST_CASE("CMA-ES beats random search on a 4-d sphere", "[optim][cmaes]") {
  std::vector<double> cma, rnd;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CmaEs c(unit_box(4), seed, 100);
    RandomSearch r(unit_box(4), seed, 100);
    cma.push_back(run(c, 0.7));
    rnd.push_back(run(r, 0.7));
  }
  REQUIRE(median(cma) < median(rnd));
  REQUIRE(*std::min_element(cma.begin(), cma.end()) < 1e-2);
}
