#include "stlrobust/optim/cmaes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stlrobust::optim {

namespace {

constexpr int kResampleAttempts = 10;

}  // namespace

CmaEs::CmaEs(SearchBox box, std::uint64_t seed, std::size_t budget, const OptimizerOptions& options)
    : Optimizer(std::move(box), budget), rng_(seed), n_(this->box().size()) {
  const double n = static_cast<double>(n_);
  lambda_ = options.population.value_or(default_population(n_));
  if (lambda_ < 2) throw std::invalid_argument("cma-es population must be >= 2");
  mu_ = lambda_ / 2;

  weights_.resize(static_cast<Eigen::Index>(mu_));
  for (std::size_t i = 0; i < mu_; ++i)
    weights_[static_cast<Eigen::Index>(i)] =
        std::log(static_cast<double>(mu_) + 0.5) - std::log(static_cast<double>(i + 1));
  weights_ /= weights_.sum();
  mu_eff_ = 1.0 / weights_.squaredNorm();

  c_sigma_ = (mu_eff_ + 2.0) / (n + mu_eff_ + 5.0);
  d_sigma_ = 1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff_ - 1.0) / (n + 1.0)) - 1.0) + c_sigma_;
  c_c_ = (4.0 + mu_eff_ / n) / (n + 4.0 + 2.0 * mu_eff_ / n);
  c_1_ = 2.0 / ((n + 1.3) * (n + 1.3) + mu_eff_);
  c_mu_ = std::min(1.0 - c_1_,
                   2.0 * (mu_eff_ - 2.0 + 1.0 / mu_eff_) / ((n + 2.0) * (n + 2.0) + mu_eff_));
  chi_n_ = std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));

  const Point start = options.initial_mean.value_or(this->box().center());
  if (start.size() != n_ || !this->box().contains(start))
    throw std::invalid_argument("cma-es initial mean must lie inside the search box");
  mean_ = Eigen::Map<const Eigen::VectorXd>(start.data(), static_cast<Eigen::Index>(n_));
  sigma_ = options.initial_sigma.value_or(0.25 * this->box().mean_width());
  if (!(sigma_ > 0.0) || !std::isfinite(sigma_))
    throw std::invalid_argument("cma-es initial sigma must be > 0");

  const auto dim = static_cast<Eigen::Index>(n_);
  cov_ = Eigen::MatrixXd::Identity(dim, dim);
  basis_ = Eigen::MatrixXd::Identity(dim, dim);
  scales_ = Eigen::VectorXd::Ones(dim);
  path_c_ = Eigen::VectorXd::Zero(dim);
  path_sigma_ = Eigen::VectorXd::Zero(dim);
}

std::vector<Point> CmaEs::propose(std::size_t count) {
  const auto dim = static_cast<Eigen::Index>(n_);
  std::vector<Point> out;
  out.reserve(count);
  Eigen::VectorXd z(dim);
  for (std::size_t k = 0; k < count; ++k) {
    Eigen::VectorXd x;
    for (int attempt = 0; attempt <= kResampleAttempts; ++attempt) {
      for (Eigen::Index i = 0; i < dim; ++i) z[i] = normal_(rng_);
      x = mean_ + sigma_ * (basis_ * scales_.cwiseProduct(z));
      if (box().contains(std::span<const double>(x.data(), n_))) break;
    }
    out.push_back(box().clip(std::span<const double>(x.data(), n_)));
  }
  return out;
}

void CmaEs::update(std::span<const Point> candidates, std::span<const double> values) {
  if (candidates.size() < lambda_) return;
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    ++generation_;
    return;
  }

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  const auto dim = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd steps(dim, static_cast<Eigen::Index>(mu_));
  for (std::size_t i = 0; i < mu_; ++i) {
    const auto& x = candidates[order[i]];
    for (Eigen::Index d = 0; d < dim; ++d)
      steps(d, static_cast<Eigen::Index>(i)) = (x[static_cast<std::size_t>(d)] - mean_[d]) / sigma_;
  }
  const Eigen::VectorXd step_w = steps * weights_;
  mean_ += sigma_ * step_w;

  // C^{-1/2} y_w through the current eigenbasis.
  const Eigen::VectorXd whitened =
      basis_ * (basis_.transpose() * step_w).cwiseQuotient(scales_);
  path_sigma_ = (1.0 - c_sigma_) * path_sigma_ +
                std::sqrt(c_sigma_ * (2.0 - c_sigma_) * mu_eff_) * whitened;

  const double gen = static_cast<double>(generation_ + 1);
  const double norm_ps = path_sigma_.norm();
  const bool h_sigma = norm_ps / std::sqrt(1.0 - std::pow(1.0 - c_sigma_, 2.0 * gen)) / chi_n_ <
                       1.4 + 2.0 / (static_cast<double>(n_) + 1.0);
  path_c_ = (1.0 - c_c_) * path_c_ +
            (h_sigma ? std::sqrt(c_c_ * (2.0 - c_c_) * mu_eff_) : 0.0) * step_w;

  const double correction = h_sigma ? 0.0 : c_c_ * (2.0 - c_c_);
  cov_ = (1.0 - c_1_ - c_mu_) * cov_ +
         c_1_ * (path_c_ * path_c_.transpose() + correction * cov_) +
         c_mu_ * steps * weights_.asDiagonal() * steps.transpose();

  sigma_ *= std::exp((c_sigma_ / d_sigma_) * (norm_ps / chi_n_ - 1.0));
  ++generation_;
  decompose();
}

void CmaEs::decompose() {
  const auto dim = static_cast<Eigen::Index>(n_);
  cov_ = (0.5 * (cov_ + cov_.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov_);
  const bool ok = solver.info() == Eigen::Success && cov_.allFinite() &&
                  solver.eigenvalues().allFinite() && solver.eigenvalues().minCoeff() > 0.0;
  if (!ok) {
    cov_ = Eigen::MatrixXd::Identity(dim, dim);
    basis_ = Eigen::MatrixXd::Identity(dim, dim);
    scales_ = Eigen::VectorXd::Ones(dim);
    path_c_.setZero();
    ++resets_;
    return;
  }
  basis_ = solver.eigenvectors();
  scales_ = solver.eigenvalues().cwiseSqrt();
}

}  // namespace stlrobust::optim
