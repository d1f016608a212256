#pragma once

#include <random>

#include <Eigen/Dense>

#include "stlrobust/optim/optimizer.hpp"

namespace stlrobust::optim {

/// (mu/mu_w, lambda)-CMA-ES with cumulative step-size adaptation, rank-one
/// and rank-mu covariance updates.
///
///  * lambda = 4 + floor(3 ln n), mu = floor(lambda / 2),
///    w_i proportional to ln(mu + 1/2) - ln(i).
///  * Out-of-box samples are redrawn up to 10 times, then clipped; updates
///    use the clipped points.
///  * Ranking is a stable sort, so equal values keep their ask order. A
///    generation in which every value is equal carries no ranking and leaves
///    mean, step size and covariance untouched.
///  * A batch smaller than lambda (the tail of the budget) is only recorded.
///  * If the covariance stops being numerically positive definite it is
///    reset to the identity and the rank-one path is cleared.
class CmaEs final : public Optimizer {
 public:
  CmaEs(SearchBox box, std::uint64_t seed, std::size_t budget, const OptimizerOptions& options = {});

  OptimizerKind kind() const noexcept override { return OptimizerKind::CmaEs; }
  std::size_t population_size() const noexcept override { return lambda_; }

  std::size_t parents() const noexcept { return mu_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  double effective_mass() const noexcept { return mu_eff_; }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  double sigma() const noexcept { return sigma_; }
  const Eigen::MatrixXd& covariance() const noexcept { return cov_; }
  std::size_t generation() const noexcept { return generation_; }
  std::size_t covariance_resets() const noexcept { return resets_; }

 protected:
  std::vector<Point> propose(std::size_t count) override;
  void update(std::span<const Point> candidates, std::span<const double> values) override;

 private:
  void decompose();

  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};

  std::size_t n_;
  std::size_t lambda_;
  std::size_t mu_;
  Eigen::VectorXd weights_;
  double mu_eff_;
  double c_sigma_, d_sigma_, c_c_, c_1_, c_mu_, chi_n_;

  Eigen::VectorXd mean_;
  double sigma_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd basis_;     // eigenvectors of cov_
  Eigen::VectorXd scales_;    // sqrt of eigenvalues
  Eigen::VectorXd path_c_;
  Eigen::VectorXd path_sigma_;
  std::size_t generation_ = 0;
  std::size_t resets_ = 0;
};

}  // namespace stlrobust::optim
