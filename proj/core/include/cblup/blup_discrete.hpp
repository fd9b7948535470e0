#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "cblup/design.hpp"
#include "cblup/kernels.hpp"
#include "cblup/numerics.hpp"

namespace cblup {

/// A one-dimensional kernel or a separable two-dimensional one.
using KernelSpec = std::variant<Kernel, ProductKernel>;

int spec_dim(const KernelSpec& k);
/// Per-axis smoothness (a product kernel is as smooth as its factors).
int spec_smoothness(const KernelSpec& k);

/// Covariance between the observations y^(pa)(a) and y^(pb)(b).
double obs_covariance(const KernelSpec& k, const Point& a, const DerivPattern& pa,
                      const Point& b, const DerivPattern& pb);

/// Gram matrix of the design's flattened observation vector.
Matrix gram_matrix(const KernelSpec& k, const Design& d);

/// Covariances between the flattened observations and y^(p)(t0).
Vector cross_covariance(const KernelSpec& k, const Design& d, const Point& t0,
                        const DerivPattern& p);

/// Trend rows for the flattened observations (n x m). Two-dimensional
/// designs support the location-scale trend only.
Matrix trend_matrix(const Trend& f, const Design& d);
Vector trend_target(const Trend& f, const Point& t0, const DerivPattern& p);

struct BlupSolution {
  Vector weights;       // aligned with Design::flatten()
  double mse = 0.0;
  Matrix blue_weights;  // m x n, rows estimate the trend coefficients
  Matrix blue_cov;      // D, covariance of the trend estimator
  Vector c;             // unbiasedness gap vector driving the trend correction
};

/// Shares one factorization of the Gram matrix across many prediction
/// targets. All state is immutable after construction.
class DiscreteBlupEngine {
 public:
  DiscreteBlupEngine(KernelSpec k, Trend f, Design d);

  BlupSolution solve(const Point& t0, const DerivPattern& p = {0, 0}) const;
  BlupSolution solve_average(const std::vector<std::pair<Point, double>>& nu) const;
  /// Mean squared error only (grid sweeps).
  double mse_at(const Point& t0, const DerivPattern& p = {0, 0}) const;

  const Design& design() const { return design_; }
  const KernelSpec& kernel() const { return kernel_; }
  const Matrix& gram() const { return gram_; }
  const Matrix& blue_weights() const { return blue_weights_; }
  const Matrix& blue_cov() const { return blue_cov_; }

 private:
  KernelSpec kernel_;
  Trend trend_;
  Design design_;
  std::vector<Design::Observation> obs_;
  Matrix gram_;
  Matrix x_;                    // n x m trend rows
  Eigen::LLT<Matrix> gram_llt_;
  Matrix six_;                  // Sigma^{-1} X
  Eigen::LLT<Matrix> c_llt_;    // factorization of X^T Sigma^{-1} X
  Matrix blue_weights_;         // m x n
  Matrix blue_cov_;             // m x m
  Eigen::PartialPivLU<Matrix> bordered_lu_;  // [[0, X^T],[X, Sigma]]
};

/// Best linear unbiased prediction of y(t0) from value observations.
BlupSolution discrete_blup(const KernelSpec& k, const Trend& f, const Design& d, const Point& t0);

/// Prediction of the p-th derivative y^(p)(t0) from observations that may
/// include derivatives (1-d designs).
BlupSolution discrete_blup_derivs(const KernelSpec& k, const Trend& f, const Design& d,
                                  const Point& t0, int p);

/// General pattern target (2-d designs predict pattern (0,0) in practice).
BlupSolution discrete_blup_target(const KernelSpec& k, const Trend& f, const Design& d,
                                  const Point& t0, const DerivPattern& p);

/// Prediction of the nu-weighted average sum_j nu_j y(s_j); equals the
/// nu-average of the pointwise predictors.
BlupSolution discrete_blup_average(const KernelSpec& k, const Trend& f, const Design& d,
                                   const std::vector<std::pair<Point, double>>& nu);

/// Trend estimator weights (m x n) and its covariance D.
std::pair<Matrix, Matrix> blue_discrete(const KernelSpec& k, const Trend& f, const Design& d);

/// The textbook predictor arrangement (trend estimate plus correlated
/// residual correction). Algebraically identical to the solver's weights;
/// evaluated in a different operation order for consistency checks.
Vector kriging_form_weights(const KernelSpec& k, const Trend& f, const Design& d,
                            const Point& t0, const DerivPattern& p);

/// Error variance of arbitrary weights w for the target y^(p)(t0):
/// K^(p,p)(t0,t0) - 2 w.k + w.Sigma.w. Independent of the solver path.
double quadratic_form_mse(const KernelSpec& k, const Design& d, const Vector& w,
                          const Point& t0, const DerivPattern& p);

/// Same for an atomic average target.
double quadratic_form_mse_average(const KernelSpec& k, const Design& d, const Vector& w,
                                  const std::vector<std::pair<Point, double>>& nu);

}  // namespace cblup
