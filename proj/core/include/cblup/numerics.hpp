#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cblup {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when a Cholesky factorization hits a non-positive leading minor.
/// For covariance matrices this almost always means a degenerate design
/// (duplicate observation sites). No jitter is applied automatically.
struct NotPositiveDefiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a linear system is singular to working precision, e.g. a
/// trend that is not identifiable from the design.
struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gauss-Legendre rule on [a,b]: nodes strictly increasing and strictly
/// inside the interval, weights positive, sum(weights) == b-a.
struct QuadratureRule {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;  // per-panel Gauss order

  double integrate(const std::function<double(double)>& g) const;
};

/// Single-panel Gauss-Legendre rule of the given order (1..64).
/// Exact for polynomials of degree <= 2*order-1.
QuadratureRule gauss_legendre(double a, double b, int order);

/// Composite rule: `panels` equal panels of the given Gauss order.
QuadratureRule composite_gauss_legendre(double a, double b, int order, int panels);

/// Panel-count policy for integrands that are products of low-degree
/// polynomials and exp(+-rate*t): max(4, ceil(rate*(b-a))).
int default_panel_count(double a, double b, double rate);

/// Default composite rule (order 16) under the panel policy above.
QuadratureRule default_quadrature(double a, double b, double rate);

/// Solve M Z = B for symmetric positive definite M via Cholesky.
/// Requires |M - M^T|_max <= 1e-10 |M|_max; throws NotPositiveDefiniteError
/// on a leading-minor failure.
Matrix solve_spd(const Matrix& M, const Matrix& B);

/// Solve M Z = B for a general square M via pivoted LU (used for the
/// bordered, indefinite systems of the prediction error formulas).
Matrix solve_lu(const Matrix& M, const Matrix& B);

}  // namespace cblup
