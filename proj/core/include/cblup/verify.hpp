#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cblup/blup_continuous.hpp"
#include "cblup/blup_discrete.hpp"

namespace cblup {

/// n equispaced points on [a,b] including both endpoints.
std::vector<double> uniform_grid(double a, double b, int n);

/// Max over the grid and over test orders j of
/// | sum_i integral K^{(i,j)}(t,s) zeta_i(dt) - rhs_j(s) |.
/// rhs must supply one callable per observed derivative order.
double residual_scan(const Kernel& k, const VectorMeasure& zeta,
                     const std::vector<std::function<double(double)>>& rhs,
                     std::span<const double> s_grid);

struct McConfig {
  int sample_count = 100000;
  std::uint64_t seed = 1;
};

struct McResult {
  double empirical_mse = 0.0;
  double standard_error = 0.0;
  int dimension = 0;  // size of the jointly sampled Gaussian vector
};

/// Empirical mean squared error of a measure predictor over Gaussian draws
/// of the process. The trajectory is discretized at the predictor's atoms
/// plus its quadrature nodes (densities become point masses with weight
/// density * quadrature-weight) plus the target. The discretized covariance
/// gets a 1e-12 diagonal lift if its factorization fails; this is a
/// simulation-only device, analytic paths never use jitter.
McResult mc_mse(const Kernel& k, const Trend& f, const Vector& theta,
                const VectorMeasure& predictor, double t0, int p, const McConfig& cfg);

/// Discrete-weights variant over a finite design.
McResult mc_mse_discrete(const KernelSpec& k, const Trend& f, const Vector& theta,
                         const Design& d, const Vector& weights, const Point& t0,
                         const DerivPattern& p, const McConfig& cfg);

/// Mean squared errors of equidistant value-only designs (1-d N-point
/// families or NxN grids) for increasing N.
std::vector<double> fine_grid_limit(const KernelSpec& k, const Trend& f, const Point& t0,
                                    std::span<const int> Ns);

}  // namespace cblup
