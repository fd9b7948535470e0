#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cblup/blup_continuous.hpp"
#include "cblup/blup_discrete.hpp"
#include "cblup/measures.hpp"

namespace cblup {

/// Location-scale model y(t) = theta + eps(t) on a rectangle with a
/// separable kernel K1(t1,s1) K2(t2,s2).
struct ProductModel {
  Kernel k1;
  Kernel k2;
  double A1 = 0.0, B1 = 1.0;
  double A2 = 0.0, B2 = 1.0;
  bool with_derivatives = false;

  ProductModel(Kernel a, Kernel b) : k1(std::move(a)), k2(std::move(b)) {}
  ProductKernel kernel() const { return ProductKernel(k1, k2); }
};

/// One axis worth of closed-form ingredients for the location-scale model.
struct FactorClosedForm {
  SignedMeasure g0;  // trend-estimator component acting on values
  SignedMeasure g1;  // component acting on first derivatives (zero if q = 0)
  double C = 0.0;    // normalization; estimator variance is 1/C
  double D = 0.0;
};

FactorClosedForm factor_blue(const Kernel& k, double a, double b, bool with_derivatives);

/// Kernel-adjoint pair (zeta0, zeta1) for a point target on one axis;
/// piecewise in the target location (closest-endpoint atoms outside the
/// interval, an interpolation atom inside).
std::pair<SignedMeasure, SignedMeasure> factor_zeta(const Kernel& k, double a, double b,
                                                    double target, bool with_derivatives);

struct ProductSolution {
  ProductMeasure2D zeta_T;
  ProductMeasure2D blue_measure;
  ProductMeasure2D q_star;
  double c0 = 0.0;   // unbiasedness correction coefficient
  double D = 0.0;    // trend-estimator variance (product of axis variances)
  double mse = 0.0;
};

/// Continuous-observation predictor of y(T) from values only (factor
/// kernels must admit the value-only closed form, e.g. the exponential
/// kernel).
ProductSolution product_blup(const ProductModel& model, double T1, double T2);

/// Continuous-observation predictor using values and both first-order
/// derivatives (Matern 3/2 factors).
ProductSolution product_blup_derivs(const ProductModel& model, double T1, double T2);

struct GridSpec {
  double lo1 = 0.5, hi1 = 2.0;
  double lo2 = 0.5, hi2 = 2.0;
  int n1 = 61, n2 = 61;

  std::vector<double> axis1() const;
  std::vector<double> axis2() const;
};

/// Row-major sqrt-MSE surface (axis1 outer, axis2 inner) for the
/// continuous-observation predictor.
std::vector<double> mse_grid_continuous(const ProductModel& model, const GridSpec& grid);

/// Same surface for a discrete design (one Gram factorization shared
/// across all grid nodes).
std::vector<double> mse_grid_discrete(const KernelSpec& k, const Trend& f, const Design& d,
                                      const GridSpec& grid);

/// CSV export: header "t1,t2,rmse", one row per node, 10 significant digits.
void write_grid_csv(std::ostream& os, const GridSpec& grid, const std::vector<double>& rmse);

}  // namespace cblup
