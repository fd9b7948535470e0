#include "cblup/product_field.hpp"

#include <cmath>
#include <ostream>

namespace cblup {

namespace {

bool inside(double x, double a, double b) { return x >= a && x <= b; }

SignedMeasure zero_measure(const Kernel& k, double a, double b) {
  return SignedMeasure::zero(a, b, k.lambda());
}

/// sum_j of the section integral of K^{(j,0)}(., x) against (mu0, mu1).
double factor_cross(const Kernel& k, const SignedMeasure& m0, const SignedMeasure& m1, double x) {
  double acc = kernel_section_integral(k, 0, 0, m0, x);
  if (k.smoothness() >= 1) acc += kernel_section_integral(k, 1, 0, m1, x);
  return acc;
}

}  // namespace

FactorClosedForm factor_blue(const Kernel& k, double a, double b, bool with_derivatives) {
  FactorClosedForm out;
  const ContinuousModel axis(k, Trend::const1(), a, b);
  if (with_derivatives) {
    if (k.kind() != Kernel::Kind::Matern32)
      throw std::invalid_argument("factor_blue: derivative mode needs a once-differentiable factor "
                                  "with a known closed form (matern32)");
    auto [rows, C] = [&] {
      ClosedFormSolution sol = matern32_blup(axis, b + 1.0, 0);  // reuse its rows via C, G
      return std::pair{sol.blue_measure, sol.C};
    }();
    out.C = C(0, 0);
    out.D = 1.0 / out.C;
    out.g0 = rows[0].components[0];
    out.g1 = rows[0].components[1];
    return out;
  }
  if (!k.has_markovian_form())
    throw std::invalid_argument("factor_blue: value-only mode needs a Markovian-form factor");
  auto [rows, C] = markovian_zeta(axis);
  out.C = C(0, 0);
  out.D = 1.0 / out.C;
  out.g0 = scaled(rows[0].components[0], 1.0 / out.C);
  out.g1 = zero_measure(k, a, b);
  return out;
}

std::pair<SignedMeasure, SignedMeasure> factor_zeta(const Kernel& k, double a, double b,
                                                    double target, bool with_derivatives) {
  const ContinuousModel axis(k, Trend::const1(), a, b);
  if (with_derivatives) {
    if (k.kind() != Kernel::Kind::Matern32)
      throw std::invalid_argument("factor_zeta: derivative mode needs matern32 factors");
    ClosedFormSolution sol = matern32_blup(axis, target, 0);
    return {sol.zeta_t0.components[0], sol.zeta_t0.components[1]};
  }
  if (!k.has_markovian_form())
    throw std::invalid_argument("factor_zeta: value-only mode needs a Markovian-form factor");
  VectorMeasure vm = markovian_zeta_t0(axis, target);
  return {vm.components[0], zero_measure(k, a, b)};
}

namespace {

ProductSolution product_blup_impl(const ProductModel& model, double T1, double T2,
                                  bool with_derivatives) {
  ProductSolution sol;
  const bool interior = inside(T1, model.A1, model.B1) && inside(T2, model.A2, model.B2);

  const FactorClosedForm f1 = factor_blue(model.k1, model.A1, model.B1, with_derivatives);
  const FactorClosedForm f2 = factor_blue(model.k2, model.A2, model.B2, with_derivatives);
  sol.D = f1.D * f2.D;

  auto [z10, z11] = factor_zeta(model.k1, model.A1, model.B1, T1, with_derivatives);
  auto [z20, z21] = factor_zeta(model.k2, model.A2, model.B2, T2, with_derivatives);

  // Pattern order (0,0),(1,0),(0,1),(1,1); the adjoint part is one tensor
  // term per pattern, the trend part adds c0 * G x G.
  const std::array<std::pair<const SignedMeasure*, const SignedMeasure*>, 4> zpair = {
      std::pair{&z10, &z20}, {&z11, &z20}, {&z10, &z21}, {&z11, &z21}};
  const std::array<std::pair<const SignedMeasure*, const SignedMeasure*>, 4> gpair = {
      std::pair{&f1.g0, &f2.g0}, {&f1.g1, &f2.g0}, {&f1.g0, &f2.g1}, {&f1.g1, &f2.g1}};

  sol.c0 = 1.0 - z10.total_mass() * z20.total_mass();

  const int npat = with_derivatives ? 4 : 1;
  for (int pat = 0; pat < npat; ++pat) {
    sol.zeta_T.components[pat].terms.push_back({*zpair[pat].first, *zpair[pat].second});
    sol.blue_measure.components[pat].terms.push_back({*gpair[pat].first, *gpair[pat].second});
    sol.q_star.components[pat].terms.push_back({*zpair[pat].first, *zpair[pat].second});
    sol.q_star.components[pat].terms.push_back(
        {scaled(*gpair[pat].first, sol.c0), *gpair[pat].second});
  }

  if (interior) {
    // Exact interpolation: the adjoint part alone reproduces the target.
    sol.mse = 0.0;
    return sol;
  }

  // mse = K(T,T) + c0 D - sum over patterns of the target covariance row
  // integrated against Q*; every integral factorizes per axis.
  const double k_tt = model.k1(T1, T1) * model.k2(T2, T2);
  const double cross_z = factor_cross(model.k1, z10, z11, T1) *
                         factor_cross(model.k2, z20, z21, T2);
  const double cross_g = factor_cross(model.k1, f1.g0, f1.g1, T1) *
                         factor_cross(model.k2, f2.g0, f2.g1, T2);
  sol.mse = k_tt + sol.c0 * sol.D - (cross_z + sol.c0 * cross_g);
  if (sol.mse < -1e-10) throw std::runtime_error("product predictor: negative mse");
  sol.mse = std::max(sol.mse, 0.0);
  return sol;
}

}  // namespace

ProductSolution product_blup(const ProductModel& model, double T1, double T2) {
  return product_blup_impl(model, T1, T2, false);
}

ProductSolution product_blup_derivs(const ProductModel& model, double T1, double T2) {
  return product_blup_impl(model, T1, T2, true);
}

std::vector<double> GridSpec::axis1() const {
  std::vector<double> v(n1);
  for (int i = 0; i < n1; ++i) v[i] = lo1 + i * (hi1 - lo1) / (n1 - 1);
  return v;
}

std::vector<double> GridSpec::axis2() const {
  std::vector<double> v(n2);
  for (int i = 0; i < n2; ++i) v[i] = lo2 + i * (hi2 - lo2) / (n2 - 1);
  return v;
}

std::vector<double> mse_grid_continuous(const ProductModel& model, const GridSpec& grid) {
  if (grid.n1 < 2 || grid.n2 < 2)
    throw std::invalid_argument("mse_grid: resolution must be >= 2 per axis");
  const auto a1 = grid.axis1();
  const auto a2 = grid.axis2();
  std::vector<double> out;
  out.reserve(a1.size() * a2.size());
  for (double t1 : a1)
    for (double t2 : a2) {
      const ProductSolution sol = model.with_derivatives
                                      ? product_blup_derivs(model, t1, t2)
                                      : product_blup(model, t1, t2);
      out.push_back(std::sqrt(sol.mse));
    }
  return out;
}

std::vector<double> mse_grid_discrete(const KernelSpec& k, const Trend& f, const Design& d,
                                      const GridSpec& grid) {
  if (grid.n1 < 2 || grid.n2 < 2)
    throw std::invalid_argument("mse_grid: resolution must be >= 2 per axis");
  const DiscreteBlupEngine engine(k, f, d);
  const auto a1 = grid.axis1();
  const auto a2 = grid.axis2();
  std::vector<double> out;
  out.reserve(a1.size() * a2.size());
  for (double t1 : a1)
    for (double t2 : a2) out.push_back(std::sqrt(engine.mse_at(Point::two_d(t1, t2))));
  return out;
}

void write_grid_csv(std::ostream& os, const GridSpec& grid, const std::vector<double>& rmse) {
  const auto a1 = grid.axis1();
  const auto a2 = grid.axis2();
  if (rmse.size() != a1.size() * a2.size())
    throw std::invalid_argument("write_grid_csv: value count does not match the grid");
  os << "t1,t2,rmse\n";
  char buf[96];
  std::size_t idx = 0;
  for (double t1 : a1)
    for (double t2 : a2) {
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g\n", t1, t2, rmse[idx++]);
      os << buf;
    }
}

}  // namespace cblup
