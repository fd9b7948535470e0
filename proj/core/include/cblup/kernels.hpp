#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cblup/numerics.hpp"

namespace cblup {

/// A kernel of the form K(t,s) = u(min) v(max) with q(t) = u(t)/v(t)
/// strictly increasing. u, v and their first two derivatives are supplied
/// as exact callables; nothing is obtained by numerical differencing.
struct MarkovianFuncs {
  std::function<double(double)> u, du, d2u;
  std::function<double(double)> v, dv, d2v;
  std::string name;  // catalogue id, e.g. "u=t,v=1"
};

/// One-dimensional covariance kernel with analytic partial derivatives
/// K^{(i,j)}(t,s) = d^{i+j} K / dt^i ds^j up to the kernel's smoothness.
///
/// Derivative conventions at the |t-s| kink: the odd first derivatives take
/// their symmetric-limit value 0 on the diagonal, and for the Matern 3/2
/// kernel the mixed derivative on the diagonal is lambda^2. These are the
/// mean-square derivative covariances, so Gram matrices with derivative
/// blocks stay consistent.
class Kernel {
 public:
  enum class Kind { Exponential, Matern32, BrownianMotion, IntegratedBrownian, Markovian };

  static Kernel exponential(double lambda);
  static Kernel matern32(double lambda);
  static Kernel brownian_motion();
  static Kernel integrated_brownian();
  static Kernel markovian(MarkovianFuncs funcs);

  Kind kind() const { return kind_; }
  /// Highest derivative order that is observable in the mean-square sense.
  int smoothness() const;
  double lambda() const { return lambda_; }

  double operator()(double t, double s) const { return deriv(0, 0, t, s); }
  double deriv(int i, int j, double t, double s) const;

  bool has_markovian_form() const;
  /// The (u, v) pair of the kernel, exact for Exponential and BrownianMotion.
  const MarkovianFuncs& markovian_funcs() const;

  std::string name() const;

 private:
  Kernel(Kind k, double lambda) : kind_(k), lambda_(lambda) {}
  Kind kind_;
  double lambda_ = 0.0;
  std::shared_ptr<const MarkovianFuncs> mk_;
};

/// Checks that q(t) = u(t)/v(t) is strictly increasing and v nonvanishing
/// on [a,b], sampling at quadrature nodes. Throws std::invalid_argument.
void validate_markovian_on(const Kernel& k, double a, double b);

/// Trend family f: R -> R^m with analytic derivatives (order 4 is enough
/// for every closed form in the library). Components must be linearly
/// independent on the model interval.
class Trend {
 public:
  using Component = std::function<double(int order, double t)>;

  static Trend const1();
  static Trend linear();     // f(t) = t
  static Trend quadratic();  // f(t) = t^2
  static Trend custom(std::vector<Component> components, std::string name);
  static Trend from_name(const std::string& id);  // "const1" | "t" | "t2"

  int dim() const { return static_cast<int>(components_.size()); }
  /// f^{(order)}(t) as an m-vector.
  Vector eval(int order, double t) const;
  double component(int idx, int order, double t) const { return components_[idx](order, t); }
  bool is_constant_one() const { return name_ == "const1"; }
  const std::string& name() const { return name_; }

 private:
  std::vector<Component> components_;
  std::string name_;
};

/// Covariance of the detrended process: Kt(t,s) = K(t,s) - f(t)^T D f(s),
/// with the derivative rule Kt^{(i,j)} = K^{(i,j)} - f^{(i)T} D f^{(j)}.
class ReducedKernel {
 public:
  ReducedKernel(Kernel k, Trend f, Matrix D);
  double operator()(double t, double s) const { return deriv(0, 0, t, s); }
  double deriv(int i, int j, double t, double s) const;

 private:
  Kernel kernel_;
  Trend trend_;
  Matrix d_;
};

ReducedKernel reduced_kernel(const Kernel& k, const Trend& f, const Matrix& D);

/// Separable two-dimensional kernel K((t1,t2),(s1,s2)) = K1(t1,s1) K2(t2,s2).
class ProductKernel {
 public:
  ProductKernel(Kernel k1, Kernel k2) : k1_(std::move(k1)), k2_(std::move(k2)) {}
  const Kernel& factor1() const { return k1_; }
  const Kernel& factor2() const { return k2_; }
  double eval(double t1, double t2, double s1, double s2) const {
    return k1_(t1, s1) * k2_(t2, s2);
  }
  /// d^{i1+j1} / dt1 ds1 of K1 times d^{i2+j2} / dt2 ds2 of K2.
  double deriv(int i1, int i2, int j1, int j2, double t1, double t2, double s1, double s2) const {
    return k1_.deriv(i1, j1, t1, s1) * k2_.deriv(i2, j2, t2, s2);
  }

 private:
  Kernel k1_, k2_;
};

}  // namespace cblup
