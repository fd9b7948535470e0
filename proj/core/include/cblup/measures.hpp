#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cblup/numerics.hpp"

namespace cblup {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// A signed measure on an interval [A,B]: finitely many atoms plus an
/// optional smooth density. Densities are closures evaluated at quadrature
/// nodes, never sampled arrays. Atoms at the endpoints stay atoms; they are
/// never smeared into the density.
class SignedMeasure {
 public:
  SignedMeasure() = default;
  SignedMeasure(double a, double b, QuadratureRule quad);
  /// Support [a,b] with the default quadrature policy (order 16 composite).
  static SignedMeasure zero(double a, double b, double quad_rate = 0.0);
  static SignedMeasure dirac(double a, double b, double location, double weight = 1.0);

  double support_lo() const { return a_; }
  double support_hi() const { return b_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::function<double(double)>& density() const { return density_; }
  bool has_density() const { return static_cast<bool>(density_); }
  const QuadratureRule& quadrature() const { return quad_; }

  /// Adds an atom; locations closer than 1e-12 are merged by weight addition.
  void add_atom(double location, double weight);
  /// Adds `dens` on top of any existing density (closure composition).
  void add_density(std::function<double(double)> dens);

  double total_mass() const;

 private:
  double a_ = 0.0, b_ = 1.0;
  std::vector<Atom> atoms_;
  std::function<double(double)> density_;
  QuadratureRule quad_;
};

/// Integral of g against the measure: atom sums plus quadrature of density*g.
double integrate(const SignedMeasure& m, const std::function<double(double)>& g);

/// Same, but the density integral is split at the given interior breakpoints
/// (for integrands with kinks, e.g. kernel sections t -> K(t,s)).
double integrate(const SignedMeasure& m, const std::function<double(double)>& g,
                 std::span<const double> breakpoints);

SignedMeasure scaled(const SignedMeasure& m, double factor);
SignedMeasure sum(const SignedMeasure& x, const SignedMeasure& y);

/// base + sum_i coeffs[i] * terms[i], with atom merging. Supports must agree.
SignedMeasure axpy(std::span<const double> coeffs, std::span<const SignedMeasure> terms,
                   const SignedMeasure& base);

/// Ordered components acting on y, y', ..., y^{(q)}.
/// All components share the same support interval.
struct VectorMeasure {
  std::vector<SignedMeasure> components;

  int order() const { return static_cast<int>(components.size()) - 1; }
  static VectorMeasure zero(int q, double a, double b, double quad_rate = 0.0);
};

/// sum_i integrate(components[i], gs[i]).
double integrate_vector(const VectorMeasure& vm,
                        std::span<const std::function<double(double)>> gs);

VectorMeasure scaled_vector(const VectorMeasure& m, double factor);

/// base + sum_i coeffs[i] * terms[i], componentwise.
VectorMeasure axpy_vector(std::span<const double> coeffs, std::span<const VectorMeasure> terms,
                          const VectorMeasure& base);

/// One tensor-product term m1(dt1) m2(dt2).
struct TensorTerm {
  SignedMeasure m1, m2;
};

/// A 2-d measure stored as a short sum of tensor-product terms.
struct ProductComponent {
  std::vector<TensorTerm> terms;
  double integrate_separable(const std::function<double(double)>& g1,
                             const std::function<double(double)>& g2) const;
  double total_mass() const;
};

/// Components indexed by derivative pattern (0,0),(1,0),(0,1),(1,1), acting
/// on y, dy/dt1, dy/dt2, d2y/dt1dt2.
struct ProductMeasure2D {
  std::array<ProductComponent, 4> components;
};

/// Flat record for serialization: atom pairs plus density samples at the
/// quadrature nodes.
struct MeasureRecord {
  std::vector<std::array<double, 2>> atoms;            // (location, weight)
  std::vector<std::array<double, 2>> density_samples;  // (node, value)
};

MeasureRecord to_record(const SignedMeasure& m);

}  // namespace cblup
