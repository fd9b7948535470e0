#include "cblup/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cblup {

namespace {
constexpr double kAtomMergeTol = 1e-12;
}

SignedMeasure::SignedMeasure(double a, double b, QuadratureRule quad)
    : a_(a), b_(b), quad_(std::move(quad)) {
  if (!(a < b)) throw std::invalid_argument("SignedMeasure: requires a < b");
}

SignedMeasure SignedMeasure::zero(double a, double b, double quad_rate) {
  return SignedMeasure(a, b, default_quadrature(a, b, quad_rate));
}

SignedMeasure SignedMeasure::dirac(double a, double b, double location, double weight) {
  SignedMeasure m = zero(a, b);
  m.add_atom(location, weight);
  return m;
}

void SignedMeasure::add_atom(double location, double weight) {
  if (location < a_ - kAtomMergeTol || location > b_ + kAtomMergeTol)
    throw std::invalid_argument("SignedMeasure: atom outside the support interval");
  for (Atom& atom : atoms_) {
    if (std::abs(atom.location - location) <= kAtomMergeTol) {
      atom.weight += weight;
      return;
    }
  }
  atoms_.push_back({location, weight});
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
}

void SignedMeasure::add_density(std::function<double(double)> dens) {
  if (!dens) return;
  if (!density_) {
    density_ = std::move(dens);
    return;
  }
  auto prev = density_;
  density_ = [prev, next = std::move(dens)](double t) { return prev(t) + next(t); };
}

double SignedMeasure::total_mass() const {
  return integrate(*this, [](double) { return 1.0; });
}

double integrate(const SignedMeasure& m, const std::function<double(double)>& g) {
  return integrate(m, g, std::span<const double>{});
}

double integrate(const SignedMeasure& m, const std::function<double(double)>& g,
                 std::span<const double> breakpoints) {
  double acc = 0.0;
  for (const Atom& atom : m.atoms()) acc += atom.weight * g(atom.location);
  if (!m.has_density()) return acc;
  const auto& dens = m.density();
  auto integrand = [&](double t) { return dens(t) * g(t); };

  std::vector<double> cuts;
  for (double x : breakpoints)
    if (x > m.support_lo() + 1e-14 && x < m.support_hi() - 1e-14) cuts.push_back(x);
  if (cuts.empty()) {
    acc += m.quadrature().integrate(integrand);
    return acc;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double lo = m.support_lo();
  cuts.push_back(m.support_hi());
  for (double hi : cuts) {
    if (hi - lo > 1e-14) {
      const int panels = std::max(2, default_panel_count(lo, hi, 0.0) / 2);
      acc += composite_gauss_legendre(lo, hi, m.quadrature().order > 0 ? m.quadrature().order : 16,
                                      panels)
                 .integrate(integrand);
    }
    lo = hi;
  }
  return acc;
}

SignedMeasure scaled(const SignedMeasure& m, double factor) {
  SignedMeasure out(m.support_lo(), m.support_hi(), m.quadrature());
  for (const Atom& atom : m.atoms()) out.add_atom(atom.location, factor * atom.weight);
  if (m.has_density())
    out.add_density([f = m.density(), factor](double t) { return factor * f(t); });
  return out;
}

SignedMeasure sum(const SignedMeasure& x, const SignedMeasure& y) {
  if (std::abs(x.support_lo() - y.support_lo()) > kAtomMergeTol ||
      std::abs(x.support_hi() - y.support_hi()) > kAtomMergeTol)
    throw std::invalid_argument("measure sum: mismatched supports");
  SignedMeasure out = x;
  for (const Atom& atom : y.atoms()) out.add_atom(atom.location, atom.weight);
  if (y.has_density()) out.add_density(y.density());
  return out;
}

SignedMeasure axpy(std::span<const double> coeffs, std::span<const SignedMeasure> terms,
                   const SignedMeasure& base) {
  if (coeffs.size() != terms.size()) throw std::invalid_argument("axpy: dimension mismatch");
  SignedMeasure out = base;
  for (std::size_t i = 0; i < terms.size(); ++i)
    out = sum(out, scaled(terms[i], coeffs[i]));
  return out;
}

VectorMeasure VectorMeasure::zero(int q, double a, double b, double quad_rate) {
  VectorMeasure vm;
  vm.components.reserve(q + 1);
  for (int i = 0; i <= q; ++i) vm.components.push_back(SignedMeasure::zero(a, b, quad_rate));
  return vm;
}

double integrate_vector(const VectorMeasure& vm,
                        std::span<const std::function<double(double)>> gs) {
  if (gs.size() < vm.components.size())
    throw std::invalid_argument("integrate_vector: missing derivative callable");
  double acc = 0.0;
  for (std::size_t i = 0; i < vm.components.size(); ++i) acc += integrate(vm.components[i], gs[i]);
  return acc;
}

VectorMeasure scaled_vector(const VectorMeasure& m, double factor) {
  VectorMeasure out;
  out.components.reserve(m.components.size());
  for (const SignedMeasure& c : m.components) out.components.push_back(scaled(c, factor));
  return out;
}

VectorMeasure axpy_vector(std::span<const double> coeffs, std::span<const VectorMeasure> terms,
                          const VectorMeasure& base) {
  if (coeffs.size() != terms.size()) throw std::invalid_argument("axpy_vector: dimension mismatch");
  VectorMeasure out = base;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].components.size() != out.components.size())
      throw std::invalid_argument("axpy_vector: component count mismatch");
    for (std::size_t k = 0; k < out.components.size(); ++k)
      out.components[k] = sum(out.components[k], scaled(terms[i].components[k], coeffs[i]));
  }
  return out;
}

double ProductComponent::integrate_separable(const std::function<double(double)>& g1,
                                             const std::function<double(double)>& g2) const {
  double acc = 0.0;
  for (const TensorTerm& term : terms) acc += integrate(term.m1, g1) * integrate(term.m2, g2);
  return acc;
}

double ProductComponent::total_mass() const {
  auto one = [](double) { return 1.0; };
  return integrate_separable(one, one);
}

MeasureRecord to_record(const SignedMeasure& m) {
  MeasureRecord rec;
  for (const Atom& atom : m.atoms()) rec.atoms.push_back({atom.location, atom.weight});
  if (m.has_density()) {
    const auto& quad = m.quadrature();
    const auto& dens = m.density();
    for (double node : quad.nodes) rec.density_samples.push_back({node, dens(node)});
  }
  return rec;
}

}  // namespace cblup
