#include "cblup/numerics.hpp"

#include <cmath>
#include <limits>

namespace cblup {

double QuadratureRule::integrate(const std::function<double(double)>& g) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * g(nodes[i]);
  return acc;
}

namespace {

// Nodes and weights on the reference interval (-1,1) by Newton iteration on
// the Legendre recurrence.
void reference_gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
  x.assign(order, 0.0);
  w.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[order - 1 - i] = w[i];
  }
}

}  // namespace

QuadratureRule gauss_legendre(double a, double b, int order) {
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: requires a < b");
  if (order < 1 || order > 64) throw std::invalid_argument("gauss_legendre: order must be in [1,64]");
  std::vector<double> x, w;
  reference_gauss_legendre(order, x, w);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.order = order;
  const double mid = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = mid + hl * x[i];
    rule.weights[i] = hl * w[i];
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, int order, int panels) {
  if (!(a < b)) throw std::invalid_argument("composite_gauss_legendre: requires a < b");
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels must be >= 1");
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.order = order;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const QuadratureRule panel = gauss_legendre(a + p * h, a + (p + 1) * h, order);
    rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return rule;
}

int default_panel_count(double a, double b, double rate) {
  const double needed = std::ceil(std::abs(rate) * (b - a));
  return std::max(4, static_cast<int>(needed));
}

QuadratureRule default_quadrature(double a, double b, double rate) {
  return composite_gauss_legendre(a, b, 16, default_panel_count(a, b, rate));
}

Matrix solve_spd(const Matrix& M, const Matrix& B) {
  if (M.rows() != M.cols()) throw std::invalid_argument("solve_spd: matrix must be square");
  if (M.rows() != B.rows()) throw std::invalid_argument("solve_spd: dimension mismatch");
  const double scale = M.cwiseAbs().maxCoeff();
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(scale, std::numeric_limits<double>::min()))
    throw std::invalid_argument("solve_spd: matrix is not symmetric");
  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefiniteError(
        "solve_spd: leading minor not positive definite (degenerate design, e.g. duplicate sites?)");
  return llt.solve(B);
}

Matrix solve_lu(const Matrix& M, const Matrix& B) {
  if (M.rows() != M.cols()) throw std::invalid_argument("solve_lu: matrix must be square");
  if (M.rows() != B.rows()) throw std::invalid_argument("solve_lu: dimension mismatch");
  Eigen::FullPivLU<Matrix> lu(M);
  if (!lu.isInvertible())
    throw SingularSystemError("solve_lu: system is singular to working precision");
  return lu.solve(B);
}

}  // namespace cblup
