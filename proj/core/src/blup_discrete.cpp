#include "cblup/blup_discrete.hpp"

#include <cmath>
#include <stdexcept>

namespace cblup {

int spec_dim(const KernelSpec& k) { return std::holds_alternative<ProductKernel>(k) ? 2 : 1; }

int spec_smoothness(const KernelSpec& k) {
  if (const auto* prod = std::get_if<ProductKernel>(&k))
    return std::min(prod->factor1().smoothness(), prod->factor2().smoothness());
  return std::get<Kernel>(k).smoothness();
}

double obs_covariance(const KernelSpec& k, const Point& a, const DerivPattern& pa,
                      const Point& b, const DerivPattern& pb) {
  if (const auto* prod = std::get_if<ProductKernel>(&k)) {
    return prod->deriv(pa.d1, pa.d2, pb.d1, pb.d2, a.x1, a.x2, b.x1, b.x2);
  }
  if (pa.d2 != 0 || pb.d2 != 0)
    throw std::invalid_argument("obs_covariance: 1-d kernel with 2-d pattern");
  return std::get<Kernel>(k).deriv(pa.d1, pb.d1, a.x1, b.x1);
}

Matrix gram_matrix(const KernelSpec& k, const Design& d) {
  const auto obs = d.flatten();
  const int n = static_cast<int>(obs.size());
  Matrix gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = obs_covariance(k, d.sites[obs[i].site], obs[i].pattern,
                                      d.sites[obs[j].site], obs[j].pattern);
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  return gram;
}

Vector cross_covariance(const KernelSpec& k, const Design& d, const Point& t0,
                        const DerivPattern& p) {
  const auto obs = d.flatten();
  Vector out(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i)
    out[i] = obs_covariance(k, d.sites[obs[i].site], obs[i].pattern, t0, p);
  return out;
}

Vector trend_target(const Trend& f, const Point& t0, const DerivPattern& p) {
  if (t0.dim == 2) {
    if (!f.is_constant_one())
      throw std::invalid_argument("2-d models support the location-scale trend only");
    Vector v(1);
    v[0] = (p.d1 == 0 && p.d2 == 0) ? 1.0 : 0.0;
    return v;
  }
  return f.eval(p.d1, t0.x1);
}

Matrix trend_matrix(const Trend& f, const Design& d) {
  const auto obs = d.flatten();
  Matrix x(obs.size(), f.dim());
  for (std::size_t i = 0; i < obs.size(); ++i)
    x.row(i) = trend_target(f, d.sites[obs[i].site], obs[i].pattern).transpose();
  return x;
}

DiscreteBlupEngine::DiscreteBlupEngine(KernelSpec k, Trend f, Design d)
    : kernel_(std::move(k)), trend_(std::move(f)), design_(std::move(d)) {
  design_.validate();
  obs_ = design_.flatten();
  const int n = static_cast<int>(obs_.size());
  const int m = trend_.dim();
  if (spec_dim(kernel_) != design_.dim())
    throw std::invalid_argument("kernel and design dimensions differ");

  gram_ = gram_matrix(kernel_, design_);
  x_ = trend_matrix(trend_, design_);

  gram_llt_.compute(gram_);
  if (gram_llt_.info() != Eigen::Success)
    throw NotPositiveDefiniteError(
        "observation covariance is not positive definite (degenerate design?)");
  six_ = gram_llt_.solve(x_);

  const Matrix c_mat = x_.transpose() * six_;
  c_llt_.compute(c_mat);
  if (c_llt_.info() != Eigen::Success)
    throw SingularSystemError("trend is not identifiable from the design (rank-deficient X)");
  blue_weights_ = c_llt_.solve(six_.transpose());
  blue_cov_ = c_llt_.solve(Matrix::Identity(m, m));

  Matrix bordered = Matrix::Zero(n + m, n + m);
  bordered.topRightCorner(m, n) = x_.transpose();
  bordered.bottomLeftCorner(n, m) = x_;
  bordered.bottomRightCorner(n, n) = gram_;
  bordered_lu_.compute(bordered);
}

namespace {

double clamp_mse(double mse) {
  if (mse < -1e-12)
    throw std::runtime_error("negative mean squared error beyond roundoff: modeling bug");
  return std::max(mse, 0.0);
}

}  // namespace

BlupSolution DiscreteBlupEngine::solve(const Point& t0, const DerivPattern& p) const {
  const int n = static_cast<int>(obs_.size());
  const int m = trend_.dim();
  BlupSolution sol;
  sol.blue_weights = blue_weights_;
  sol.blue_cov = blue_cov_;

  // Exact interpolation when the target itself is observed: avoids a solve
  // whose answer is known in closed form.
  for (int i = 0; i < n; ++i) {
    if (obs_[i].pattern == p && same_point(design_.sites[obs_[i].site], t0)) {
      sol.weights = Vector::Zero(n);
      sol.weights[i] = 1.0;
      sol.mse = 0.0;
      sol.c = Vector::Zero(m);
      return sol;
    }
  }

  const Vector k_t0 = cross_covariance(kernel_, design_, t0, p);
  const Vector f_t0 = trend_target(trend_, t0, p);
  const Vector zeta = gram_llt_.solve(k_t0);
  sol.c = f_t0 - x_.transpose() * zeta;
  sol.weights = zeta + six_ * c_llt_.solve(sol.c);

  Vector rhs(n + m);
  rhs.head(m) = f_t0;
  rhs.tail(n) = k_t0;
  const double k00 = obs_covariance(kernel_, t0, p, t0, p);
  sol.mse = clamp_mse(k00 - rhs.dot(bordered_lu_.solve(rhs)));
  return sol;
}

double DiscreteBlupEngine::mse_at(const Point& t0, const DerivPattern& p) const {
  const int n = static_cast<int>(obs_.size());
  const int m = trend_.dim();
  for (int i = 0; i < n; ++i)
    if (obs_[i].pattern == p && same_point(design_.sites[obs_[i].site], t0)) return 0.0;
  const Vector k_t0 = cross_covariance(kernel_, design_, t0, p);
  Vector rhs(n + m);
  rhs.head(m) = trend_target(trend_, t0, p);
  rhs.tail(n) = k_t0;
  const double k00 = obs_covariance(kernel_, t0, p, t0, p);
  return clamp_mse(k00 - rhs.dot(bordered_lu_.solve(rhs)));
}

BlupSolution DiscreteBlupEngine::solve_average(
    const std::vector<std::pair<Point, double>>& nu) const {
  const int n = static_cast<int>(obs_.size());
  const int m = trend_.dim();
  const DerivPattern value_pattern{0, 0};
  BlupSolution sol;
  sol.blue_weights = blue_weights_;
  sol.blue_cov = blue_cov_;

  // If every atom sits on an observed site the average itself is observed.
  bool all_on_sites = true;
  Vector direct = Vector::Zero(n);
  for (const auto& [s, w] : nu) {
    bool found = false;
    for (int i = 0; i < n && !found; ++i) {
      if (obs_[i].pattern == value_pattern && same_point(design_.sites[obs_[i].site], s)) {
        direct[i] += w;
        found = true;
      }
    }
    all_on_sites = all_on_sites && found;
  }
  if (all_on_sites) {
    sol.weights = direct;
    sol.mse = 0.0;
    sol.c = Vector::Zero(m);
    return sol;
  }

  Vector k_nu = Vector::Zero(n);
  Vector f_nu = Vector::Zero(m);
  double target_var = 0.0;
  for (const auto& [s, w] : nu) {
    k_nu += w * cross_covariance(kernel_, design_, s, value_pattern);
    f_nu += w * trend_target(trend_, s, value_pattern);
    for (const auto& [s2, w2] : nu)
      target_var += w * w2 * obs_covariance(kernel_, s, value_pattern, s2, value_pattern);
  }
  const Vector zeta = gram_llt_.solve(k_nu);
  sol.c = f_nu - x_.transpose() * zeta;
  sol.weights = zeta + six_ * c_llt_.solve(sol.c);
  sol.mse = clamp_mse(target_var + sol.c.dot(blue_cov_ * f_nu) - sol.weights.dot(k_nu));
  return sol;
}

BlupSolution discrete_blup(const KernelSpec& k, const Trend& f, const Design& d, const Point& t0) {
  return DiscreteBlupEngine(k, f, d).solve(t0);
}

BlupSolution discrete_blup_derivs(const KernelSpec& k, const Trend& f, const Design& d,
                                  const Point& t0, int p) {
  if (p < 0 || p > spec_smoothness(k))
    throw std::invalid_argument("prediction derivative order exceeds kernel smoothness");
  return DiscreteBlupEngine(k, f, d).solve(t0, DerivPattern{p, 0});
}

BlupSolution discrete_blup_target(const KernelSpec& k, const Trend& f, const Design& d,
                                  const Point& t0, const DerivPattern& p) {
  return DiscreteBlupEngine(k, f, d).solve(t0, p);
}

BlupSolution discrete_blup_average(const KernelSpec& k, const Trend& f, const Design& d,
                                   const std::vector<std::pair<Point, double>>& nu) {
  return DiscreteBlupEngine(k, f, d).solve_average(nu);
}

std::pair<Matrix, Matrix> blue_discrete(const KernelSpec& k, const Trend& f, const Design& d) {
  DiscreteBlupEngine engine(k, f, d);
  return {engine.blue_weights(), engine.blue_cov()};
}

Vector kriging_form_weights(const KernelSpec& k, const Trend& f, const Design& d,
                            const Point& t0, const DerivPattern& p) {
  const Matrix gram = gram_matrix(k, d);
  const Matrix x = trend_matrix(f, d);
  const Vector k_t0 = cross_covariance(k, d, t0, p);
  const Vector f_t0 = trend_target(f, t0, p);
  const Vector sig_k = solve_spd(gram, k_t0);
  const Matrix blue_w = solve_spd(x.transpose() * solve_spd(gram, x),
                                  (solve_spd(gram, x)).transpose());  // m x n
  return blue_w.transpose() * f_t0 + sig_k - blue_w.transpose() * (x.transpose() * sig_k);
}

double quadratic_form_mse(const KernelSpec& k, const Design& d, const Vector& w,
                          const Point& t0, const DerivPattern& p) {
  const Matrix gram = gram_matrix(k, d);
  const Vector k_t0 = cross_covariance(k, d, t0, p);
  const double k00 = obs_covariance(k, t0, p, t0, p);
  return k00 - 2.0 * w.dot(k_t0) + w.dot(gram * w);
}

double quadratic_form_mse_average(const KernelSpec& k, const Design& d, const Vector& w,
                                  const std::vector<std::pair<Point, double>>& nu) {
  const Matrix gram = gram_matrix(k, d);
  const DerivPattern value_pattern{0, 0};
  Vector k_nu = Vector::Zero(w.size());
  double target_var = 0.0;
  for (const auto& [s, wt] : nu) {
    k_nu += wt * cross_covariance(k, d, s, value_pattern);
    for (const auto& [s2, wt2] : nu)
      target_var += wt * wt2 * obs_covariance(k, s, value_pattern, s2, value_pattern);
  }
  return target_var - 2.0 * w.dot(k_nu) + w.dot(gram * w);
}

}  // namespace cblup
