#include "cblup/verify.hpp"

#include <cmath>
#include <random>

namespace cblup {

std::vector<double> uniform_grid(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + i * (b - a) / (n - 1);
  return g;
}

double residual_scan(const Kernel& k, const VectorMeasure& zeta,
                     const std::vector<std::function<double(double)>>& rhs,
                     std::span<const double> s_grid) {
  const int orders = static_cast<int>(rhs.size());
  double worst = 0.0;
  for (int j = 0; j < orders; ++j)
    for (double s : s_grid)
      worst = std::max(worst, std::abs(vector_kernel_apply(k, zeta, j, s) - rhs[j](s)));
  return worst;
}

namespace {

struct SampledObs {
  double site = 0.0;
  int order = 0;
  double weight = 0.0;  // predictor weight (0 for the target entry)
};

McResult run_mc(const Kernel& k, const Trend& f, const Vector& theta,
                const std::vector<SampledObs>& obs, double t0, int p, const McConfig& cfg) {
  if (cfg.sample_count < 1000)
    throw std::invalid_argument("mc_mse: sample_count must be at least 1000");
  const int n = static_cast<int>(obs.size()) + 1;  // + target
  Matrix cov(n, n);
  Vector mean(n);
  auto site_of = [&](int i) { return i + 1 < n ? obs[i].site : t0; };
  auto order_of = [&](int i) { return i + 1 < n ? obs[i].order : p; };
  for (int i = 0; i < n; ++i) {
    mean[i] = f.eval(order_of(i), site_of(i)).dot(theta);
    for (int j = i; j < n; ++j) {
      cov(i, j) = k.deriv(order_of(i), order_of(j), site_of(i), site_of(j));
      cov(j, i) = cov(i, j);
    }
  }

  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) {
    // Dense discretizations of smooth kernels are near singular; lift the
    // diagonal for sampling only.
    cov.diagonal().array() += 1e-12 * std::max(1.0, cov.diagonal().maxCoeff());
    llt.compute(cov);
    if (llt.info() != Eigen::Success)
      throw NotPositiveDefiniteError("mc_mse: discretized covariance is not positive definite");
  }
  const Matrix chol = llt.matrixL();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector z(n), y(n);
  double sum = 0.0, sum_sq = 0.0;
  for (int draw = 0; draw < cfg.sample_count; ++draw) {
    for (int i = 0; i < n; ++i) z[i] = gauss(rng);
    y = mean + chol * z;
    double pred = 0.0;
    for (int i = 0; i + 1 < n; ++i) pred += obs[i].weight * y[i];
    const double err = y[n - 1] - pred;
    const double sq = err * err;
    sum += sq;
    sum_sq += sq * sq;
  }
  McResult res;
  res.dimension = n;
  res.empirical_mse = sum / cfg.sample_count;
  const double var_sq =
      std::max(0.0, sum_sq / cfg.sample_count - res.empirical_mse * res.empirical_mse);
  res.standard_error = std::sqrt(var_sq / cfg.sample_count);
  return res;
}

}  // namespace

McResult mc_mse(const Kernel& k, const Trend& f, const Vector& theta,
                const VectorMeasure& predictor, double t0, int p, const McConfig& cfg) {
  std::vector<SampledObs> obs;
  for (std::size_t i = 0; i < predictor.components.size(); ++i) {
    const SignedMeasure& comp = predictor.components[i];
    for (const Atom& atom : comp.atoms())
      obs.push_back({atom.location, static_cast<int>(i), atom.weight});
    if (comp.has_density()) {
      const QuadratureRule& quad = comp.quadrature();
      const auto& dens = comp.density();
      for (std::size_t q = 0; q < quad.nodes.size(); ++q)
        obs.push_back({quad.nodes[q], static_cast<int>(i), dens(quad.nodes[q]) * quad.weights[q]});
    }
  }
  return run_mc(k, f, theta, obs, t0, p, cfg);
}

McResult mc_mse_discrete(const KernelSpec& k, const Trend& f, const Vector& theta,
                         const Design& d, const Vector& weights, const Point& t0,
                         const DerivPattern& p, const McConfig& cfg) {
  if (spec_dim(k) != 1)
    throw std::invalid_argument("mc_mse_discrete: only 1-d designs are sampled");
  const auto flat = d.flatten();
  if (static_cast<int>(flat.size()) != weights.size())
    throw std::invalid_argument("mc_mse_discrete: weights do not match the design");
  std::vector<SampledObs> obs;
  for (std::size_t i = 0; i < flat.size(); ++i)
    obs.push_back({d.sites[flat[i].site].x1, flat[i].pattern.d1, weights[static_cast<int>(i)]});
  return run_mc(std::get<Kernel>(k), f, theta, obs, t0.x1, p.d1, cfg);
}

std::vector<double> fine_grid_limit(const KernelSpec& k, const Trend& f, const Point& t0,
                                    std::span<const int> Ns) {
  std::vector<double> out;
  out.reserve(Ns.size());
  for (std::size_t i = 0; i + 1 < Ns.size(); ++i)
    if (Ns[i + 1] <= Ns[i]) throw std::invalid_argument("fine_grid_limit: Ns must increase");
  for (int n : Ns) {
    const Design d = design_family(spec_dim(k) == 1 ? "xi_N_0" : "xi_N2_0_0_0", n);
    out.push_back(discrete_blup(k, f, d, t0).mse);
  }
  return out;
}

}  // namespace cblup
