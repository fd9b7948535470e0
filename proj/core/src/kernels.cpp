#include "cblup/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace cblup {

Kernel Kernel::exponential(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("exponential kernel: lambda must be > 0");
  Kernel k(Kind::Exponential, lambda);
  auto mk = std::make_shared<MarkovianFuncs>();
  mk->u = [lambda](double t) { return std::exp(lambda * t); };
  mk->du = [lambda](double t) { return lambda * std::exp(lambda * t); };
  mk->d2u = [lambda](double t) { return lambda * lambda * std::exp(lambda * t); };
  mk->v = [lambda](double t) { return std::exp(-lambda * t); };
  mk->dv = [lambda](double t) { return -lambda * std::exp(-lambda * t); };
  mk->d2v = [lambda](double t) { return lambda * lambda * std::exp(-lambda * t); };
  mk->name = "u=e^{lt},v=e^{-lt}";
  k.mk_ = std::move(mk);
  return k;
}

Kernel Kernel::matern32(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("matern32 kernel: lambda must be > 0");
  return Kernel(Kind::Matern32, lambda);
}

Kernel Kernel::brownian_motion() {
  Kernel k(Kind::BrownianMotion, 0.0);
  auto mk = std::make_shared<MarkovianFuncs>();
  mk->u = [](double t) { return t; };
  mk->du = [](double) { return 1.0; };
  mk->d2u = [](double) { return 0.0; };
  mk->v = [](double) { return 1.0; };
  mk->dv = [](double) { return 0.0; };
  mk->d2v = [](double) { return 0.0; };
  mk->name = "u=t,v=1";
  k.mk_ = std::move(mk);
  return k;
}

Kernel Kernel::integrated_brownian() { return Kernel(Kind::IntegratedBrownian, 0.0); }

Kernel Kernel::markovian(MarkovianFuncs funcs) {
  Kernel k(Kind::Markovian, 0.0);
  k.mk_ = std::make_shared<MarkovianFuncs>(std::move(funcs));
  return k;
}

int Kernel::smoothness() const {
  switch (kind_) {
    case Kind::Matern32:
    case Kind::IntegratedBrownian:
      return 1;
    default:
      return 0;
  }
}

bool Kernel::has_markovian_form() const { return mk_ != nullptr; }

const MarkovianFuncs& Kernel::markovian_funcs() const {
  if (!mk_) throw std::logic_error("kernel has no markovian (u,v) form");
  return *mk_;
}

std::string Kernel::name() const {
  switch (kind_) {
    case Kind::Exponential: return "exponential";
    case Kind::Matern32: return "matern32";
    case Kind::BrownianMotion: return "brownian";
    case Kind::IntegratedBrownian: return "integrated-brownian";
    case Kind::Markovian: return "markovian(" + mk_->name + ")";
  }
  return "?";
}

double Kernel::deriv(int i, int j, double t, double s) const {
  if (i < 0 || j < 0) throw std::invalid_argument("kernel derivative orders must be >= 0");
  if (i > smoothness() || j > smoothness())
    throw std::invalid_argument("derivative order exceeds kernel smoothness");
  switch (kind_) {
    case Kind::Exponential:
      return std::exp(-lambda_ * std::abs(t - s));
    case Kind::BrownianMotion:
      return std::min(t, s);
    case Kind::Markovian: {
      const double lo = std::min(t, s), hi = std::max(t, s);
      return mk_->u(lo) * mk_->v(hi);
    }
    case Kind::Matern32: {
      const double h = t - s;
      const double a = std::abs(h);
      const double e = std::exp(-lambda_ * a);
      const double l2 = lambda_ * lambda_;
      if (i == 0 && j == 0) return (1.0 + lambda_ * a) * e;
      if (i == 1 && j == 0) return -l2 * h * e;
      if (i == 0 && j == 1) return l2 * h * e;
      return l2 * (1.0 - lambda_ * a) * e;  // i == j == 1
    }
    case Kind::IntegratedBrownian: {
      const double lo = std::min(t, s), hi = std::max(t, s);
      if (i == 0 && j == 0) return lo * lo * (3.0 * hi - lo) / 6.0;
      if (i == 1 && j == 1) return lo;
      if (i == 1 && j == 0) return (t <= s) ? t * s - 0.5 * t * t : 0.5 * s * s;
      return (s <= t) ? s * t - 0.5 * s * s : 0.5 * t * t;  // i=0, j=1
    }
  }
  return 0.0;
}

void validate_markovian_on(const Kernel& k, double a, double b) {
  const MarkovianFuncs& f = k.markovian_funcs();
  const QuadratureRule rule = composite_gauss_legendre(a, b, 16, 8);
  double prev_q = -std::numeric_limits<double>::infinity();
  auto check_point = [&](double t) {
    const double vt = f.v(t);
    if (std::abs(vt) < 1e-14) throw std::invalid_argument("markovian kernel: v vanishes on the interval");
    const double q = f.u(t) / vt;
    const double qp = (f.du(t) * vt - f.u(t) * f.dv(t)) / (vt * vt);
    if (!(qp > 0)) throw std::invalid_argument("markovian kernel: q = u/v is not strictly increasing");
    if (!(q > prev_q)) throw std::invalid_argument("markovian kernel: q = u/v is not strictly increasing");
    prev_q = q;
  };
  check_point(a);
  for (double t : rule.nodes) check_point(t);
  check_point(b);
}

Trend Trend::const1() {
  Trend f;
  f.components_ = {[](int order, double) { return order == 0 ? 1.0 : 0.0; }};
  f.name_ = "const1";
  return f;
}

Trend Trend::linear() {
  Trend f;
  f.components_ = {[](int order, double t) {
    if (order == 0) return t;
    return order == 1 ? 1.0 : 0.0;
  }};
  f.name_ = "t";
  return f;
}

Trend Trend::quadratic() {
  Trend f;
  f.components_ = {[](int order, double t) {
    switch (order) {
      case 0: return t * t;
      case 1: return 2.0 * t;
      case 2: return 2.0;
      default: return 0.0;
    }
  }};
  f.name_ = "t2";
  return f;
}

Trend Trend::custom(std::vector<Component> components, std::string name) {
  if (components.empty()) throw std::invalid_argument("trend needs at least one component");
  Trend f;
  f.components_ = std::move(components);
  f.name_ = std::move(name);
  return f;
}

Trend Trend::from_name(const std::string& id) {
  if (id == "const1") return const1();
  if (id == "t") return linear();
  if (id == "t2") return quadratic();
  throw std::invalid_argument("unknown trend id: " + id);
}

Vector Trend::eval(int order, double t) const {
  Vector out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = components_[i](order, t);
  return out;
}

ReducedKernel::ReducedKernel(Kernel k, Trend f, Matrix D)
    : kernel_(std::move(k)), trend_(std::move(f)), d_(std::move(D)) {
  if (d_.rows() != trend_.dim() || d_.cols() != trend_.dim())
    throw std::invalid_argument("reduced_kernel: D must be m x m for an m-component trend");
  const double scale = std::max(d_.cwiseAbs().maxCoeff(), 1e-300);
  if ((d_ - d_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("reduced_kernel: D must be symmetric");
}

double ReducedKernel::deriv(int i, int j, double t, double s) const {
  const Vector fi = trend_.eval(i, t);
  const Vector fj = trend_.eval(j, s);
  return kernel_.deriv(i, j, t, s) - fi.dot(d_ * fj);
}

ReducedKernel reduced_kernel(const Kernel& k, const Trend& f, const Matrix& D) {
  return ReducedKernel(k, f, D);
}

}  // namespace cblup
