#include "cblup/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cblup {

bool same_point(const Point& a, const Point& b, double tol) {
  if (a.dim != b.dim) return false;
  if (std::abs(a.x1 - b.x1) > tol) return false;
  return a.dim == 1 || std::abs(a.x2 - b.x2) <= tol;
}

int pattern_rank(const DerivPattern& p) {
  if (p.d1 == 0 && p.d2 == 0) return 0;
  if (p.d1 == 1 && p.d2 == 0) return 1;
  if (p.d1 == 0 && p.d2 == 1) return 2;
  if (p.d1 == 1 && p.d2 == 1) return 3;
  throw std::invalid_argument("unsupported derivative pattern");
}

int Design::observation_count() const {
  int n = 0;
  for (const auto& pats : deriv_orders) n += static_cast<int>(pats.size());
  return n;
}

std::vector<Design::Observation> Design::flatten() const {
  std::vector<Observation> obs;
  obs.reserve(observation_count());
  for (int rank = 0; rank < 4; ++rank) {
    for (int s = 0; s < static_cast<int>(sites.size()); ++s) {
      for (const DerivPattern& p : deriv_orders[s]) {
        if (pattern_rank(p) == rank) obs.push_back({s, p});
      }
    }
  }
  return obs;
}

void Design::validate() const {
  if (sites.size() != deriv_orders.size())
    throw std::invalid_argument("design: sites and deriv_orders must be parallel");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (deriv_orders[i].empty())
      throw std::invalid_argument("design: every site needs a nonempty pattern set");
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      if (same_point(sites[i], sites[j]))
        throw std::invalid_argument("design: duplicate sites");
    }
  }
}

std::vector<double> equidistant_sites(int N, double lo, double hi) {
  if (N < 2) throw std::invalid_argument("equidistant_sites: N must be >= 2");
  std::vector<double> s(N);
  for (int i = 0; i < N; ++i) s[i] = lo + i * (hi - lo) / (N - 1);
  return s;
}

namespace {

Design grid_design(int N, const std::string& tag) {
  Design d;
  d.descriptor = tag;
  const std::vector<double> s = equidistant_sites(N);
  for (double x : s)
    for (double y : s) {
      d.sites.push_back(Point::two_d(x, y));
      d.deriv_orders.push_back({DerivPattern{0, 0}});
    }
  return d;
}

bool on_boundary(const Point& p) {
  auto edge = [](double x) { return x == 0.0 || x == 1.0; };
  return edge(p.x1) || edge(p.x2);
}

bool is_corner(const Point& p) {
  auto edge = [](double x) { return x == 0.0 || x == 1.0; };
  return edge(p.x1) && edge(p.x2);
}

void add_patterns_where(Design& d, bool (*pred)(const Point&)) {
  for (std::size_t i = 0; i < d.sites.size(); ++i)
    if (pred(d.sites[i])) {
      d.deriv_orders[i].push_back({1, 0});
      d.deriv_orders[i].push_back({0, 1});
      d.deriv_orders[i].push_back({1, 1});
    }
}

}  // namespace

Design design_family(const std::string& tag, int N) {
  if (N < 2) throw std::invalid_argument("design_family: N must be >= 2");

  if (tag == "xi_N_0" || tag == "xi_N_2" || tag == "xi_N_N") {
    Design d;
    d.descriptor = tag;
    for (double t : equidistant_sites(N)) {
      d.sites.push_back(Point::one_d(t));
      std::vector<DerivPattern> pats = {DerivPattern{0, 0}};
      if (tag == "xi_N_N" || (tag == "xi_N_2" && (t == 0.0 || t == 1.0)))
        pats.push_back(DerivPattern{1, 0});
      d.deriv_orders.push_back(std::move(pats));
    }
    return d;
  }

  if (tag == "xi_N2_0_0_0") return grid_design(N, tag);
  if (tag == "xi_N2_4_4_4") {
    Design d = grid_design(N, tag);
    add_patterns_where(d, is_corner);
    return d;
  }
  if (tag == "xi_N2_N2_N2_0") {
    Design d = grid_design(N, tag);
    for (auto& pats : d.deriv_orders) {
      pats.push_back({1, 0});
      pats.push_back({0, 1});
    }
    return d;
  }
  if (tag == "xi_N2_4Nm4_4Nm4_4Nm4") {
    Design d = grid_design(N, tag);
    add_patterns_where(d, on_boundary);
    return d;
  }
  if (tag == "xi_N2_N2_N2_N2") {
    Design d = grid_design(N, tag);
    for (auto& pats : d.deriv_orders) {
      pats.push_back({1, 0});
      pats.push_back({0, 1});
      pats.push_back({1, 1});
    }
    return d;
  }
  throw std::invalid_argument("design_family: unknown tag " + tag);
}

}  // namespace cblup
