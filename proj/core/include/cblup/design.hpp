#pragma once

#include <string>
#include <vector>

namespace cblup {

/// Observation site in one or two dimensions (x2 is ignored when dim == 1).
struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
  int dim = 1;

  static Point one_d(double x) { return {x, 0.0, 1}; }
  static Point two_d(double x, double y) { return {x, y, 2}; }
};

bool same_point(const Point& a, const Point& b, double tol = 1e-12);

/// Derivative pattern of an observation: order d1 in the first coordinate,
/// d2 in the second (d2 == 0 for 1-d observations).
struct DerivPattern {
  int d1 = 0;
  int d2 = 0;
  friend bool operator==(const DerivPattern&, const DerivPattern&) = default;
};

/// The canonical pattern order used for flattening: (0,0),(1,0),(0,1),(1,1).
int pattern_rank(const DerivPattern& p);

/// Finite observation layout: sites plus a per-site set of derivative
/// patterns, optionally tagged with the family name it was expanded from.
struct Design {
  std::vector<Point> sites;
  std::vector<std::vector<DerivPattern>> deriv_orders;  // parallel to sites
  std::string descriptor;

  int dim() const { return sites.empty() ? 1 : sites.front().dim; }
  int observation_count() const;

  /// Flattened observation list: all pattern-(0,0) observations in site
  /// order, then pattern (1,0), then (0,1), then (1,1). Weight vectors and
  /// Gram matrices follow this order.
  struct Observation {
    int site = 0;
    DerivPattern pattern;
  };
  std::vector<Observation> flatten() const;

  /// Checks sites pairwise distinct and pattern sets nonempty.
  void validate() const;
};

/// Equidistant 1-d design on [lo,hi]: sites lo + i (hi-lo)/(N-1).
std::vector<double> equidistant_sites(int N, double lo = 0.0, double hi = 1.0);

/// Expands a named family. 1-d families (on [0,1]):
///   xi_N_0   values at N equidistant sites
///   xi_N_2   values at N equidistant sites, derivative at both endpoints
///   xi_N_N   values and derivatives at N equidistant sites
/// 2-d families (on the NxN grid over [0,1]^2):
///   xi_N2_0_0_0            values only
///   xi_N2_4_4_4            values, all three derivative patterns at the 4 corners
///   xi_N2_N2_N2_0          values and both first-order patterns everywhere
///   xi_N2_4Nm4_4Nm4_4Nm4   values everywhere, all derivative patterns at the
///                          4N-4 boundary grid sites
///   xi_N2_N2_N2_N2         all four patterns everywhere
Design design_family(const std::string& tag, int N);

}  // namespace cblup
