#pragma once

#include <functional>
#include <string>
#include <vector>

#include "liedirac/matrix.hpp"

namespace liedirac {

/// One coordinate axis of a chart. Compact axes keep a fixed interval;
/// unbounded axes are truncated to [-R*scale, R*scale] at integration time,
/// where R is the truncation radius.
struct ChartAxis {
  bool compact = false;
  double lo = 0.0;
  double hi = 0.0;
  double scale = 1.0;

  static ChartAxis bounded(double lo, double hi) { return {true, lo, hi, 1.0}; }
  static ChartAxis unbounded(double scale = 1.0) { return {false, 0.0, 0.0, scale}; }
};

/// A parametrization of (a component of) a group together with the density
/// of left Haar measure in these coordinates:
///
///   integral_G f dg  =  sum over charts of
///   integral over the coordinate box of f(to_group(x)) density(x) dx.
///
/// The three bound functions feed the conservative truncation-tail estimate
///   tail(R) <= sum_k [vol(R+k+1) - vol(R+k)] * density_sup(R+k+1)
///                    * exp(-rate^2 * gauge_lower(R+k, p))
/// where vol(r) is the coordinate-box volume at radius r. Each chart
/// documents its own gauge_lower derivation next to its construction.
struct Chart {
  std::string label;
  int param_dim = 0;
  std::vector<ChartAxis> axes;

  std::function<Matrix(const double*)> to_group;
  std::function<double(const double*)> density;

  /// Lower bound for rho_p(g(x)) = |g-1|^p + |g^-1-1|^p over all coordinate
  /// points at chart radius >= r. Unused when every axis is compact.
  std::function<double(double r, int p)> gauge_lower;
  /// Sup of density over the coordinate box at radius r.
  std::function<double(double r)> density_sup;
  /// Chart radius of a given group member (used to widen truncation when an
  /// integrand is centered away from the identity). Optional.
  std::function<double(const Matrix&)> locate_radius;

  bool fully_compact() const {
    for (const auto& a : axes)
      if (!a.compact) return false;
    return true;
  }

  /// Half-diameter of the compact box, the natural "radius" of a chart with
  /// no unbounded axes.
  double compact_radius() const {
    double r = 0.0;
    for (const auto& a : axes)
      if (a.compact) r = std::max(r, 0.5 * (a.hi - a.lo));
    return r;
  }
};

}  // namespace liedirac
