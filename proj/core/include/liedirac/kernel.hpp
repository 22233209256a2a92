#pragma once

#include <vector>

#include "liedirac/integrate.hpp"

namespace liedirac {

/// The gauge rho_p(g) = |g-1|^p + |g^-1-1|^p with even exponent p >= 2.
/// The default p = 4n covers every group in the catalog; p = 2 is the
/// reductive-guarantee variant and is accepted for all groups.
struct Gauge {
  GroupPtr spec;
  int exponent = 0;
};

/// exponent 0 picks the default 4n.
Gauge make_gauge(const GroupPtr& spec, int exponent = 0);

/// rho_p(g); zero exactly at the identity, invariant under inversion.
double gauge_eval(const Gauge& gauge, const GroupElement& g);
double gauge_eval(const Gauge& gauge, const Matrix& g);

/// The normalized kernel phi_t(g) = C_t exp(-t^2 rho_p(g)). The constant
/// C_t is computed once with the stored configuration; its error propagates
/// linearly into every downstream quantity.
struct DiracKernel {
  Gauge gauge;
  double t = 0.0;
  double normalization = 0.0;        // C_t
  double normalization_error = 0.0;  // absolute error on C_t
  IntegrationConfig cfg_used;

  /// |integral phi_t dg - 1| is bounded by this.
  double mass_defect_bound() const {
    return normalization > 0.0 ? normalization_error / normalization : 0.0;
  }
};

/// C_t = 1 / integral_G exp(-t^2 rho_p) dg. Sets the decay hint on the given
/// config automatically.
DiracKernel normalize(const Gauge& gauge, double t, const IntegrationConfig& cfg);

/// C_t e^{-t^2 rho_p(g)}: positive everywhere, maximal at the identity.
double kernel_eval(const DiracKernel& kernel, const GroupElement& g);
double kernel_eval(const DiracKernel& kernel, const Matrix& g);

/// Dirac-sequence verification report. Neighborhoods of the identity are
/// gauge balls {rho_2(g) <= r^2}; tail_mass(i,j) is the phi_{t_i} mass
/// outside the ball of radius radii[j].
struct ConcentrationReport {
  std::vector<double> t_grid;
  std::vector<double> radii;
  std::vector<double> mass;        // integral of phi_t, recomputed on a refined grid
  std::vector<double> mass_error;
  std::vector<double> tail_mass;       // row-major [t][radius]
  std::vector<double> tail_error;
  std::vector<char> monotone_in_t;  // per radius: strictly decreasing along t_grid

  double tail(size_t ti, size_t ri) const { return tail_mass[ti * radii.size() + ri]; }
  double tail_err(size_t ti, size_t ri) const { return tail_error[ti * radii.size() + ri]; }
};

/// Checks the three Dirac-sequence conditions on a grid of t values:
/// positivity holds by construction, unit mass is re-integrated on a refined
/// grid, and concentration is measured as tail mass outside gauge balls.
/// t_grid must be strictly increasing.
ConcentrationReport dirac_check(const Gauge& gauge, const std::vector<double>& t_grid,
                                const std::vector<double>& radii, const IntegrationConfig& cfg);

struct ConvolutionResult {
  double value = 0.0;
  double error = 0.0;  // integration error estimate plus tail bound
};

/// (phi_t * f)(at) = integral phi_t(x) f(x^-1 at) dx for bounded continuous f.
ConvolutionResult convolve(const DiracKernel& kernel, const GroupFn& f, const GroupElement& at,
                           const IntegrationConfig& cfg);

}  // namespace liedirac
