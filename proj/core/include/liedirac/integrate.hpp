#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "liedirac/group.hpp"

namespace liedirac {

/// Controls for integration against left Haar measure. Identical configs
/// (including seed and thread count-independent reductions) produce
/// bit-identical results.
struct IntegrationConfig {
  enum class Method { kTensorQuadrature, kMonteCarlo };

  Method method = Method::kTensorQuadrature;
  /// Gauss-Legendre points per axis; 0 picks 513/129/65/33 for charts of
  /// dimension 1/2/3/4.
  int points_per_axis = 0;
  /// Monte Carlo sample count per chart.
  long samples = 200000;
  uint64_t seed = 0x1905;
  /// Coordinate-box truncation radius for unbounded axes; <= 0 derives it
  /// from the decay hint and tail_tol.
  double truncation_radius = 0.0;
  /// Extra radius added on top of the automatic choice, for integrands
  /// centered away from the identity.
  double radius_pad = 0.0;
  /// Confidence level of Monte Carlo error bars.
  double confidence = 0.95;
  /// Target for the analytic truncation-tail bound when auto-truncating.
  double tail_tol = 1e-12;
  /// Worker threads for integrand evaluation; 0 = hardware concurrency.
  /// Results do not depend on this value.
  int threads = 0;
  /// Decay hint: the integrand is dominated by exp(-decay_rate^2 * rho_p)
  /// with p = decay_exponent. Required for automatic truncation on
  /// noncompact groups and used to scale the importance sampler.
  double decay_rate = 0.0;
  int decay_exponent = 0;
  /// Importance-sampler width in chart coordinates; 0 derives it from the
  /// decay hint (or uses a wide default).
  double importance_scale = 0.0;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  double truncated_tail_bound = 0.0;
};

/// Componentwise result of a vector-valued integral sharing one evaluation
/// sweep.
struct VectorIntegralResult {
  std::vector<double> value;
  std::vector<double> error_estimate;
  long evaluations = 0;
  double truncated_tail_bound = 0.0;
};

using GroupFn = std::function<double(const GroupElement&)>;
using GroupVectorFn = std::function<void(const GroupElement&, double* out)>;

/// integral_G f dg over the spec's built-in charts. Tensor quadrature
/// reports |fine - coarse| as the error estimate; Monte Carlo reports a
/// confidence-scaled standard error. The analytic truncation tail is
/// reported separately and never folded into the value.
///
/// Throws NumericError when f produces a non-finite value (the failing chart
/// and coordinates are included in the message) and DomainError when
/// truncation cannot be resolved.
IntegralResult integrate(const GroupFn& f, const GroupPtr& spec, const IntegrationConfig& cfg);

/// Same engine over an explicit chart list (used to integrate over
/// sub-regions, e.g. gauge-ball complements).
IntegralResult integrate_over(const std::vector<Chart>& charts, const GroupPtr& spec,
                              const GroupFn& f, const IntegrationConfig& cfg);

/// Vector-valued integral; one evaluation of f fills all components.
VectorIntegralResult integrate_components(const GroupVectorFn& f, int components,
                                          const GroupPtr& spec, const IntegrationConfig& cfg);

/// Smallest truncation radius whose analytic tail bound for the integrand
/// class exp(-rate^2 * rho_p) is <= tol, maximized over the spec's charts.
/// Fully compact charts contribute their fixed box radius.
double truncation_radius(double rate, int exponent, const GroupPtr& spec, double tol);

struct InvarianceReport {
  double lhs = 0.0;       // integral of f(h g)
  double rhs = 0.0;       // integral of f(g)
  double deviation = 0.0;
  double combined_error = 0.0;  // sum of both error estimates and tails
};

/// Validates the chart Haar densities: integral f(h g) dg must equal
/// integral f(g) dg.
InvarianceReport left_invariance_check(const GroupFn& f, const GroupElement& h,
                                       const GroupPtr& spec, const IntegrationConfig& cfg);

}  // namespace liedirac
