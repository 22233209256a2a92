#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liedirac/kernel.hpp"

namespace liedirac {

/// A finite-dimensional (or pointwise-sampled) representation. apply must be
/// a homomorphism: apply(g h, v) = apply(g, apply(h, v)).
struct Representation {
  GroupPtr spec;
  int dim = 0;
  std::string name;
  std::function<std::vector<double>(const GroupElement&, const std::vector<double>&)> apply;
  /// Optional fitted moderate-growth constants (C, c):
  /// |apply(g, v)| <= C e^{c d_ub(g)} |v| over the fitted samples.
  std::optional<std::pair<double, double>> growth_constants;
};

Representation trivial_representation(const GroupPtr& spec);
/// The ambient matrix action on R^n.
Representation standard_representation(const GroupPtr& spec);
/// Action on symmetric 2-tensors, S -> g S g^t, in the basis
/// (E11, E12+E21, E22); only for 2x2 catalog groups.
Representation sym2_representation(const GroupPtr& spec);

struct AverageResult {
  std::vector<double> value;
  std::vector<double> error;  // componentwise integration error + tail
  long evaluations = 0;
};

/// Pi(phi_t) v = integral phi_t(g) pi(g) v dg. Divergence (growing values
/// under radius extension) raises NumericError; the superexponential kernel
/// dominates every moderate-growth representation, so this only triggers on
/// pathological inputs.
AverageResult average_representation(const DiracKernel& kernel, const Representation& rep,
                                     const std::vector<double>& v, const IntegrationConfig& cfg);

struct OrbitReport {
  std::vector<double> lhs;  // pi(g) applied to Pi(phi_t) v
  std::vector<double> rhs;  // integral phi_t(g^-1 x) pi(x) v dx
  double deviation = 0.0;
  double combined_error = 0.0;
};

/// Orbit-map identity: the orbit map of an averaged vector is the average
/// against the translated kernel. Both sides are integrated independently.
OrbitReport orbit_identity_check(const DiracKernel& kernel, const Representation& rep,
                                 const std::vector<double>& v, const GroupElement& g,
                                 const IntegrationConfig& cfg);

/// max over samples of |f(g)| e^{n d_ub(g)} where d_ub is a certified
/// distance upper bound (see decomp.hpp). A stable value across expanding
/// sample sets witnesses superexponential decay.
double seminorm_probe(const GroupFn& f, int n_exp, const std::vector<GroupElement>& samples,
                      const std::function<double(const GroupElement&)>& distance_ub);

}  // namespace liedirac
