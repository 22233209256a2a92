#pragma once

#include <complex>
#include <string>
#include <vector>

#include "liedirac/group.hpp"

namespace liedirac {

/// Multiplicative Jordan-Chevalley data: g = u r = r u with u unipotent and
/// r semisimple. p_basis holds the generalized-eigenbasis change matrix
/// under this module's normalization convention: chain generators have unit
/// norm and the remaining chain vectors are their unscaled images under
/// (g - lambda); simple eigenvectors have unit norm.
struct JordanChevalley {
  Matrix u;
  Matrix r;
  ComplexMatrix p_basis;
  double residual_product = 0.0;  // |u r - g|
  double residual_commute = 0.0;  // |u r - r u|
  std::vector<std::complex<double>> eigenvalues;
};

/// Requires eigenvalue clusters separated by more than cluster_tol (an
/// "ill-conditioned spectrum" error reports the offending gap otherwise)
/// and an invertible input.
JordanChevalley jordan_chevalley(const Matrix& g, double cluster_tol = 1e-6);

/// Finite Mercator series sum_{k=1}^{n-1} (-1)^{k+1} (u-1)^k / k.
/// Errors on non-unipotent input; the result is nilpotent.
Matrix unipotent_log(const Matrix& u, double tol = 1e-8);

/// A certified upper bound for the Riemannian distance d(g, 1) under the
/// left-invariant trace-form metric. The bound is the arc length of an
/// explicit piecewise one-parameter path: each generator X contributes the
/// segment tau -> (previous endpoint) exp(tau X) of length |X|.
struct DistanceBound {
  GroupElement g;
  double d_ub = 0.0;
  double d_ub_unipotent = 0.0;
  double d_ub_reductive = 0.0;
  std::vector<Matrix> path;  // segment generators, identity to g
  std::string path_description;
};

/// Compact groups use the rotation generator, unipotent groups the nilpotent
/// logarithm, and GL/SL go through Jordan-Chevalley plus a polar path for
/// the semisimple factor. Elements outside the identity component have no
/// connecting path and raise DomainError.
DistanceBound distance_upper_bound(const GroupElement& g);

/// Product of exp over the path segments; must reproduce bound.g.
Matrix path_endpoint(const DistanceBound& bound);

/// Numerical arc length of the certified path: per segment the speed
/// |gamma^-1 gamma'| is integrated with a trapezoid rule on `steps` nodes
/// using central differences. Agrees with d_ub up to differencing error.
double path_length_numeric(const DistanceBound& bound, int steps = 64);

struct GrowthReport {
  double fitted_R = 0.0;
  long violations = 0;
  long samples = 0;
};

/// Smallest grid constant R with
///   n_exp * d_ub(g) <= log R + R ||g||^{3n} + R log ||g||
/// for every sample (log-domain comparison throughout).
GrowthReport growth_bound_check(const std::vector<GroupElement>& samples, int n_exp);

struct BasisNormReport {
  long violations = 0;
  long samples = 0;
  double worst_ratio = 0.0;  // max |P|_F^2 / (n 2^n ||g||^2)
};

/// Checks |P|_F^2 <= n 2^n ||g||^2 under the module's P normalization.
BasisNormReport basis_norm_check(const std::vector<GroupElement>& samples,
                                 double cluster_tol = 1e-6);

struct ComparabilityReport {
  double c_fit = 0.0;  // fitted slope for log||g|| <= c d_ub(g) + C
  double C_fit = 0.0;
  bool holds = false;
  double C_low = 0.0;  // observational only: min residual at the same slope
};

/// Upper comparability of log||g|| against the certified distance bound on
/// reductive catalog groups. The lower inequality is only observational
/// because d_ub >= d.
ComparabilityReport comparability_check(const std::vector<GroupElement>& samples);

}  // namespace liedirac
