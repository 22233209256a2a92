#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "liedirac/chart.hpp"
#include "liedirac/matrix.hpp"

namespace liedirac {

enum class GroupFamily {
  kGL,        // all invertible matrices (two components for the built-in sizes)
  kGLPlus,    // positive 1x1 scalars
  kSL,        // determinant one
  kSO,        // rotations
  kUT,        // upper unitriangular (UT(3) is the Heisenberg group)
  kDiagPos,   // positive diagonal
};

/// A catalog entry: ambient size, Lie algebra basis, and integration charts
/// carrying Haar densities. Instances are immutable after construction and
/// shared via GroupPtr.
struct GroupSpec {
  std::string name;   // canonical display name, e.g. "SO(2)", "HEIS"
  GroupFamily family = GroupFamily::kGL;
  int n = 0;          // ambient matrix size
  int dim = 0;        // manifold dimension d
  std::vector<Matrix> algebra_basis;  // d linearly independent matrices
  /// Riemannian inner product on the Lie algebra; the default trace form
  /// tr(X^t Y) calibrates all arc-length and distance bounds.
  std::function<double(const Matrix&, const Matrix&)> inner_product;
  std::vector<Chart> charts;
  double membership_tol = 1e-9;

  double algebra_norm(const Matrix& x) const { return std::sqrt(inner_product(x, x)); }
};

using GroupPtr = std::shared_ptr<const GroupSpec>;

/// Catalog factory. Accepted names (case-insensitive): GL(1), GL(2), GL+(1),
/// SL(2), SO(2), SO(3), UT(2), UT(3), HEIS (= UT(3)), DIAG+(1..3).
/// SO(3), SL(3) and GL(3) expose algebra and membership but carry no
/// integration charts.
GroupPtr make_group(const std::string& name);

/// Names accepted by make_group, for CLI help and error messages.
std::vector<std::string> catalog_names();

struct GroupElement {
  GroupPtr spec;
  Matrix mat;
};

struct AlgebraVector {
  GroupPtr spec;
  std::vector<double> coords;  // d coordinates over spec->algebra_basis
  Matrix mat;                  // sum coords_i * basis_i
};

/// Wraps a matrix as a group element, enforcing the membership tolerance.
GroupElement make_element(const GroupPtr& spec, const Matrix& m);
/// Same, with an explicit tolerance override.
GroupElement make_element(const GroupPtr& spec, const Matrix& m, double tol);

AlgebraVector make_algebra_vector(const GroupPtr& spec, const std::vector<double>& coords);
/// Expands a matrix over the algebra basis (least squares); throws when the
/// residual exceeds tol.
AlgebraVector algebra_from_matrix(const GroupPtr& spec, const Matrix& x, double tol = 1e-9);

/// |g| = sqrt(tr(g^t g)), the entrywise Euclidean gauge.
inline double frobenius_gauge(const Matrix& g) { return g.frobenius(); }

/// ||g|| = max{|g|, |g^-1|}; submultiplicative and invariant under inversion.
double group_norm(const GroupElement& g);
double group_norm(const Matrix& g);

/// Per-family membership defect, 0 for exact members:
///   GL      0 when det != 0 and entries finite, 1 otherwise
///   GL+     |offdiag| + max(0, -x) (+1 when x == 0)
///   SL      |det - 1|
///   SO      |g^t g - 1|_F + |det - 1|
///   UT      |strict lower part|_F + |diag - 1|_F
///   DIAG+   |offdiag|_F + sum max(0, -g_ii) (+1 when any g_ii == 0)
double membership_residual(const Matrix& m, const GroupSpec& spec);

/// exp of the matrix realization. Nilpotent inputs take the exact finite
/// series; everything else scaling-and-squaring with a Taylor core.
GroupElement exp_matrix(const AlgebraVector& x);

/// Principal logarithm; requires the spectrum to avoid the closed negative
/// real axis (unipotent inputs always work). Throws DomainError on the cut.
AlgebraVector log_matrix(const GroupElement& g);

/// |det((1 - e^{-ad X}) / ad X)| on the algebra: the Jacobian density of the
/// exponential chart at X, equal to 1 at X = 0.
double haar_density_exp_chart(const AlgebraVector& x);

/// Raw matrix-level exponential/logarithm used by the operations above.
Matrix matrix_exp(const Matrix& x);
Matrix matrix_log(const Matrix& g);
bool is_nilpotent(const Matrix& x, double tol = 1e-12);

/// Deterministic seeded samples from the group, rejection-shaped so that
/// group norms spread log-uniformly up to max_norm. Used by the estimate
/// sweeps and tests.
std::vector<GroupElement> sample_group(const GroupPtr& spec, int count, double max_norm,
                                       uint64_t seed);

/// Validates the catalog invariants for a spec: basis independence, bracket
/// closure within tol, chart images inside the group. Throws on violation.
void validate_spec(const GroupPtr& spec, double tol = 1e-10);

}  // namespace liedirac
