#include "liedirac/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "charts_builtin.hpp"
#include "liedirac/rng.hpp"

namespace liedirac {

namespace {

double trace_form(const Matrix& x, const Matrix& y) {
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) s += x(i, j) * y(i, j);
  return s;
}

Matrix unit_entry(int n, int i, int j) {
  Matrix m(n);
  m(i, j) = 1.0;
  return m;
}

std::vector<Matrix> so_basis(int n) {
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix m(n);
      m(i, j) = -1.0;
      m(j, i) = 1.0;
      basis.push_back(m);
    }
  return basis;
}

std::vector<Matrix> gl_basis(int n) {
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis.push_back(unit_entry(n, i, j));
  return basis;
}

std::vector<Matrix> sl_basis(int n) {
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) basis.push_back(unit_entry(n, i, j));
  for (int i = 0; i + 1 < n; ++i) {
    Matrix m(n);
    m(i, i) = 1.0;
    m(i + 1, i + 1) = -1.0;
    basis.push_back(m);
  }
  return basis;
}

std::vector<Matrix> ut_basis(int n) {
  // Order chosen to match the exponential-chart coordinates: first
  // superdiagonal row by row, then higher diagonals.
  std::vector<Matrix> basis;
  for (int d = 1; d < n; ++d)
    for (int i = 0; i + d < n; ++i) basis.push_back(unit_entry(n, i, i + d));
  return basis;
}

std::vector<Matrix> diag_basis(int n) {
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i) basis.push_back(unit_entry(n, i, i));
  return basis;
}

std::string normalize_name(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(std::toupper(c));
  return s;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"GL(1)", "GL(2)", "GL(3)", "GL+(1)", "SL(2)",    "SL(3)",    "SO(2)",
          "SO(3)", "UT(2)", "UT(3)", "HEIS",   "DIAG+(1)", "DIAG+(2)", "DIAG+(3)"};
}

GroupPtr make_group(const std::string& name) {
  const std::string key = normalize_name(name);
  auto spec = std::make_shared<GroupSpec>();
  spec->inner_product = trace_form;

  if (key == "SO(2)") {
    spec->name = "SO(2)";
    spec->family = GroupFamily::kSO;
    spec->n = 2;
    spec->algebra_basis = so_basis(2);
    spec->charts = detail::make_so2_charts();
  } else if (key == "SO(3)") {
    spec->name = "SO(3)";
    spec->family = GroupFamily::kSO;
    spec->n = 3;
    spec->algebra_basis = so_basis(3);
  } else if (key == "GL(1)") {
    spec->name = "GL(1)";
    spec->family = GroupFamily::kGL;
    spec->n = 1;
    spec->algebra_basis = gl_basis(1);
    spec->charts = detail::make_gl1_charts();
  } else if (key == "GL+(1)" || key == "GLP(1)") {
    spec->name = "GL+(1)";
    spec->family = GroupFamily::kGLPlus;
    spec->n = 1;
    spec->algebra_basis = gl_basis(1);
    spec->charts = detail::make_glplus1_charts();
  } else if (key == "GL(2)") {
    spec->name = "GL(2)";
    spec->family = GroupFamily::kGL;
    spec->n = 2;
    spec->algebra_basis = gl_basis(2);
    spec->charts = detail::make_gl2_charts();
  } else if (key == "GL(3)") {
    spec->name = "GL(3)";
    spec->family = GroupFamily::kGL;
    spec->n = 3;
    spec->algebra_basis = gl_basis(3);
  } else if (key == "SL(2)") {
    spec->name = "SL(2)";
    spec->family = GroupFamily::kSL;
    spec->n = 2;
    spec->algebra_basis = sl_basis(2);
    spec->charts = detail::make_sl2_charts();
  } else if (key == "SL(3)") {
    spec->name = "SL(3)";
    spec->family = GroupFamily::kSL;
    spec->n = 3;
    spec->algebra_basis = sl_basis(3);
  } else if (key == "UT(2)") {
    spec->name = "UT(2)";
    spec->family = GroupFamily::kUT;
    spec->n = 2;
    spec->algebra_basis = ut_basis(2);
    spec->charts = detail::make_ut2_charts();
  } else if (key == "UT(3)" || key == "HEIS") {
    spec->name = "HEIS";
    spec->family = GroupFamily::kUT;
    spec->n = 3;
    spec->algebra_basis = ut_basis(3);
    spec->charts = detail::make_heis_charts();
  } else if (key == "DIAG+(1)" || key == "DIAG+(2)" || key == "DIAG+(3)") {
    const int n = key[6] - '0';
    spec->name = "DIAG+(" + std::to_string(n) + ")";
    spec->family = GroupFamily::kDiagPos;
    spec->n = n;
    spec->algebra_basis = diag_basis(n);
    spec->charts = detail::make_diagpos_charts(n);
  } else {
    throw DomainError("unknown group '" + name + "'; known: GL(1) GL(2) GL(3) GL+(1) SL(2) "
                      "SL(3) SO(2) SO(3) UT(2) UT(3)/HEIS DIAG+(1..3)");
  }

  spec->dim = static_cast<int>(spec->algebra_basis.size());
  return spec;
}

double membership_residual(const Matrix& m, const GroupSpec& spec) {
  if (m.dim() != spec.n || !m.all_finite()) return 1.0;
  switch (spec.family) {
    case GroupFamily::kGL:
      return m.det() == 0.0 ? 1.0 : 0.0;
    case GroupFamily::kGLPlus: {
      const double x = m(0, 0);
      if (x == 0.0) return 1.0;
      return std::max(0.0, -x);
    }
    case GroupFamily::kSL:
      return std::abs(m.det() - 1.0);
    case GroupFamily::kSO: {
      const Matrix gram = m.transpose() * m;
      return frobenius_distance(gram, Matrix::identity(m.dim())) + std::abs(m.det() - 1.0);
    }
    case GroupFamily::kUT: {
      double r = 0.0;
      for (int i = 0; i < m.dim(); ++i) {
        r += (m(i, i) - 1.0) * (m(i, i) - 1.0);
        for (int j = 0; j < i; ++j) r += m(i, j) * m(i, j);
      }
      return std::sqrt(r);
    }
    case GroupFamily::kDiagPos: {
      double off = 0.0;
      double neg = 0.0;
      bool zero = false;
      for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j)
          if (i != j) off += m(i, j) * m(i, j);
        if (m(i, i) == 0.0) zero = true;
        neg += std::max(0.0, -m(i, i));
      }
      return std::sqrt(off) + neg + (zero ? 1.0 : 0.0);
    }
  }
  return 1.0;
}

GroupElement make_element(const GroupPtr& spec, const Matrix& m) {
  return make_element(spec, m, spec->membership_tol);
}

GroupElement make_element(const GroupPtr& spec, const Matrix& m, double tol) {
  const double r = membership_residual(m, *spec);
  if (r > tol)
    throw DomainError("matrix is not a member of " + spec->name + " (residual " +
                      std::to_string(r) + " > tol " + std::to_string(tol) + ")");
  return GroupElement{spec, m};
}

AlgebraVector make_algebra_vector(const GroupPtr& spec, const std::vector<double>& coords) {
  if (static_cast<int>(coords.size()) != spec->dim)
    throw DomainError("algebra coordinate count does not match dim");
  Matrix m(spec->n);
  for (int i = 0; i < spec->dim; ++i) m += spec->algebra_basis[i] * coords[i];
  return AlgebraVector{spec, coords, m};
}

AlgebraVector algebra_from_matrix(const GroupPtr& spec, const Matrix& x, double tol) {
  const int d = spec->dim;
  // Least squares over the basis via the Gram system.
  std::vector<double> gram(static_cast<size_t>(d) * d, 0.0);
  std::vector<double> rhs(d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j)
      gram[static_cast<size_t>(i) * d + j] =
          spec->inner_product(spec->algebra_basis[i], spec->algebra_basis[j]);
    rhs[i] = spec->inner_product(spec->algebra_basis[i], x);
  }
  const std::vector<double> coords = detail::solve_dense(std::move(gram), std::move(rhs), d);
  AlgebraVector v = make_algebra_vector(spec, coords);
  const double residual = frobenius_distance(v.mat, x);
  if (residual > tol * std::max(1.0, x.frobenius()))
    throw DomainError("matrix does not lie in the Lie algebra of " + spec->name +
                      " (projection residual " + std::to_string(residual) + ")");
  return v;
}

double group_norm(const Matrix& g) {
  Matrix inv;
  if (!g.try_inverse(inv))
    throw NumericError("group_norm: singular matrix is not a group member");
  return std::max(g.frobenius(), inv.frobenius());
}

double group_norm(const GroupElement& g) { return group_norm(g.mat); }

std::vector<GroupElement> sample_group(const GroupPtr& spec, int count, double max_norm,
                                       uint64_t seed) {
  std::vector<GroupElement> out;
  out.reserve(count);
  const int n = spec->n;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  if (max_norm < sqrt_n * 1.0001) max_norm = sqrt_n * 1.0001;
  const double max_log = std::log(max_norm);

  for (int idx = 0; idx < count; ++idx) {
    SplitMix64 rng(SplitMix64::mix(seed, static_cast<uint64_t>(idx)));
    Matrix m(n);
    for (int attempt = 0; attempt < 200; ++attempt) {
      switch (spec->family) {
        case GroupFamily::kSO: {
          std::vector<double> coords(spec->dim);
          for (double& c : coords) c = rng.next_uniform(-3.0, 3.0);
          m = matrix_exp(make_algebra_vector(spec, coords).mat);
          break;
        }
        case GroupFamily::kGLPlus: {
          m = Matrix(1);
          m(0, 0) = std::exp(rng.next_uniform(-max_log, max_log));
          break;
        }
        case GroupFamily::kDiagPos: {
          m = Matrix(n);
          const double b = std::max(0.02, max_log - 0.5 * std::log(static_cast<double>(n)));
          for (int i = 0; i < n; ++i) m(i, i) = std::exp(rng.next_uniform(-b, b));
          break;
        }
        case GroupFamily::kUT: {
          m = Matrix::identity(n);
          const double scale = std::exp(rng.next_uniform(std::log(0.05), max_log));
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) m(i, j) = scale * rng.next_uniform(-1.0, 1.0);
          break;
        }
        case GroupFamily::kGL:
        case GroupFamily::kSL: {
          // Log-uniform spread of the overall scale, Gaussian shape.
          const double scale = std::exp(rng.next_uniform(0.0, max_log));
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = scale * rng.next_normal();
          double det = m.det();
          if (std::abs(det) < 1e-3 * std::pow(scale, n)) continue;
          if (spec->family == GroupFamily::kSL) {
            if (det < 0.0) {
              for (int i = 0; i < n; ++i) std::swap(m(i, 0), m(i, 1));
              det = -det;
            }
            m *= std::pow(det, -1.0 / n);
          }
          break;
        }
      }
      if (membership_residual(m, *spec) <= spec->membership_tol &&
          group_norm(m) <= max_norm)
        break;
    }
    out.push_back(GroupElement{spec, m});
  }
  return out;
}

void validate_spec(const GroupPtr& spec, double tol) {
  const int d = spec->dim;
  // Basis independence through the Gram determinant.
  std::vector<double> gram(static_cast<size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      gram[static_cast<size_t>(i) * d + j] =
          spec->inner_product(spec->algebra_basis[i], spec->algebra_basis[j]);
  if (std::abs(detail::det_dense(std::move(gram), d)) < 1e-12)
    throw DomainError(spec->name + ": algebra basis is not linearly independent");

  // Bracket closure: [B_i, B_j] must expand over the basis.
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Matrix br =
          spec->algebra_basis[i] * spec->algebra_basis[j] - spec->algebra_basis[j] * spec->algebra_basis[i];
      algebra_from_matrix(spec, br, tol);  // throws when outside the span
    }

  // Chart images must be group members.
  SplitMix64 rng(0xC0FFEE);
  for (const auto& chart : spec->charts) {
    for (int trial = 0; trial < 32; ++trial) {
      std::vector<double> x(chart.param_dim);
      for (int a = 0; a < chart.param_dim; ++a) {
        const auto& axis = chart.axes[a];
        x[a] = axis.compact ? rng.next_uniform(axis.lo, axis.hi)
                            : rng.next_uniform(-2.0, 2.0) * axis.scale;
      }
      const Matrix g = chart.to_group(x.data());
      if (membership_residual(g, *spec) > tol)
        throw DomainError(spec->name + ": chart '" + chart.label +
                          "' leaves the group (residual above tolerance)");
      if (chart.density(x.data()) < 0.0)
        throw DomainError(spec->name + ": chart '" + chart.label + "' has negative density");
    }
  }
}

}  // namespace liedirac
