#include "liedirac/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "eig_small.hpp"

namespace liedirac {

namespace {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

ComplexMatrix cm_identity(int n) { return ComplexMatrix::identity(n); }

CVec cm_apply(const ComplexMatrix& m, const CVec& v) {
  const int n = m.dim();
  CVec r(n, cd(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    cd s(0.0, 0.0);
    for (int j = 0; j < n; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

double cvec_norm(const CVec& v) {
  double s = 0.0;
  for (const cd& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Remove the span of `basis` (assumed orthonormal) from v.
void project_out(CVec& v, const std::vector<CVec>& basis) {
  const int n = static_cast<int>(v.size());
  for (const CVec& u : basis) {
    cd proj(0.0, 0.0);
    for (int i = 0; i < n; ++i) proj += std::conj(u[i]) * v[i];
    for (int i = 0; i < n; ++i) v[i] -= proj * u[i];
  }
}

void append_orthonormalized(std::vector<CVec>& basis, CVec v) {
  project_out(v, basis);
  const double nrm = cvec_norm(v);
  if (nrm < 1e-12) return;
  for (cd& x : v) x /= nrm;
  basis.push_back(std::move(v));
}

struct Cluster {
  cd center;
  int multiplicity = 0;
};

std::vector<Cluster> cluster_eigenvalues(const std::vector<cd>& ev, double cluster_tol,
                                         double scale) {
  const int n = static_cast<int>(ev.size());
  std::vector<Cluster> clusters;
  // Transitive closure by repeated sweeps (n <= 8).
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(ev[i] - ev[j]) <= cluster_tol && label[j] != label[i]) {
          const int m = std::min(label[i], label[j]);
          label[i] = label[j] = m;
          changed = true;
        }
  }
  for (int root = 0; root < n; ++root) {
    cd sum(0.0, 0.0);
    int count = 0;
    for (int i = 0; i < n; ++i)
      if (label[i] == root) {
        sum += ev[i];
        ++count;
      }
    if (count > 0) clusters.push_back({sum / static_cast<double>(count), count});
  }
  // Require a clean separation margin between clusters.
  double min_gap = 1e300;
  for (size_t a = 0; a < clusters.size(); ++a)
    for (size_t b = a + 1; b < clusters.size(); ++b)
      min_gap = std::min(min_gap, std::abs(clusters[a].center - clusters[b].center));
  if (clusters.size() > 1 && min_gap <= 10.0 * cluster_tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "ill-conditioned spectrum: cluster gap %.3e within 10x cluster_tol %.3e",
                  min_gap, cluster_tol);
    throw NumericError(buf);
  }
  (void)scale;
  return clusters;
}

}  // namespace

JordanChevalley jordan_chevalley(const Matrix& g, double cluster_tol) {
  const int n = g.dim();
  const double scale = std::max(1.0, g.max_abs());
  if (std::abs(g.det()) < 1e-14 * std::pow(scale, n))
    throw NumericError("jordan_chevalley: matrix is singular");

  const std::vector<cd> ev = detail::eigenvalues(g);
  const std::vector<Cluster> clusters = cluster_eigenvalues(ev, cluster_tol, scale);

  const ComplexMatrix a(g);
  ComplexMatrix p(n);
  std::vector<cd> diag(n);
  ComplexMatrix nilshift(n);  // superdiagonal ones inside Jordan blocks
  int col = 0;

  for (const Cluster& cl : clusters) {
    // Powers of (a - lambda) and their nullspaces.
    ComplexMatrix shifted = a;
    for (int i = 0; i < n; ++i) shifted(i, i) -= cl.center;

    std::vector<std::vector<CVec>> kernels;  // kernels[j] = null((a-l)^{j+1})
    ComplexMatrix power = shifted;
    int depth = 0;
    for (int j = 0; j < cl.multiplicity; ++j) {
      kernels.push_back(detail::complex_nullspace(power, 1e-9));
      depth = j + 1;
      if (static_cast<int>(kernels.back().size()) >= cl.multiplicity) break;
      power = power * shifted;
    }
    if (static_cast<int>(kernels.back().size()) != cl.multiplicity)
      throw NumericError("jordan_chevalley: generalized eigenspace dimension mismatch "
                         "(spectrum too clustered for the requested tolerance)");

    // Greedy chain construction from the deepest level down. `covered`
    // spans all previously selected chain vectors plus the next-lower
    // kernel, so each new generator starts a genuinely new chain.
    std::vector<CVec> chain_vectors;  // flat, for projections
    std::vector<std::vector<CVec>> chains;
    for (int level = depth; level >= 1; --level) {
      std::vector<CVec> covered = chain_vectors;
      if (level >= 2)
        for (const CVec& v : kernels[level - 2]) append_orthonormalized(covered, v);
      std::vector<CVec> covered_ortho;
      for (const CVec& v : covered) append_orthonormalized(covered_ortho, v);

      for (const CVec& cand : kernels[level - 1]) {
        CVec w = cand;
        project_out(w, covered_ortho);
        const double nrm = cvec_norm(w);
        if (nrm < 1e-7) continue;  // dependent on existing chains/lower kernel
        for (cd& x : w) x /= nrm;  // unit-norm generator
        std::vector<CVec> chain;   // top first
        chain.push_back(w);
        for (int k = level - 1; k >= 1; --k) {
          CVec next = cm_apply(shifted, chain.back());
          if (cvec_norm(next) < 1e-12)
            throw NumericError("jordan_chevalley: degenerate chain vector");
          chain.push_back(std::move(next));
        }
        for (const CVec& v : chain) append_orthonormalized(covered_ortho, v);
        for (const CVec& v : chain) chain_vectors.push_back(v);
        chains.push_back(std::move(chain));
      }
    }

    int placed = 0;
    for (const auto& chain : chains) placed += static_cast<int>(chain.size());
    if (placed != cl.multiplicity)
      throw NumericError("jordan_chevalley: chain construction failed to fill the "
                         "generalized eigenspace");

    for (const auto& chain : chains) {
      // Columns bottom-to-top: chain.back() is the eigenvector.
      const int len = static_cast<int>(chain.size());
      for (int k = 0; k < len; ++k) {
        const CVec& v = chain[len - 1 - k];
        for (int i = 0; i < n; ++i) p(i, col) = v[i];
        diag[col] = cl.center;
        if (k > 0) nilshift(col - 1, col) = cd(1.0, 0.0);
        ++col;
      }
    }
  }
  if (col != n) throw NumericError("jordan_chevalley: basis construction incomplete");

  ComplexMatrix p_inv;
  if (!p.try_inverse(p_inv))
    throw NumericError("jordan_chevalley: generalized eigenbasis is singular");

  ComplexMatrix d_mat(n), d_inv_nil(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(diag[i]) < 1e-14 * scale)
      throw NumericError("jordan_chevalley: zero eigenvalue");
    d_mat(i, i) = diag[i];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (nilshift(i, j) != cd(0.0, 0.0)) d_inv_nil(i, j) = nilshift(i, j) / diag[i];

  const ComplexMatrix r_c = p * d_mat * p_inv;
  const ComplexMatrix u_c = p * (cm_identity(n) + d_inv_nil) * p_inv;

  JordanChevalley out;
  out.u = u_c.real_part();
  out.r = r_c.real_part();
  out.p_basis = p;
  out.eigenvalues = ev;
  out.residual_product = frobenius_distance(out.u * out.r, g);
  out.residual_commute = frobenius_distance(out.u * out.r, out.r * out.u);
  return out;
}

Matrix unipotent_log(const Matrix& u, double tol) {
  const int n = u.dim();
  const Matrix d = u - Matrix::identity(n);
  if (!is_nilpotent(d, tol))
    throw DomainError("unipotent_log: (u - 1)^n is not negligible, input is not unipotent");
  Matrix sum = Matrix::zero(n);
  Matrix power = Matrix::identity(n);
  for (int k = 1; k < n; ++k) {
    power = power * d;
    sum += power * (((k % 2) ? 1.0 : -1.0) / k);
  }
  return sum;
}

namespace {

// Principal logarithm of a rotation; n = 2 closed form, otherwise the
// generic principal log (which rejects rotations by pi).
Matrix rotation_log(const Matrix& q) {
  if (q.dim() == 2) {
    const double theta = std::atan2(q(1, 0), q(0, 0));
    Matrix x(2);
    x(0, 1) = -theta;
    x(1, 0) = theta;
    return x;
  }
  return matrix_log(q);
}

struct PolarPath {
  Matrix rotation_gen;  // skew
  Matrix stretch_gen;   // symmetric
};

PolarPath polar_path(const Matrix& r) {
  const int n = r.dim();
  const Matrix gram = r.transpose() * r;
  Matrix evec;
  std::vector<double> eval;
  detail::jacobi_symmetric(gram, evec, eval);
  Matrix sqrt_d(n), inv_sqrt_d(n), log_d(n);
  for (int i = 0; i < n; ++i) {
    if (eval[i] <= 0.0) throw NumericError("polar decomposition: non-positive Gram spectrum");
    sqrt_d(i, i) = std::sqrt(eval[i]);
    inv_sqrt_d(i, i) = 1.0 / sqrt_d(i, i);
    log_d(i, i) = 0.5 * std::log(eval[i]);
  }
  const Matrix s_inv = evec * inv_sqrt_d * evec.transpose();
  const Matrix q = r * s_inv;
  PolarPath path;
  path.rotation_gen = rotation_log(q);
  path.stretch_gen = evec * log_d * evec.transpose();
  return path;
}

}  // namespace

DistanceBound distance_upper_bound(const GroupElement& g) {
  const GroupPtr& spec = g.spec;
  DistanceBound out;
  out.g = g;
  char desc[160];

  switch (spec->family) {
    case GroupFamily::kSO: {
      const Matrix x = rotation_log(g.mat);
      out.d_ub_reductive = spec->algebra_norm(x);
      out.d_ub = out.d_ub_reductive;
      out.path = {x};
      std::snprintf(desc, sizeof desc, "rotation segment, length %.6g", out.d_ub);
      break;
    }
    case GroupFamily::kUT: {
      const Matrix x = unipotent_log(g.mat);
      out.d_ub_unipotent = spec->algebra_norm(x);
      out.d_ub = out.d_ub_unipotent;
      out.path = {x};
      std::snprintf(desc, sizeof desc, "unipotent segment, length %.6g", out.d_ub);
      break;
    }
    case GroupFamily::kGLPlus:
    case GroupFamily::kDiagPos: {
      Matrix x(spec->n);
      for (int i = 0; i < spec->n; ++i) {
        if (g.mat(i, i) <= 0.0) throw DomainError("distance bound: non-positive diagonal");
        x(i, i) = std::log(g.mat(i, i));
      }
      out.d_ub_reductive = spec->algebra_norm(x);
      out.d_ub = out.d_ub_reductive;
      out.path = {x};
      std::snprintf(desc, sizeof desc, "diagonal segment, length %.6g", out.d_ub);
      break;
    }
    case GroupFamily::kGL:
    case GroupFamily::kSL: {
      if (g.mat.det() <= 0.0)
        throw DomainError("distance bound: element lies outside the identity component");
      const JordanChevalley jc = jordan_chevalley(g.mat);
      const Matrix x_u = unipotent_log(jc.u);
      const PolarPath pp = polar_path(jc.r);
      const double len_rot = spec->algebra_norm(pp.rotation_gen);
      const double len_str = spec->algebra_norm(pp.stretch_gen);
      out.d_ub_unipotent = spec->algebra_norm(x_u);
      out.d_ub_reductive = len_rot + len_str;
      out.d_ub = out.d_ub_unipotent + out.d_ub_reductive;
      out.path = {pp.rotation_gen, pp.stretch_gen, x_u};
      std::snprintf(desc, sizeof desc,
                    "rotation %.6g + stretch %.6g + unipotent %.6g (polar of the semisimple "
                    "factor, then the unipotent factor)",
                    len_rot, len_str, out.d_ub_unipotent);
      break;
    }
  }
  out.path_description = desc;
  return out;
}

Matrix path_endpoint(const DistanceBound& bound) {
  Matrix g = Matrix::identity(bound.g.spec->n);
  for (const Matrix& x : bound.path) g = g * matrix_exp(x);
  return g;
}

double path_length_numeric(const DistanceBound& bound, int steps) {
  double total = 0.0;
  Matrix base = Matrix::identity(bound.g.spec->n);
  const double h = 1e-6;
  for (const Matrix& x : bound.path) {
    double segment = 0.0;
    for (int k = 0; k <= steps; ++k) {
      const double tau = static_cast<double>(k) / steps;
      const Matrix at = base * matrix_exp(x * tau);
      const Matrix fwd = base * matrix_exp(x * (tau + h));
      const Matrix bwd = base * matrix_exp(x * (tau - h));
      const Matrix vel = (fwd - bwd) * (1.0 / (2.0 * h));
      const double speed = (at.inverse() * vel).frobenius();
      segment += (k == 0 || k == steps) ? 0.5 * speed : speed;
    }
    total += segment / steps;
    base = base * matrix_exp(x);
  }
  return total;
}

GrowthReport growth_bound_check(const std::vector<GroupElement>& samples, int n_exp) {
  GrowthReport rep;
  rep.samples = static_cast<long>(samples.size());
  if (samples.empty()) return rep;
  const int n = samples.front().spec->n;

  std::vector<double> lhs_log, norm_pow, norm_log;
  for (const auto& g : samples) {
    const DistanceBound b = distance_upper_bound(g);
    const double nrm = group_norm(g);
    lhs_log.push_back(n_exp * b.d_ub);
    norm_pow.push_back(std::pow(nrm, 3.0 * n));
    norm_log.push_back(std::log(nrm));
  }

  for (int step = 0; step <= 180; ++step) {
    const double r = std::pow(10.0, -3.0 + step * 0.05);  // 1e-3 .. 1e6
    bool ok = true;
    for (size_t i = 0; i < lhs_log.size(); ++i)
      if (lhs_log[i] > std::log(r) + r * norm_pow[i] + r * norm_log[i]) {
        ok = false;
        break;
      }
    if (ok) {
      rep.fitted_R = r;
      rep.violations = 0;
      return rep;
    }
  }
  rep.fitted_R = std::numeric_limits<double>::quiet_NaN();
  long worst = 0;
  const double r = 1e6;
  for (size_t i = 0; i < lhs_log.size(); ++i)
    if (lhs_log[i] > std::log(r) + r * norm_pow[i] + r * norm_log[i]) ++worst;
  rep.violations = worst;
  return rep;
}

BasisNormReport basis_norm_check(const std::vector<GroupElement>& samples, double cluster_tol) {
  BasisNormReport rep;
  rep.samples = static_cast<long>(samples.size());
  for (const auto& g : samples) {
    const int n = g.spec->n;
    const JordanChevalley jc = jordan_chevalley(g.mat, cluster_tol);
    const double p2 = jc.p_basis.frobenius() * jc.p_basis.frobenius();
    const double nrm = group_norm(g);
    const double bound = n * std::ldexp(1.0, n) * nrm * nrm;
    const double ratio = p2 / bound;
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    if (ratio > 1.0) ++rep.violations;
  }
  return rep;
}

ComparabilityReport comparability_check(const std::vector<GroupElement>& samples) {
  ComparabilityReport rep;
  if (samples.empty()) return rep;
  if (samples.front().spec->family == GroupFamily::kUT)
    throw DomainError("comparability_check applies to the reductive catalog groups");

  std::vector<double> d, y;
  for (const auto& g : samples) {
    d.push_back(distance_upper_bound(g).d_ub);
    y.push_back(std::log(group_norm(g)));
  }
  const size_t n = d.size();
  double dm = 0.0, ym = 0.0;
  for (size_t i = 0; i < n; ++i) {
    dm += d[i];
    ym += y[i];
  }
  dm /= n;
  ym /= n;
  double cov = 0.0, var = 0.0;
  for (size_t i = 0; i < n; ++i) {
    cov += (d[i] - dm) * (y[i] - ym);
    var += (d[i] - dm) * (d[i] - dm);
  }
  rep.c_fit = var > 1e-12 ? std::max(0.0, cov / var) : 0.0;
  double hi = -1e300, lo = 1e300;
  for (size_t i = 0; i < n; ++i) {
    hi = std::max(hi, y[i] - rep.c_fit * d[i]);
    lo = std::min(lo, y[i] - rep.c_fit * d[i]);
  }
  rep.C_fit = hi;
  rep.C_low = lo;
  rep.holds = std::isfinite(rep.c_fit) && std::isfinite(rep.C_fit);
  return rep;
}

}  // namespace liedirac
