#include "liedirac/crown.hpp"

#include <algorithm>
#include <cmath>

#include "liedirac/rng.hpp"

namespace liedirac {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

cd cpow_int(cd base, int e) {
  cd r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

double ipow(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Complex kernel exponent w with phi_t(z) = C_t exp(-t^2 w).
cd kernel_exponent(const DiracKernel& kernel, const ComplexMatrix& z) {
  const int n = z.dim();
  const int p = kernel.gauge.exponent;
  ComplexMatrix z_inv;
  if (!z.try_inverse(z_inv)) throw NumericError("holomorphic kernel: singular argument");
  const ComplexMatrix eye = ComplexMatrix::identity(n);
  const cd q1 = holo_square_gauge(z - eye);
  const cd q2 = holo_square_gauge(z_inv - eye);
  return cpow_int(q1, p / 2) + cpow_int(q2, p / 2);
}

// Complex Givens rotation in the (i, j) plane with complex angle w; the
// identity cos^2 + sin^2 = 1 holds for complex w, so the factor is complex
// orthogonal by construction.
ComplexMatrix complex_givens(int n, int i, int j, cd w) {
  ComplexMatrix g = ComplexMatrix::identity(n);
  const cd c = std::cos(w), s = std::sin(w);
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = -s;
  g(j, i) = s;
  return g;
}

}  // namespace

cd holo_square_gauge(const ComplexMatrix& z) {
  cd s(0.0, 0.0);
  for (int i = 0; i < z.dim(); ++i)
    for (int j = 0; j < z.dim(); ++j) s += z(i, j) * z(i, j);
  return s;
}

cd holo_kernel_eval(const DiracKernel& kernel, const ComplexMatrix& z) {
  const double t2 = kernel.t * kernel.t;
  return kernel.normalization * std::exp(-t2 * kernel_exponent(kernel, z));
}

double holo_kernel_log_decay(const DiracKernel& kernel, const ComplexMatrix& z) {
  const double t2 = kernel.t * kernel.t;
  return -std::log(kernel.normalization) + t2 * kernel_exponent(kernel, z).real();
}

double cauchy_riemann_residual(const std::function<cd(const ComplexMatrix&)>& f,
                               const ComplexMatrix& at, int i, int j, double step) {
  ComplexMatrix zp = at, zm = at, zip = at, zim = at;
  zp(i, j) += cd(step, 0.0);
  zm(i, j) -= cd(step, 0.0);
  zip(i, j) += cd(0.0, step);
  zim(i, j) -= cd(0.0, step);
  const cd dx = (f(zp) - f(zm)) / (2.0 * step);
  const cd dy = (f(zip) - f(zim)) / (2.0 * step);
  // d/d conj(z) = (d/dx + i d/dy) / 2.
  return 0.5 * std::abs(dx + cd(0.0, 1.0) * dy);
}

std::vector<CrownPoint> sample_crown(const GroupPtr& spec, int count, double margin,
                                     double radius, uint64_t seed) {
  if (!(margin > 0.0) || margin > 1.0)
    throw DomainError("sample_crown: margin must lie in (0, 1]");
  if (count < 0) throw DomainError("sample_crown: negative count");
  const int n = spec->n;
  const double bound = (1.0 - margin) * kPi / (4.0 * (n + 1));

  const std::vector<GroupElement> hs =
      sample_group(spec, count, radius, SplitMix64::mix(seed, 0x01));

  std::vector<CrownPoint> out;
  out.reserve(count);
  for (int idx = 0; idx < count; ++idx) {
    SplitMix64 rng(SplitMix64::mix(seed, 0x1000 + static_cast<uint64_t>(idx)));
    CrownPoint pt;
    pt.h = hs[idx];
    pt.omega.n = n;
    pt.omega.scaled = true;
    pt.omega.theta.resize(n);
    for (int i = 0; i < n; ++i) pt.omega.theta[i] = rng.next_uniform(-bound, bound);

    ComplexMatrix k = ComplexMatrix::identity(n);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const cd w(rng.next_uniform(-kPi, kPi), rng.next_uniform(-0.3, 0.3));
          k = k * complex_givens(n, i, j, w);
        }
    pt.k = k;
    pt.product = ComplexMatrix(pt.h.mat) * ComplexMatrix::unit_phase_diag(pt.omega.theta) * k;
    out.push_back(std::move(pt));
  }
  return out;
}

EstimateReport check_p1(const std::vector<CrownPoint>& points,
                        const std::vector<GroupElement>& g_samples, int k_max) {
  if (points.empty() || g_samples.empty())
    throw DomainError("check_p1: empty sample set");
  const int n = g_samples.front().spec->n;
  if (k_max < 1 || k_max > 2 * n) throw DomainError("check_p1: k_max must lie in [1, 2n]");

  EstimateReport rep;
  rep.estimate_id = "p1";
  double fitted = 1e300;
  for (const auto& g : g_samples) {
    const ComplexMatrix gc(g.mat);
    const double g2 = frobenius_gauge(g.mat) * frobenius_gauge(g.mat);
    for (const auto& q : points) {
      const cd qq = holo_square_gauge(gc * q.product);
      for (int k = 1; k <= k_max; ++k) {
        const double ratio = cpow_int(qq, k).real() / ipow(g2, k);
        fitted = std::min(fitted, ratio);
        if (!(ratio > 0.0)) ++rep.violations;
        ++rep.samples;
      }
    }
  }
  rep.fitted_constant = fitted;
  rep.worst_ratio = fitted;
  return rep;
}

EstimateReport check_p2(const std::vector<CrownPoint>& points,
                        const std::vector<GroupElement>& g_samples, int k_max) {
  if (points.empty() || g_samples.empty())
    throw DomainError("check_p2: empty sample set");
  const int n = g_samples.front().spec->n;
  if (k_max < 1 || k_max > 2 * n) throw DomainError("check_p2: k_max must lie in [1, 2n]");

  EstimateReport rep;
  rep.estimate_id = "p2";
  double fitted = 1e300;
  for (const auto& g : g_samples) {
    const ComplexMatrix gc(g.mat);
    const double gi = g.mat.inverse().frobenius();
    const double gi2 = gi * gi;
    for (const auto& q : points) {
      ComplexMatrix inv;
      if (!(gc * q.product).try_inverse(inv))
        throw NumericError("check_p2: singular g q product");
      const cd qq = holo_square_gauge(inv);
      for (int k = 1; k <= k_max; ++k) {
        const double ratio = cpow_int(qq, k).real() / ipow(gi2, k);
        fitted = std::min(fitted, ratio);
        if (!(ratio > 0.0)) ++rep.violations;
        ++rep.samples;
      }
    }
  }
  rep.fitted_constant = fitted;
  rep.worst_ratio = fitted;
  return rep;
}

EstimateReport check_u2(const std::vector<CrownPoint>& points,
                        const std::vector<GroupElement>& g_samples, int k_max) {
  if (points.empty() || g_samples.empty())
    throw DomainError("check_u2: empty sample set");
  const int n = g_samples.front().spec->n;
  if (k_max < 1 || k_max > 4 * n) throw DomainError("check_u2: k_max must lie in [1, 4n]");

  EstimateReport rep;
  rep.estimate_id = "u2";
  double fitted = 0.0;      // max |tr(gq)|^k / |g|^k
  double worst_re = 0.0;    // max Re(tr^k) / |tr|^k, must stay <= 1
  for (const auto& g : g_samples) {
    const ComplexMatrix gc(g.mat);
    const double gf = frobenius_gauge(g.mat);
    for (const auto& q : points) {
      const cd tr = (gc * q.product).trace();
      for (int k = 1; k <= k_max; ++k) {
        const double abs_pow = ipow(std::abs(tr), k);
        const double re_pow = cpow_int(tr, k).real();
        if (re_pow > abs_pow * (1.0 + 1e-12)) ++rep.violations;
        if (abs_pow > 0.0) worst_re = std::max(worst_re, re_pow / abs_pow);
        const double ratio = abs_pow / ipow(gf, k);
        fitted = std::max(fitted, ratio);
        ++rep.samples;
      }
    }
  }
  rep.fitted_constant = fitted;
  rep.worst_ratio = worst_re;
  return rep;
}

EstimateReport check_fs(const DiracKernel& kernel, const std::vector<CrownPoint>& points,
                        const std::vector<GroupElement>& g_samples) {
  if (points.empty() || g_samples.empty())
    throw DomainError("check_fs: empty sample set");
  const int n = g_samples.front().spec->n;
  const double norm_floor = 2.0 * std::sqrt(static_cast<double>(n));

  EstimateReport rep;
  rep.estimate_id = "fs";
  double fitted = 1e300;
  for (const auto& g : g_samples) {
    const double nrm = group_norm(g);
    if (nrm < norm_floor) continue;
    const double denom = ipow(nrm, 4 * n);
    const ComplexMatrix gc(g.mat);
    for (const auto& q : points) {
      const double decay = holo_kernel_log_decay(kernel, gc * q.product);
      const double ratio = decay / denom;
      fitted = std::min(fitted, ratio);
      if (!(ratio > 0.0)) ++rep.violations;
      ++rep.samples;
    }
  }
  if (rep.samples == 0)
    throw DomainError("check_fs: no samples with ||g|| >= 2 sqrt(n)");
  rep.fitted_constant = fitted;
  rep.worst_ratio = fitted;
  return rep;
}

}  // namespace liedirac
