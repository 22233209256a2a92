#pragma once

#include <complex>
#include <string>
#include <vector>

#include "liedirac/kernel.hpp"

namespace liedirac {

/// A point of the diagonal angle domain: |theta_k| < pi/4 unscaled, or
/// < pi/(4(n+1)) when the 1/(n+1) crown scaling is applied.
struct OmegaPoint {
  int n = 0;
  std::vector<double> theta;
  bool scaled = true;
};

/// A factored point h exp(i diag(theta)) k of the crown-type domain, with
/// h real, theta a scaled OmegaPoint and k complex orthogonal.
struct CrownPoint {
  GroupElement h;
  OmegaPoint omega;
  ComplexMatrix k;
  ComplexMatrix product;
};

struct EstimateReport {
  std::string estimate_id;  // p1, p2, u2, fs
  long samples = 0;         // assessed (g, q[, k]) combinations
  double fitted_constant = 0.0;
  double worst_ratio = 0.0;
  long violations = 0;
};

/// Holomorphic square gauge q(z) = sum z_ij^2 = tr(z^t z), transpose without
/// conjugation; equals the squared Frobenius gauge on real matrices.
std::complex<double> holo_square_gauge(const ComplexMatrix& z);

/// Holomorphic continuation of the kernel:
/// C_t exp(-t^2 (q(z-1)^{p/2} + q(z^-1-1)^{p/2})). Agrees with kernel_eval
/// on real members.
std::complex<double> holo_kernel_eval(const DiracKernel& kernel, const ComplexMatrix& z);

/// -log |holo_kernel_eval|, evaluated in the exponent domain so it stays
/// finite where the kernel itself underflows.
double holo_kernel_log_decay(const DiracKernel& kernel, const ComplexMatrix& z);

/// Magnitude of the Wirtinger derivative d f / d conj(z_ij) at `at`,
/// estimated by central differences with the given step; near zero for
/// holomorphic f.
double cauchy_riemann_residual(const std::function<std::complex<double>(const ComplexMatrix&)>& f,
                               const ComplexMatrix& at, int i, int j, double step = 1e-5);

/// Deterministic crown-point sample: h from the group with ||h|| <= radius,
/// theta uniform in the margin-shrunk scaled angle domain (margin in (0, 1],
/// margin -> 1 collapses to real points), k a product of complex Givens
/// rotations with bounded imaginary parameter.
std::vector<CrownPoint> sample_crown(const GroupPtr& spec, int count, double margin,
                                     double radius, uint64_t seed);

/// Re(q(g q)^k) >= C1 |g|^{2k} for k = 1..k_max (k_max <= 2n);
/// fitted_constant is the minimum observed ratio.
EstimateReport check_p1(const std::vector<CrownPoint>& points,
                        const std::vector<GroupElement>& g_samples, int k_max);

/// Same with inverses: Re(q((g q)^-1)^k) >= C2 |g^-1|^{2k}.
EstimateReport check_p2(const std::vector<CrownPoint>& points,
                        const std::vector<GroupElement>& g_samples, int k_max);

/// Re(tr(g q)^k) <= |tr(g q)|^k <= C3 |g|^k for k = 1..k_max (k_max <= 4n);
/// fitted_constant is the maximum trace ratio.
EstimateReport check_u2(const std::vector<CrownPoint>& points,
                        const std::vector<GroupElement>& g_samples, int k_max);

/// -log|phi_t(g q)| >= C ||g||^{4n} over samples with ||g|| >= 2 sqrt(n);
/// fitted_constant is the minimum decay ratio.
EstimateReport check_fs(const DiracKernel& kernel, const std::vector<CrownPoint>& points,
                        const std::vector<GroupElement>& g_samples);

}  // namespace liedirac
