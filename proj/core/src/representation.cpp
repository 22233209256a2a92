#include "liedirac/representation.hpp"

#include <algorithm>
#include <cmath>

namespace liedirac {

Representation trivial_representation(const GroupPtr& spec) {
  Representation rep;
  rep.spec = spec;
  rep.dim = 1;
  rep.name = "trivial";
  rep.apply = [](const GroupElement&, const std::vector<double>& v) { return v; };
  return rep;
}

Representation standard_representation(const GroupPtr& spec) {
  Representation rep;
  rep.spec = spec;
  rep.dim = spec->n;
  rep.name = "standard";
  rep.apply = [](const GroupElement& g, const std::vector<double>& v) { return g.mat.apply(v); };
  return rep;
}

Representation sym2_representation(const GroupPtr& spec) {
  if (spec->n != 2)
    throw DomainError("sym2 representation is provided for the 2x2 catalog groups");
  Representation rep;
  rep.spec = spec;
  rep.dim = 3;
  rep.name = "sym2";
  // Coordinates (s11, s12, s22) of the symmetric matrix [[s11, s12], [s12, s22]].
  rep.apply = [](const GroupElement& g, const std::vector<double>& v) {
    Matrix s(2);
    s(0, 0) = v[0];
    s(0, 1) = s(1, 0) = v[1];
    s(1, 1) = v[2];
    const Matrix out = g.mat * s * g.mat.transpose();
    return std::vector<double>{out(0, 0), out(0, 1), out(1, 1)};
  };
  return rep;
}

namespace {

AverageResult average_at(const DiracKernel& kernel, const Representation& rep,
                         const std::vector<double>& v, const IntegrationConfig& cfg) {
  const int m = rep.dim;
  const DiracKernel k = kernel;
  const Representation r = rep;
  const std::vector<double> vec = v;
  const GroupVectorFn f = [&k, &r, &vec, m](const GroupElement& g, double* out) {
    const double w = kernel_eval(k, g);
    const std::vector<double> pv = r.apply(g, vec);
    for (int c = 0; c < m; ++c) out[c] = w * pv[c];
  };
  const VectorIntegralResult res = integrate_components(f, m, kernel.gauge.spec, cfg);
  AverageResult out;
  out.value = res.value;
  out.error.resize(m);
  double vnorm = 0.0;
  for (double x : v) vnorm = std::max(vnorm, std::abs(x));
  for (int c = 0; c < m; ++c)
    out.error[c] = res.error_estimate[c] + res.truncated_tail_bound * std::max(1.0, vnorm) +
                   kernel.mass_defect_bound() * std::abs(res.value[c]);
  out.evaluations = res.evaluations;
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

AverageResult average_representation(const DiracKernel& kernel, const Representation& rep,
                                     const std::vector<double>& v,
                                     const IntegrationConfig& cfg) {
  if (rep.spec->name != kernel.gauge.spec->name)
    throw DomainError("representation and kernel belong to different groups");
  if (static_cast<int>(v.size()) != rep.dim)
    throw DomainError("vector length does not match representation dimension");

  IntegrationConfig run_cfg = cfg;
  run_cfg.decay_rate = kernel.t;
  run_cfg.decay_exponent = kernel.gauge.exponent;

  bool compact = true;
  for (const auto& c : kernel.gauge.spec->charts) compact = compact && c.fully_compact();
  const AverageResult base = average_at(kernel, rep, v, run_cfg);
  if (compact) return base;

  // Divergence probe: extend the truncation radius twice. A moderate-growth
  // representation under a superexponentially decaying kernel must settle;
  // growing increments mean the integral does not exist.
  IntegrationConfig wide = run_cfg;
  wide.radius_pad = run_cfg.radius_pad + 1.0;
  const AverageResult ext1 = average_at(kernel, rep, v, wide);
  const double d1 = max_abs_diff(base.value, ext1.value);

  wide.radius_pad = run_cfg.radius_pad + 2.0;
  const AverageResult ext2 = average_at(kernel, rep, v, wide);
  const double d2 = max_abs_diff(ext1.value, ext2.value);

  double scale = 0.0;
  for (double x : ext2.value) scale = std::max(scale, std::abs(x));
  const double settle_tol = 1e-12 * std::max(1.0, scale);
  if (d2 > settle_tol && d2 > d1) {
    throw NumericError("average_representation: partial averages grow under radius "
                       "extension; the representation outruns the kernel decay");
  }

  AverageResult out = ext2;
  for (int c = 0; c < rep.dim; ++c) out.error[c] += std::abs(ext2.value[c] - ext1.value[c]);
  out.evaluations += base.evaluations + ext1.evaluations;
  return out;
}

OrbitReport orbit_identity_check(const DiracKernel& kernel, const Representation& rep,
                                 const std::vector<double>& v, const GroupElement& g,
                                 const IntegrationConfig& cfg) {
  const GroupPtr& spec = kernel.gauge.spec;

  // Left side: pi(g) applied to the averaged vector.
  const AverageResult avg = average_representation(kernel, rep, v, cfg);
  const std::vector<double> lhs = rep.apply(g, avg.value);

  // Right side: average against the kernel translated to be centered at g.
  IntegrationConfig run_cfg = cfg;
  run_cfg.decay_rate = kernel.t;
  run_cfg.decay_exponent = kernel.gauge.exponent;
  double pad = 0.0;
  for (const auto& chart : spec->charts)
    if (!chart.fully_compact() && chart.locate_radius)
      pad = std::max(pad, chart.locate_radius(g.mat));
  run_cfg.radius_pad += pad;

  const Matrix g_inv = g.mat.inverse();
  const DiracKernel k = kernel;
  const Representation r = rep;
  const std::vector<double> vec = v;
  const int m = rep.dim;
  const GroupVectorFn f = [&k, &r, &vec, &g_inv, m](const GroupElement& x, double* out) {
    const double w = kernel_eval(k, g_inv * x.mat);
    const std::vector<double> pv = r.apply(x, vec);
    for (int c = 0; c < m; ++c) out[c] = w * pv[c];
  };
  const VectorIntegralResult rhs_res = integrate_components(f, m, spec, run_cfg);

  OrbitReport rep_out;
  rep_out.lhs = lhs;
  rep_out.rhs = rhs_res.value;
  rep_out.deviation = max_abs_diff(lhs, rhs_res.value);

  // Propagate the averaging error through pi(g): extract the operator's
  // columns on basis vectors and bound |pi(g) err| entrywise.
  const std::vector<double> lhs_err = [&]() {
    std::vector<double> e(m, 0.0);
    for (int j = 0; j < m; ++j) {
      std::vector<double> basis(m, 0.0);
      basis[j] = 1.0;
      const std::vector<double> col = r.apply(g, basis);
      for (int c = 0; c < m; ++c) e[c] += std::abs(col[c]) * avg.error[j];
    }
    return e;
  }();
  double combined = 0.0;
  for (int c = 0; c < m; ++c)
    combined = std::max(combined, lhs_err[c] + rhs_res.error_estimate[c]);
  combined += rhs_res.truncated_tail_bound;
  rep_out.combined_error = combined;
  return rep_out;
}

double seminorm_probe(const GroupFn& f, int n_exp, const std::vector<GroupElement>& samples,
                      const std::function<double(const GroupElement&)>& distance_ub) {
  double best = 0.0;
  for (const auto& g : samples) {
    const double val = std::abs(f(g)) * std::exp(n_exp * distance_ub(g));
    if (std::isfinite(val)) best = std::max(best, val);
  }
  return best;
}

}  // namespace liedirac
