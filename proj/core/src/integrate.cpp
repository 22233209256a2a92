#include "liedirac/integrate.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>

#include "liedirac/rng.hpp"

namespace liedirac {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Gauss-Legendre rules (cached per point count).

struct QuadRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

QuadRule compute_gauss_legendre(int p) {
  QuadRule r;
  r.nodes.assign(p, 0.0);
  r.weights.assign(p, 0.0);
  for (int i = 0; i < (p + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (p + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= p; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      deriv = p * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / deriv;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = -x;
    r.nodes[p - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
    r.weights[i] = w;
    r.weights[p - 1 - i] = w;
  }
  return r;
}

const QuadRule& gauss_legendre(int p) {
  static std::mutex mu;
  static std::map<int, QuadRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, compute_gauss_legendre(p)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Normal CDF and inverse (Acklam's rational approximation plus one Halley
// refinement); used for truncated-normal importance sampling and for mapping
// confidence levels to z-scores.

double norm_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

double inv_norm_cdf(double p) {
  if (p <= 0.0 || p >= 1.0) throw DomainError("inv_norm_cdf: p outside (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement.
  const double e = norm_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

// ---------------------------------------------------------------------------
// Truncation machinery.

struct ResolvedChart {
  const Chart* chart = nullptr;
  std::vector<double> lo, hi;
  double tail_bound = 0.0;
};

// Conservative analytic tail: annulus volume times density sup times the
// kernel-class bound exp(-rate^2 * gauge_lower).
double chart_tail_bound(const Chart& chart, double radius, double rate, int exponent) {
  if (chart.fully_compact()) return 0.0;
  if (rate <= 0.0 || exponent < 2) return 0.0;
  if (!chart.gauge_lower || !chart.density_sup) return 0.0;

  auto box_volume = [&chart](double r) {
    double v = 1.0;
    for (const auto& axis : chart.axes)
      v *= axis.compact ? (axis.hi - axis.lo) : 2.0 * r * axis.scale;
    return v;
  };

  const double t2 = rate * rate;
  double total = 0.0;
  for (int k = 0; k < 600; ++k) {
    const double r_in = radius + k;
    const double r_out = radius + k + 1;
    const double log_term = std::log(std::max(box_volume(r_out) - box_volume(r_in), 0.0) *
                                     chart.density_sup(r_out)) -
                            t2 * chart.gauge_lower(r_in, exponent);
    if (log_term < -700.0) {
      if (k > 0) break;  // remaining terms only decay further
      return total;      // first annulus already negligible
    }
    const double term = std::exp(log_term);
    total += term;
    if (term < 1e-300) break;
  }
  return total;
}

double resolve_auto_radius(const Chart& chart, const IntegrationConfig& cfg, double tol) {
  for (double r = 0.25; r <= 80.0; r += 0.25) {
    if (chart_tail_bound(chart, r, cfg.decay_rate, cfg.decay_exponent) <= tol) return r;
  }
  throw NumericError("automatic truncation failed: no radius within 80 meets the tail "
                     "tolerance for chart '" + chart.label + "'");
}

ResolvedChart resolve_chart(const Chart& chart, const IntegrationConfig& cfg, size_t n_charts) {
  ResolvedChart rc;
  rc.chart = &chart;
  double radius = 0.0;
  if (!chart.fully_compact()) {
    if (cfg.truncation_radius > 0.0) {
      radius = cfg.truncation_radius;
    } else if (cfg.decay_rate > 0.0 && cfg.decay_exponent >= 2) {
      radius = resolve_auto_radius(chart, cfg, cfg.tail_tol / static_cast<double>(n_charts));
    } else {
      throw DomainError("chart '" + chart.label +
                        "' has unbounded axes: set truncation_radius or a decay hint");
    }
    rc.tail_bound = chart_tail_bound(chart, radius, cfg.decay_rate, cfg.decay_exponent);
    radius += cfg.radius_pad;
  }
  rc.lo.resize(chart.axes.size());
  rc.hi.resize(chart.axes.size());
  for (size_t a = 0; a < chart.axes.size(); ++a) {
    const auto& axis = chart.axes[a];
    rc.lo[a] = axis.compact ? axis.lo : -radius * axis.scale;
    rc.hi[a] = axis.compact ? axis.hi : radius * axis.scale;
  }
  return rc;
}

// ---------------------------------------------------------------------------
// Deterministic parallel evaluation: work is split into fixed blocks whose
// partial sums are merged pairwise in block order, so the reduction tree
// depends only on the item count.

constexpr long kBlockItems = 1024;

void parallel_blocks(long blocks, int threads, const std::function<void(long)>& body) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw ? static_cast<int>(hw) : 1;
  }
  threads = static_cast<int>(std::min<long>(threads, blocks));
  if (threads <= 1) {
    for (long b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<long> next(0);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        const long b = next.fetch_add(1);
        if (b >= blocks) return;
        body(b);
      }
    });
  for (auto& th : pool) th.join();
}

struct EvalFailure {
  std::mutex mu;
  std::atomic<bool> failed{false};
  std::string message;
  void report(const std::string& msg) {
    std::lock_guard<std::mutex> lock(mu);
    if (!failed.load()) {
      message = msg;
      failed.store(true);
    }
  }
};

std::string describe_point(const Chart& chart, const double* x, int dim) {
  char buf[64];
  std::string s = "chart '" + chart.label + "' at (";
  for (int i = 0; i < dim; ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", x[i]);
    s += buf;
    if (i + 1 < dim) s += ", ";
  }
  return s + ")";
}

// One tensor-product pass at a fixed resolution; returns the per-component
// integral over this chart.
std::vector<double> tensor_pass(const ResolvedChart& rc, const GroupPtr& spec,
                                const GroupVectorFn& f, int m, int points,
                                const IntegrationConfig& cfg, long* evaluations) {
  const Chart& chart = *rc.chart;
  const int dim = chart.param_dim;
  const QuadRule& rule = gauss_legendre(points);

  long total = 1;
  for (int a = 0; a < dim; ++a) total *= points;
  const long blocks = (total + kBlockItems - 1) / kBlockItems;

  std::vector<double> block_sums(static_cast<size_t>(blocks) * m, 0.0);
  EvalFailure failure;

  parallel_blocks(blocks, cfg.threads, [&](long b) {
    if (failure.failed) return;
    double x[kMaxDim];
    double out[16];
    std::vector<double> acc(m, 0.0);
    const long begin = b * kBlockItems;
    const long end = std::min(total, begin + kBlockItems);
    for (long idx = begin; idx < end; ++idx) {
      long rem = idx;
      double w = 1.0;
      for (int a = 0; a < dim; ++a) {
        const int node = static_cast<int>(rem % points);
        rem /= points;
        const double half = 0.5 * (rc.hi[a] - rc.lo[a]);
        const double center = 0.5 * (rc.hi[a] + rc.lo[a]);
        x[a] = center + half * rule.nodes[node];
        w *= half * rule.weights[node];
      }
      const double dens = chart.density(x);
      const GroupElement g{spec, chart.to_group(x)};
      f(g, out);
      for (int c = 0; c < m; ++c) {
        const double v = w * dens * out[c];
        if (!std::isfinite(v)) {
          failure.report("non-finite integrand value in " + describe_point(chart, x, dim));
          return;
        }
        acc[c] += v;
      }
    }
    for (int c = 0; c < m; ++c) block_sums[static_cast<size_t>(b) * m + c] = acc[c];
  });
  if (failure.failed) throw NumericError(failure.message);

  *evaluations += total;
  std::vector<double> result(m, 0.0);
  std::vector<double> per_block(blocks);
  for (int c = 0; c < m; ++c) {
    for (long b = 0; b < blocks; ++b) per_block[b] = block_sums[static_cast<size_t>(b) * m + c];
    result[c] = pairwise_sum(per_block);
  }
  return result;
}

int auto_points(int dim) {
  switch (dim) {
    case 1: return 513;
    case 2: return 129;
    case 3: return 65;
    default: return 33;
  }
}

double importance_sigma(const ChartAxis& axis, const ResolvedChart& rc, size_t a,
                        const IntegrationConfig& cfg) {
  const double halfwidth = 0.5 * (rc.hi[a] - rc.lo[a]);
  double sigma;
  if (cfg.importance_scale > 0.0) {
    sigma = cfg.importance_scale * axis.scale;
  } else if (cfg.decay_rate > 0.0 && cfg.decay_exponent >= 2) {
    // The kernel class exp(-t^2 rho_p) has width roughly t^(-2/p) around
    // the identity in chart coordinates.
    sigma = 1.2 * std::pow(cfg.decay_rate, -2.0 / cfg.decay_exponent) * axis.scale;
  } else {
    sigma = 0.6 * halfwidth;
  }
  return std::min(std::max(sigma, 1e-3), halfwidth);
}

void monte_carlo_pass(const ResolvedChart& rc, const GroupPtr& spec, const GroupVectorFn& f,
                      int m, const IntegrationConfig& cfg, size_t chart_index,
                      std::vector<double>* mean, std::vector<double>* stderr_out,
                      long* evaluations) {
  const Chart& chart = *rc.chart;
  const int dim = chart.param_dim;
  const long n = std::max<long>(1, cfg.samples);
  const long blocks = (n + kBlockItems - 1) / kBlockItems;

  // Per-axis truncated-normal importance distribution, centered at 0 in
  // chart coordinates (the identity).
  struct AxisSampler {
    double sigma, center, cdf_lo, cdf_span, log_norm;
  };
  std::vector<AxisSampler> samplers(dim);
  for (int a = 0; a < dim; ++a) {
    AxisSampler& s = samplers[a];
    s.sigma = importance_sigma(chart.axes[a], rc, a, cfg);
    s.center = 0.5 * (rc.hi[a] + rc.lo[a]);
    const double zlo = (rc.lo[a] - s.center) / s.sigma;
    const double zhi = (rc.hi[a] - s.center) / s.sigma;
    s.cdf_lo = norm_cdf(zlo);
    s.cdf_span = norm_cdf(zhi) - s.cdf_lo;
    if (s.cdf_span <= 0.0) throw NumericError("importance sampler span underflow");
    s.log_norm = std::log(s.sigma * std::sqrt(2.0 * kPi) * s.cdf_span);
  }

  std::vector<double> block_s(static_cast<size_t>(blocks) * m, 0.0);
  std::vector<double> block_q(static_cast<size_t>(blocks) * m, 0.0);
  EvalFailure failure;

  parallel_blocks(blocks, cfg.threads, [&](long b) {
    if (failure.failed) return;
    double x[kMaxDim];
    double out[16];
    std::vector<double> acc_s(m, 0.0), acc_q(m, 0.0);
    const long begin = b * kBlockItems;
    const long end = std::min(n, begin + kBlockItems);
    for (long idx = begin; idx < end; ++idx) {
      SplitMix64 rng(SplitMix64::mix(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (chart_index + 1)),
                                     static_cast<uint64_t>(idx)));
      double log_weight = 0.0;
      for (int a = 0; a < dim; ++a) {
        const AxisSampler& s = samplers[a];
        const double u = s.cdf_lo + rng.next_unit() * s.cdf_span;
        const double z = inv_norm_cdf(std::min(std::max(u, 1e-16), 1.0 - 1e-16));
        x[a] = s.center + s.sigma * z;
        if (x[a] < rc.lo[a]) x[a] = rc.lo[a];
        if (x[a] > rc.hi[a]) x[a] = rc.hi[a];
        // 1/pdf of the truncated normal.
        log_weight += 0.5 * z * z + s.log_norm;
      }
      const double dens = chart.density(x);
      const GroupElement g{spec, chart.to_group(x)};
      f(g, out);
      const double weight = std::exp(log_weight);
      for (int c = 0; c < m; ++c) {
        const double v = weight * dens * out[c];
        if (!std::isfinite(v)) {
          failure.report("non-finite integrand value in " + describe_point(chart, x, dim));
          return;
        }
        acc_s[c] += v;
        acc_q[c] += v * v;
      }
    }
    for (int c = 0; c < m; ++c) {
      block_s[static_cast<size_t>(b) * m + c] = acc_s[c];
      block_q[static_cast<size_t>(b) * m + c] = acc_q[c];
    }
  });
  if (failure.failed) throw NumericError(failure.message);

  *evaluations += n;
  const double z = inv_norm_cdf(0.5 * (1.0 + cfg.confidence));
  std::vector<double> per_block(blocks);
  for (int c = 0; c < m; ++c) {
    for (long b = 0; b < blocks; ++b) per_block[b] = block_s[static_cast<size_t>(b) * m + c];
    const double s1 = pairwise_sum(per_block);
    for (long b = 0; b < blocks; ++b) per_block[b] = block_q[static_cast<size_t>(b) * m + c];
    const double s2 = pairwise_sum(per_block);
    const double mu = s1 / static_cast<double>(n);
    double var = 0.0;
    if (n > 1) var = std::max(0.0, (s2 - s1 * mu) / static_cast<double>(n - 1));
    (*mean)[c] += mu;
    (*stderr_out)[c] += z * std::sqrt(var / static_cast<double>(n));
  }
}

VectorIntegralResult run_charts(const std::vector<Chart>& charts, const GroupPtr& spec,
                                const GroupVectorFn& f, int m, const IntegrationConfig& cfg) {
  if (m < 1 || m > 16) throw DomainError("integrate: component count must be in [1,16]");
  if (charts.empty()) throw DomainError("group '" + spec->name + "' has no integration charts");

  VectorIntegralResult res;
  res.value.assign(m, 0.0);
  res.error_estimate.assign(m, 0.0);

  for (size_t ci = 0; ci < charts.size(); ++ci) {
    const ResolvedChart rc = resolve_chart(charts[ci], cfg, charts.size());
    res.truncated_tail_bound += rc.tail_bound;
    if (cfg.method == IntegrationConfig::Method::kMonteCarlo) {
      monte_carlo_pass(rc, spec, f, m, cfg, ci, &res.value, &res.error_estimate,
                       &res.evaluations);
    } else {
      const int fine = cfg.points_per_axis > 0 ? cfg.points_per_axis
                                               : auto_points(charts[ci].param_dim);
      if (fine < 2) throw DomainError("points_per_axis must be >= 2");
      const int coarse = std::max(3, (2 * fine) / 3);
      const std::vector<double> vf = tensor_pass(rc, spec, f, m, fine, cfg, &res.evaluations);
      const std::vector<double> vc = tensor_pass(rc, spec, f, m, coarse, cfg, &res.evaluations);
      for (int c = 0; c < m; ++c) {
        res.value[c] += vf[c];
        res.error_estimate[c] += std::abs(vf[c] - vc[c]);
      }
    }
  }
  return res;
}

}  // namespace

IntegralResult integrate(const GroupFn& f, const GroupPtr& spec, const IntegrationConfig& cfg) {
  return integrate_over(spec->charts, spec, f, cfg);
}

IntegralResult integrate_over(const std::vector<Chart>& charts, const GroupPtr& spec,
                              const GroupFn& f, const IntegrationConfig& cfg) {
  const GroupVectorFn wrapped = [&f](const GroupElement& g, double* out) { out[0] = f(g); };
  const VectorIntegralResult r = run_charts(charts, spec, wrapped, 1, cfg);
  return IntegralResult{r.value[0], r.error_estimate[0], r.evaluations, r.truncated_tail_bound};
}

VectorIntegralResult integrate_components(const GroupVectorFn& f, int components,
                                          const GroupPtr& spec, const IntegrationConfig& cfg) {
  return run_charts(spec->charts, spec, f, components, cfg);
}

double truncation_radius(double rate, int exponent, const GroupPtr& spec, double tol) {
  if (rate <= 0.0) throw DomainError("truncation_radius: rate must be positive");
  if (exponent < 2) throw DomainError("truncation_radius: exponent must be >= 2");
  if (tol <= 0.0) throw DomainError("truncation_radius: tol must be positive");
  IntegrationConfig cfg;
  cfg.decay_rate = rate;
  cfg.decay_exponent = exponent;
  double radius = 0.0;
  for (const auto& chart : spec->charts) {
    if (chart.fully_compact()) {
      radius = std::max(radius, chart.compact_radius());
    } else {
      radius = std::max(
          radius, resolve_auto_radius(chart, cfg, tol / static_cast<double>(spec->charts.size())));
    }
  }
  return radius;
}

InvarianceReport left_invariance_check(const GroupFn& f, const GroupElement& h,
                                       const GroupPtr& spec, const IntegrationConfig& cfg) {
  const IntegralResult rhs = integrate(f, spec, cfg);

  const Matrix h_inv = h.mat.inverse();
  double pad = 0.0;
  for (const auto& chart : spec->charts)
    if (!chart.fully_compact() && chart.locate_radius)
      pad = std::max(pad, chart.locate_radius(h_inv));
  IntegrationConfig lhs_cfg = cfg;
  lhs_cfg.radius_pad += pad;

  const Matrix h_mat = h.mat;
  const GroupFn translated = [&f, &h_mat](const GroupElement& g) {
    return f(GroupElement{g.spec, h_mat * g.mat});
  };
  const IntegralResult lhs = integrate(translated, spec, lhs_cfg);

  InvarianceReport rep;
  rep.lhs = lhs.value;
  rep.rhs = rhs.value;
  rep.deviation = std::abs(lhs.value - rhs.value);
  rep.combined_error = lhs.error_estimate + rhs.error_estimate + lhs.truncated_tail_bound +
                       rhs.truncated_tail_bound;
  return rep;
}

}  // namespace liedirac
