#include "liedirac/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "liedirac/rng.hpp"

namespace liedirac {

namespace {

double ipow(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// rho_p from the two squared Frobenius distances; p is even so this is
// (|g-1|^2)^(p/2) + (|g^-1-1|^2)^(p/2).
double rho_from_sq(double d2, double di2, int p) {
  return ipow(d2, p / 2) + ipow(di2, p / 2);
}

IntegrationConfig with_decay(const IntegrationConfig& cfg, double t, int p) {
  IntegrationConfig c = cfg;
  c.decay_rate = t;
  c.decay_exponent = p;
  return c;
}

// Bisection for the signed chart coordinate where rho_2 crosses r^2 along
// the ray from 0 towards `end`; used to split 1-d charts at the gauge-ball
// boundary. The built-in 1-d gauges are monotone along each ray.
double ray_crossing(const Chart& chart, const Gauge& gauge2, double end, double level) {
  auto rho_at = [&](double u) {
    const Matrix g = chart.to_group(&u);
    return gauge_eval(gauge2, g);
  };
  if (rho_at(0.0) >= level) return 0.0;  // whole ray is outside the ball
  if (rho_at(end) <= level) return end;  // whole ray is inside
  double a = 0.0, b = end;               // rho(a) < level < rho(b)
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (a + b);
    if (rho_at(mid) - level <= 0.0)
      a = mid;
    else
      b = mid;
    if (std::abs(b - a) < 1e-14 * std::max(1.0, std::abs(b))) break;
  }
  return 0.5 * (a + b);
}

}  // namespace

Gauge make_gauge(const GroupPtr& spec, int exponent) {
  if (exponent == 0) exponent = 4 * spec->n;
  if (exponent < 2 || exponent % 2 != 0)
    throw DomainError("gauge exponent must be even and >= 2");
  return Gauge{spec, exponent};
}

double gauge_eval(const Gauge& gauge, const Matrix& g) {
  Matrix inv;
  if (!g.try_inverse(inv)) throw NumericError("gauge_eval: singular matrix");
  const Matrix eye = Matrix::identity(g.dim());
  const double d = frobenius_distance(g, eye);
  const double di = frobenius_distance(inv, eye);
  return rho_from_sq(d * d, di * di, gauge.exponent);
}

double gauge_eval(const Gauge& gauge, const GroupElement& g) { return gauge_eval(gauge, g.mat); }

DiracKernel normalize(const Gauge& gauge, double t, const IntegrationConfig& cfg) {
  if (t <= 0.0) throw DomainError("normalize: t must be positive");
  const IntegrationConfig run_cfg = with_decay(cfg, t, gauge.exponent);
  const double t2 = t * t;
  const Gauge g = gauge;
  const IntegralResult mass = integrate(
      [t2, &g](const GroupElement& el) { return std::exp(-t2 * gauge_eval(g, el)); },
      gauge.spec, run_cfg);
  if (!(mass.value > 0.0))
    throw NumericError("normalize: kernel mass integral is not positive");

  DiracKernel k;
  k.gauge = gauge;
  k.t = t;
  k.normalization = 1.0 / mass.value;
  // d(1/I) = dI / I^2.
  const double total_err = mass.error_estimate + mass.truncated_tail_bound;
  k.normalization_error = total_err / (mass.value * mass.value);
  k.cfg_used = run_cfg;
  return k;
}

double kernel_eval(const DiracKernel& kernel, const Matrix& g) {
  return kernel.normalization * std::exp(-kernel.t * kernel.t * gauge_eval(kernel.gauge, g));
}

double kernel_eval(const DiracKernel& kernel, const GroupElement& g) {
  return kernel_eval(kernel, g.mat);
}

ConcentrationReport dirac_check(const Gauge& gauge, const std::vector<double>& t_grid,
                                const std::vector<double>& radii,
                                const IntegrationConfig& cfg) {
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw DomainError("dirac_check: t_grid must be strictly increasing");

  const GroupPtr& spec = gauge.spec;
  const Gauge gauge2 = make_gauge(spec, 2);

  ConcentrationReport rep;
  rep.t_grid = t_grid;
  rep.radii = radii;
  rep.tail_mass.assign(t_grid.size() * radii.size(), 0.0);
  rep.tail_error.assign(t_grid.size() * radii.size(), 0.0);

  for (size_t ti = 0; ti < t_grid.size(); ++ti) {
    const double t = t_grid[ti];
    const DiracKernel kernel = normalize(gauge, t, cfg);

    // Unit mass, re-integrated on a refined grid (or an independent sample
    // stream) so the check is informative rather than circular.
    IntegrationConfig refined = kernel.cfg_used;
    if (refined.method == IntegrationConfig::Method::kTensorQuadrature) {
      int base = refined.points_per_axis;
      if (base <= 0) {
        int dim = 1;
        for (const auto& c : spec->charts) dim = std::max(dim, c.param_dim);
        base = dim == 1 ? 513 : (dim == 2 ? 129 : (dim == 3 ? 65 : 33));
      }
      refined.points_per_axis = (3 * base) / 2;
    } else {
      refined.seed = SplitMix64::mix(refined.seed, 0xA11CE);
      refined.samples = refined.samples * 2;
    }
    const double t2 = t * t;
    const IntegralResult mass = integrate(
        [t2, &gauge](const GroupElement& el) { return std::exp(-t2 * gauge_eval(gauge, el)); },
        spec, refined);
    rep.mass.push_back(kernel.normalization * mass.value);
    rep.mass_error.push_back(kernel.normalization *
                                 (mass.error_estimate + mass.truncated_tail_bound) +
                             kernel.mass_defect_bound());

    for (size_t ri = 0; ri < radii.size(); ++ri) {
      const double level = radii[ri] * radii[ri];
      IntegralResult tail;

      // 1-d charts: split each ray at the ball boundary and integrate the
      // outside pieces as smooth sub-charts. Higher dimensions use the
      // indicator directly.
      bool all_one_dim = true;
      for (const auto& c : spec->charts) all_one_dim = all_one_dim && c.param_dim == 1;

      if (all_one_dim) {
        std::vector<Chart> outside;
        const IntegrationConfig resolved = with_decay(cfg, t, gauge.exponent);
        for (const auto& chart : spec->charts) {
          double lo, hi;
          if (chart.fully_compact()) {
            lo = chart.axes[0].lo;
            hi = chart.axes[0].hi;
          } else {
            const double r = resolved.truncation_radius > 0.0
                                 ? resolved.truncation_radius
                                 : truncation_radius(t, gauge.exponent, spec,
                                                     resolved.tail_tol / spec->charts.size());
            lo = -r * chart.axes[0].scale;
            hi = r * chart.axes[0].scale;
          }
          const double up = ray_crossing(chart, gauge2, hi, level);
          const double dn = ray_crossing(chart, gauge2, lo, level);
          if (up < hi) {
            Chart piece = chart;
            piece.axes = {ChartAxis::bounded(up, hi)};
            outside.push_back(piece);
          }
          if (dn > lo) {
            Chart piece = chart;
            piece.axes = {ChartAxis::bounded(lo, dn)};
            outside.push_back(piece);
          }
        }
        if (!outside.empty()) {
          tail = integrate_over(outside, spec,
                                [t2, &gauge](const GroupElement& el) {
                                  return std::exp(-t2 * gauge_eval(gauge, el));
                                },
                                resolved);
        }
        // Mass beyond the truncation box also lies outside the ball; it is
        // covered by the tail tolerance of the normalization run.
        tail.truncated_tail_bound += resolved.tail_tol;
      } else {
        const IntegrationConfig resolved = with_decay(cfg, t, gauge.exponent);
        tail = integrate(
            [t2, &gauge, &gauge2, level](const GroupElement& el) {
              const double indicator = gauge_eval(gauge2, el) > level ? 1.0 : 0.0;
              return indicator * std::exp(-t2 * gauge_eval(gauge, el));
            },
            spec, resolved);
      }

      rep.tail_mass[ti * radii.size() + ri] = kernel.normalization * tail.value;
      rep.tail_error[ti * radii.size() + ri] =
          kernel.normalization * (tail.error_estimate + tail.truncated_tail_bound) +
          kernel.mass_defect_bound() * std::max(tail.value, 0.0);
    }
  }

  rep.monotone_in_t.assign(radii.size(), 1);
  for (size_t ri = 0; ri < radii.size(); ++ri)
    for (size_t ti = 1; ti < t_grid.size(); ++ti)
      if (!(rep.tail(ti, ri) < rep.tail(ti - 1, ri))) rep.monotone_in_t[ri] = 0;
  return rep;
}

ConvolutionResult convolve(const DiracKernel& kernel, const GroupFn& f, const GroupElement& at,
                           const IntegrationConfig& cfg) {
  const IntegrationConfig run_cfg = with_decay(cfg, kernel.t, kernel.gauge.exponent);
  const Matrix target = at.mat;
  const DiracKernel k = kernel;
  const IntegralResult r = integrate(
      [&k, &f, &target](const GroupElement& x) {
        const Matrix shifted = x.mat.inverse() * target;
        return kernel_eval(k, x.mat) * f(GroupElement{x.spec, shifted});
      },
      kernel.gauge.spec, run_cfg);
  ConvolutionResult out;
  out.value = r.value;
  out.error = r.error_estimate + r.truncated_tail_bound +
              kernel.mass_defect_bound() * std::abs(r.value);
  return out;
}

}  // namespace liedirac
