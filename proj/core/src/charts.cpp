#include "charts_builtin.hpp"

#include <cmath>

#include "liedirac/errors.hpp"

// Chart conventions.
//
// Every unbounded coordinate is laid out so that the chart radius
// r(x) = max_i |x_i| / scale_i controls the group norm from below. The
// gauge_lower functions below record, per chart, a proven lower bound for
// rho_p(g) = |g-1|^p + |g^-1-1|^p over {r(x) >= r}; they are deliberately
// conservative. The derivations:
//
//  GL(1)+/-, DIAG+(n)  (coordinates u_i = log of diagonal entries)
//    For the entry with |u_i| = r, either |g-1| >= e^r - 1 or
//    |g^-1 - 1| >= e^r - 1, so rho_p >= (e^r - 1)^p. On the negative
//    component of GL(1) both factors only grow.
//
//  UT(2)  (coordinate a)
//    |g-1|^2 = |g^-1-1|^2 = a^2, so rho_p >= r^p.
//
//  UT(3) = Heisenberg  (coordinates a, b, c of a E12 + b E23 + c E13)
//    exp gives g-1 entries (a, b, c + ab/2). If r = |a| or |b| then
//    |g-1|^2 >= r^2. If r = |c|: either |ab| <= r/2, so the corner entry
//    is >= r - r/4 >= 3r/4 once ab/2 <= r/4... using |ab| <= (a^2+b^2)/2:
//    when a^2+b^2 >= r we get |g-1|^2 >= r directly, otherwise
//    |ab|/2 < r/2 and the corner is >= r/2, giving |g-1|^2 >= r^2/4.
//    Combined: rho_p >= min(r^2/4, 2r, r^2)^{p/2} >= min(r^2/4, 2r)^{p/2}.
//
//  SL(2)  (Iwasawa coordinates theta, s, w with x = sinh w)
//    g = k(theta) a(s) n(x) and |k a n| = |a n|, with
//    |a n|^2 = e^{2s}(1 + x^2) + e^{-2s}. Hence |g|^2 >= e^{2|s|} and, by
//    AM-GM, |g|^2 >= 2|x| = 2 sinh|w|. The same value bounds |g^-1|.
//    At radius r: |g|^2 >= m(r) := min(e^{2r}, 2 sinh r), and
//    |g-1| >= |g| - sqrt(2), so rho_p >= max(0, sqrt(m(r)) - sqrt(2))^p.
//
//  GL(2)  (coordinates c, theta, s, w; g = +-e^c k a n)
//    ||g|| >= e^{|c|} |h|-wise: |h| = |h^-1| >= sqrt(2) always, so the
//    scalar axis gives ||g|| >= sqrt(2) e^r; the h axes give
//    ||g|| >= sqrt(m(r)) as for SL(2). Whichever axis attains the radius,
//    ||g|| >= min(sqrt(2) e^r, sqrt(m(r))).
//
// Haar densities.
//
//  The diagonal/unipotent charts push Lebesgue measure forward with
//  density 1 (the exponential-chart Jacobian of a nilpotent algebra is
//  unipotent, so its determinant is 1; d(x)/x = du under u = log x).
//
//  For SL(2) = KAN write the Maurer-Cartan form in coordinates:
//  with a = diag(e^s, e^{-s}), n = [[1, x], [0, 1]],
//    g^-1 dg = Ad(n^-1 a^-1)(J) dtheta + Ad(n^-1)(H) ds + E dx,
//  whose coordinate matrix over the basis (H, E, F) has determinant e^{2s}.
//  Left Haar measure in (theta, s, x) is therefore e^{2s} dtheta ds dx;
//  substituting x = sinh(w) multiplies it by cosh(w). The w coordinate
//  compresses the unipotent tail so tensor grids resolve both the bump at
//  the identity and the far field. GL(2)+ = R_{>0} x SL(2) as a direct
//  product (central positive scalars times SL(2)), so its Haar measure is
//  dc times the SL(2) chart measure; the negative component is the left
//  translate by diag(1, -1).

namespace liedirac::detail {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);

double ipow(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

Matrix rotation2(double theta) {
  Matrix k(2);
  const double c = std::cos(theta), s = std::sin(theta);
  k(0, 0) = c;
  k(0, 1) = -s;
  k(1, 0) = s;
  k(1, 1) = c;
  return k;
}

// g = k(theta) a(s) n(sinh w), optionally scaled by e^c and reflected.
Matrix iwasawa_point(double theta, double s, double w, double scalar_log = 0.0,
                     bool reflect = false) {
  const double x = std::sinh(w);
  const double es = std::exp(s);
  Matrix an(2);
  an(0, 0) = es;
  an(0, 1) = es * x;
  an(1, 1) = 1.0 / es;
  Matrix g = rotation2(theta) * an;
  if (scalar_log != 0.0) g *= std::exp(scalar_log);
  if (reflect) {
    for (int j = 0; j < 2; ++j) g(1, j) = -g(1, j);
  }
  return g;
}

// Iwasawa coordinates of an SL(2) member via Gram-Schmidt.
void locate_iwasawa(const Matrix& h, double& theta, double& s, double& w) {
  const double r00 = std::hypot(h(0, 0), h(1, 0));
  if (r00 == 0.0) throw NumericError("iwasawa locate: zero column");
  const double q0x = h(0, 0) / r00, q0y = h(1, 0) / r00;
  const double r01 = q0x * h(0, 1) + q0y * h(1, 1);
  theta = std::atan2(q0y, q0x);
  s = std::log(r00);
  w = std::asinh(r01 / r00);
}

double sl2_gauge_lower(double r, int p) {
  const double m = std::min(std::exp(2.0 * r), 2.0 * std::sinh(r));
  return ipow(positive_part(std::sqrt(positive_part(m)) - kSqrt2), p);
}

}  // namespace

std::vector<Chart> make_so2_charts() {
  Chart c;
  c.label = "angle";
  c.param_dim = 1;
  c.axes = {ChartAxis::bounded(-kPi, kPi)};
  c.to_group = [](const double* x) { return rotation2(x[0]); };
  c.density = [](const double*) { return 1.0; };
  c.density_sup = [](double) { return 1.0; };
  c.locate_radius = [](const Matrix& m) { return std::abs(std::atan2(m(1, 0), m(0, 0))); };
  return {c};
}

std::vector<Chart> make_gl1_charts() {
  std::vector<Chart> charts;
  for (int sign = 0; sign < 2; ++sign) {
    Chart c;
    c.label = sign == 0 ? "log+" : "log-";
    c.param_dim = 1;
    c.axes = {ChartAxis::unbounded()};
    const double sgn = sign == 0 ? 1.0 : -1.0;
    c.to_group = [sgn](const double* x) {
      Matrix m(1);
      m(0, 0) = sgn * std::exp(x[0]);
      return m;
    };
    c.density = [](const double*) { return 1.0; };
    c.density_sup = [](double) { return 1.0; };
    c.gauge_lower = [](double r, int p) { return ipow(positive_part(std::expm1(r)), p); };
    c.locate_radius = [](const Matrix& m) { return std::abs(std::log(std::abs(m(0, 0)))); };
    charts.push_back(std::move(c));
  }
  return charts;
}

std::vector<Chart> make_glplus1_charts() {
  auto charts = make_gl1_charts();
  charts.resize(1);
  charts[0].label = "log";
  return charts;
}

std::vector<Chart> make_diagpos_charts(int n) {
  Chart c;
  c.label = "log";
  c.param_dim = n;
  c.axes.assign(n, ChartAxis::unbounded());
  c.to_group = [n](const double* x) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = std::exp(x[i]);
    return m;
  };
  c.density = [](const double*) { return 1.0; };
  c.density_sup = [](double) { return 1.0; };
  c.gauge_lower = [](double r, int p) { return ipow(positive_part(std::expm1(r)), p); };
  c.locate_radius = [n](const Matrix& m) {
    double r = 0.0;
    for (int i = 0; i < n; ++i) r = std::max(r, std::abs(std::log(m(i, i))));
    return r;
  };
  return {c};
}

std::vector<Chart> make_ut2_charts() {
  Chart c;
  c.label = "exp";
  c.param_dim = 1;
  c.axes = {ChartAxis::unbounded()};
  c.to_group = [](const double* x) {
    Matrix m = Matrix::identity(2);
    m(0, 1) = x[0];
    return m;
  };
  c.density = [](const double*) { return 1.0; };
  c.density_sup = [](double) { return 1.0; };
  c.gauge_lower = [](double r, int p) { return ipow(r, p); };
  c.locate_radius = [](const Matrix& m) { return std::abs(m(0, 1)); };
  return {c};
}

std::vector<Chart> make_heis_charts() {
  Chart c;
  c.label = "exp";
  c.param_dim = 3;
  c.axes.assign(3, ChartAxis::unbounded());
  c.to_group = [](const double* x) {
    const double a = x[0], b = x[1], cc = x[2];
    Matrix m = Matrix::identity(3);
    m(0, 1) = a;
    m(1, 2) = b;
    m(0, 2) = cc + 0.5 * a * b;
    return m;
  };
  c.density = [](const double*) { return 1.0; };
  c.density_sup = [](double) { return 1.0; };
  c.gauge_lower = [](double r, int p) {
    return ipow(std::sqrt(std::min(0.25 * r * r, 2.0 * r)), p);
  };
  c.locate_radius = [](const Matrix& m) {
    const double a = m(0, 1), b = m(1, 2);
    const double cc = m(0, 2) - 0.5 * a * b;
    return std::max({std::abs(a), std::abs(b), std::abs(cc)});
  };
  return {c};
}

std::vector<Chart> make_sl2_charts() {
  Chart c;
  c.label = "iwasawa";
  c.param_dim = 3;
  c.axes = {ChartAxis::bounded(-kPi, kPi), ChartAxis::unbounded(), ChartAxis::unbounded()};
  c.to_group = [](const double* x) { return iwasawa_point(x[0], x[1], x[2]); };
  c.density = [](const double* x) { return std::exp(2.0 * x[1]) * std::cosh(x[2]); };
  c.density_sup = [](double r) { return std::exp(2.0 * r) * std::cosh(r); };
  c.gauge_lower = sl2_gauge_lower;
  c.locate_radius = [](const Matrix& m) {
    double theta, s, w;
    locate_iwasawa(m, theta, s, w);
    return std::max(std::abs(s), std::abs(w));
  };
  return {c};
}

std::vector<Chart> make_gl2_charts() {
  std::vector<Chart> charts;
  for (int sign = 0; sign < 2; ++sign) {
    Chart c;
    c.label = sign == 0 ? "iwasawa+" : "iwasawa-";
    c.param_dim = 4;
    c.axes = {ChartAxis::unbounded(), ChartAxis::bounded(-kPi, kPi), ChartAxis::unbounded(),
              ChartAxis::unbounded()};
    const bool reflect = sign == 1;
    c.to_group = [reflect](const double* x) {
      return iwasawa_point(x[1], x[2], x[3], x[0], reflect);
    };
    c.density = [](const double* x) { return std::exp(2.0 * x[2]) * std::cosh(x[3]); };
    c.density_sup = [](double r) { return std::exp(2.0 * r) * std::cosh(r); };
    c.gauge_lower = [](double r, int p) {
      const double m = std::min(std::exp(2.0 * r), 2.0 * std::sinh(r));
      const double norm_lb = std::min(kSqrt2 * std::exp(r), std::sqrt(positive_part(m)));
      return ipow(positive_part(norm_lb - kSqrt2), p);
    };
    c.locate_radius = [](const Matrix& m) {
      const double det = m.det();
      const double lam = std::sqrt(std::abs(det));
      if (lam == 0.0) throw NumericError("gl2 locate: singular matrix");
      Matrix h = m;
      if (det < 0.0)
        for (int j = 0; j < 2; ++j) h(1, j) = -h(1, j);
      h *= 1.0 / lam;
      double theta, s, w;
      locate_iwasawa(h, theta, s, w);
      return std::max({std::abs(std::log(lam)), std::abs(s), std::abs(w)});
    };
    charts.push_back(std::move(c));
  }
  return charts;
}

}  // namespace liedirac::detail
