#include "eig_small.hpp"

#include <algorithm>
#include <cmath>

namespace liedirac::detail {

using cd = std::complex<double>;

std::vector<double> char_poly(const Matrix& a) {
  const int n = a.dim();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  Matrix m = Matrix::zero(n);  // running a * M_{k-1} + c_{k-1} * I
  for (int k = 1; k <= n; ++k) {
    if (k == 1) {
      m = a;
    } else {
      m = a * (m + Matrix::identity(n) * c[k - 1]);
    }
    c[k] = -m.trace() / static_cast<double>(k);
  }
  return c;
}

namespace {

cd poly_eval(const std::vector<double>& c, cd z) {
  cd v(c[0], 0.0);
  for (size_t k = 1; k < c.size(); ++k) v = v * z + c[k];
  return v;
}

}  // namespace

std::vector<cd> eigenvalues(const Matrix& a) {
  const int n = a.dim();
  if (n == 1) return {cd(a(0, 0), 0.0)};
  if (n == 2) {
    // Quadratic formula on the characteristic polynomial, exact cases first.
    const double tr = a.trace();
    const double det = a.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      // Stable split: compute the larger root first.
      const double r1 = 0.5 * (tr + (tr >= 0 ? s : -s));
      const double r2 = (r1 != 0.0) ? det / r1 : 0.5 * (tr - (tr >= 0 ? s : -s));
      return {cd(r1, 0.0), cd(r2, 0.0)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {cd(0.5 * tr, im), cd(0.5 * tr, -im)};
  }

  const std::vector<double> c = char_poly(a);
  // Durand-Kerner with a Cauchy-bound start radius.
  double radius = 0.0;
  for (int k = 1; k <= n; ++k)
    radius = std::max(radius, 2.0 * std::pow(std::abs(c[k]), 1.0 / k));
  radius = std::max(radius, 1.0);
  std::vector<cd> z(n);
  for (int i = 0; i < n; ++i) {
    const double ang = (2.0 * M_PI * i) / n + 0.4;  // avoid the real axis
    z[i] = std::polar(radius, ang);
  }
  const double scale = std::max(1.0, a.max_abs());
  for (int iter = 0; iter < 600; ++iter) {
    double max_step = 0.0;
    for (int i = 0; i < n; ++i) {
      cd denom(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      if (std::abs(denom) == 0.0) {
        z[i] += cd(1e-8 * scale, 1e-8 * scale);
        continue;
      }
      const cd step = poly_eval(c, z[i]) / denom;
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step < 1e-15 * scale) break;
  }
  // The matrix is real: pair up conjugates and symmetrize, snapping nearly
  // real roots onto the axis.
  const double axis_tol = 1e-9 * scale;
  std::vector<bool> used(n, false);
  std::vector<cd> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (std::abs(z[i].imag()) <= axis_tol) {
      out.emplace_back(z[i].real(), 0.0);
      continue;
    }
    int best = -1;
    double best_d = 1e300;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(z[j] - std::conj(z[i]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best >= 0 && best_d <= 1e-6 * scale) {
      used[best] = true;
      const cd avg = 0.5 * (z[i] + std::conj(z[best]));
      out.push_back(avg);
      out.push_back(std::conj(avg));
    } else {
      out.push_back(z[i]);
    }
  }
  return out;
}

void jacobi_symmetric(const Matrix& s, Matrix& evec, std::vector<double>& eval) {
  const int n = s.dim();
  Matrix a = s;
  evec = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cth = 1.0 / std::sqrt(t * t + 1.0);
        const double sth = t * cth;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = cth * akp - sth * akq;
          a(k, q) = sth * akp + cth * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = cth * apk - sth * aqk;
          a(q, k) = sth * apk + cth * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = evec(k, p), vkq = evec(k, q);
          evec(k, p) = cth * vkp - sth * vkq;
          evec(k, q) = sth * vkp + cth * vkq;
        }
      }
  }
  eval.resize(n);
  for (int i = 0; i < n; ++i) eval[i] = a(i, i);
}

std::vector<std::vector<cd>> complex_nullspace(const ComplexMatrix& m, double rel_tol) {
  const int n = m.dim();
  // Row-reduce a working copy, tracking pivot columns.
  ComplexMatrix a = m;
  double max_abs = a.max_abs();
  if (max_abs == 0.0) max_abs = 1.0;
  const double tol = rel_tol * max_abs;

  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = row;
    for (int i = row + 1; i < n; ++i)
      if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
    if (std::abs(a(piv, col)) <= tol) continue;
    if (piv != row)
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
    const cd p = a(row, col);
    for (int j = 0; j < n; ++j) a(row, j) /= p;
    for (int i = 0; i < n; ++i) {
      if (i == row) continue;
      const cd f = a(i, col);
      if (std::abs(f) == 0.0) continue;
      for (int j = 0; j < n; ++j) a(i, j) -= f * a(row, j);
    }
    pivot_col.push_back(col);
    ++row;
  }

  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<cd>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<cd> v(n, cd(0.0, 0.0));
    v[free] = cd(1.0, 0.0);
    for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a(static_cast<int>(r), free);
    // Normalize.
    double norm2 = 0.0;
    for (const cd& x : v) norm2 += std::norm(x);
    const double inv = 1.0 / std::sqrt(norm2);
    for (cd& x : v) x *= inv;
    basis.push_back(std::move(v));
  }
  // Orthonormalize (modified Gram-Schmidt) for stable chain projections.
  std::vector<std::vector<cd>> ortho;
  for (auto& v : basis) {
    for (const auto& u : ortho) {
      cd proj(0.0, 0.0);
      for (int i = 0; i < n; ++i) proj += std::conj(u[i]) * v[i];
      for (int i = 0; i < n; ++i) v[i] -= proj * u[i];
    }
    double norm2 = 0.0;
    for (const cd& x : v) norm2 += std::norm(x);
    if (norm2 < 1e-24) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (cd& x : v) x *= inv;
    ortho.push_back(std::move(v));
  }
  return ortho;
}

}  // namespace liedirac::detail
