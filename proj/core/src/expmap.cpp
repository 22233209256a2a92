#include <algorithm>
#include <cmath>

#include "eig_small.hpp"
#include "liedirac/group.hpp"

namespace liedirac {

namespace {

// Taylor core after scaling; converges fast once |X| <= 1/4.
Matrix exp_taylor(const Matrix& x) {
  const int n = x.dim();
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * x;
    term *= 1.0 / k;
    sum += term;
    if (term.max_abs() < 1e-20 * std::max(1.0, sum.max_abs())) break;
  }
  return sum;
}

// Denman-Beavers square root; the iterates stay well conditioned for the
// near-identity inputs the logarithm feeds it.
Matrix sqrt_denman_beavers(const Matrix& a) {
  const int n = a.dim();
  Matrix y = a;
  Matrix z = Matrix::identity(n);
  for (int iter = 0; iter < 60; ++iter) {
    Matrix yi, zi;
    if (!y.try_inverse(yi) || !z.try_inverse(zi))
      throw NumericError("matrix square root: singular iterate");
    const Matrix y_next = (y + zi) * 0.5;
    const Matrix z_next = (z + yi) * 0.5;
    const double step = frobenius_distance(y_next, y);
    y = y_next;
    z = z_next;
    if (step < 1e-15 * std::max(1.0, y.frobenius())) break;
  }
  return y;
}

}  // namespace

bool is_nilpotent(const Matrix& x, double tol) {
  const int n = x.dim();
  const double scale = std::max(1.0, x.frobenius());
  Matrix p = x;
  for (int k = 1; k < n; ++k) p = p * x;
  return p.frobenius() <= tol * std::pow(scale, n);
}

Matrix matrix_exp(const Matrix& x) {
  const int n = x.dim();
  if (is_nilpotent(x, 1e-14)) {
    // Finite series, exact up to roundoff.
    Matrix sum = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k < n; ++k) {
      term = term * x;
      term *= 1.0 / k;
      sum += term;
    }
    return sum;
  }
  const double norm = x.frobenius();
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.25) {
    scaled *= 0.5;
    ++squarings;
  }
  Matrix result = exp_taylor(x * std::ldexp(1.0, -squarings));
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

Matrix matrix_log(const Matrix& g) {
  const int n = g.dim();
  const Matrix eye = Matrix::identity(n);

  if (is_nilpotent(g - eye, 1e-12)) {
    // Unipotent: the Mercator series terminates at n-1 terms.
    const Matrix d = g - eye;
    Matrix sum = Matrix::zero(n);
    Matrix power = eye;
    for (int k = 1; k < n; ++k) {
      power = power * d;
      sum += power * (((k % 2) ? 1.0 : -1.0) / k);
    }
    return sum;
  }

  // Principal branch requires the spectrum off the closed negative reals.
  for (const auto& ev : detail::eigenvalues(g)) {
    const double scale = std::max(1.0, g.max_abs());
    if (ev.real() <= 0.0 && std::abs(ev.imag()) <= 1e-12 * scale)
      throw DomainError("matrix_log: eigenvalue on the closed negative real axis, "
                        "principal logarithm undefined");
  }

  // Inverse scaling-and-squaring: square-root until close to the identity,
  // run the Mercator series, then scale back.
  Matrix a = g;
  int halvings = 0;
  while (frobenius_distance(a, eye) > 0.25 && halvings < 40) {
    a = sqrt_denman_beavers(a);
    ++halvings;
  }
  const Matrix d = a - eye;
  Matrix sum = Matrix::zero(n);
  Matrix power = eye;
  for (int k = 1; k <= 60; ++k) {
    power = power * d;
    const Matrix term = power * (((k % 2) ? 1.0 : -1.0) / k);
    sum += term;
    if (term.max_abs() < 1e-20 * std::max(1.0, sum.max_abs())) break;
  }
  return sum * std::ldexp(1.0, halvings);
}

GroupElement exp_matrix(const AlgebraVector& x) {
  return make_element(x.spec, matrix_exp(x.mat));
}

AlgebraVector log_matrix(const GroupElement& g) {
  const Matrix x = matrix_log(g.mat);
  return algebra_from_matrix(g.spec, x, 1e-8);
}

double haar_density_exp_chart(const AlgebraVector& x) {
  const auto& basis = x.spec->algebra_basis;
  const int d = x.spec->dim;
  const size_t dd = static_cast<size_t>(d) * d;

  // ad X as a d x d matrix over the basis coordinates (flat storage: the
  // algebra dimension can exceed the inline Matrix cap).
  std::vector<double> ad(dd, 0.0);
  for (int j = 0; j < d; ++j) {
    const Matrix bracket = x.mat * basis[j] - basis[j] * x.mat;
    const AlgebraVector col = algebra_from_matrix(x.spec, bracket, 1e-8);
    for (int i = 0; i < d; ++i) ad[static_cast<size_t>(i) * d + j] = col.coords[i];
  }

  auto mat_mul = [d, dd](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(dd, 0.0);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        const double aik = a[static_cast<size_t>(i) * d + k];
        if (aik == 0.0) continue;
        for (int j = 0; j < d; ++j)
          c[static_cast<size_t>(i) * d + j] += aik * b[static_cast<size_t>(k) * d + j];
      }
    return c;
  };

  // (1 - e^{-ad}) / ad = sum_{k>=0} (-ad)^k / (k+1)!.
  std::vector<double> op(dd, 0.0), term(dd, 0.0);
  for (int i = 0; i < d; ++i) op[static_cast<size_t>(i) * d + i] = term[static_cast<size_t>(i) * d + i] = 1.0;
  double factorial = 1.0;
  for (int k = 1; k <= 60; ++k) {
    term = mat_mul(term, ad);
    for (double& v : term) v = -v;
    factorial *= (k + 1);
    double op_max = 0.0, contrib_max = 0.0;
    for (size_t e = 0; e < dd; ++e) {
      op[e] += term[e] / factorial;
      op_max = std::max(op_max, std::abs(op[e]));
      contrib_max = std::max(contrib_max, std::abs(term[e] / factorial));
    }
    if (contrib_max < 1e-20 * std::max(1.0, op_max)) break;
  }
  return std::abs(detail::det_dense(std::move(op), d));
}

}  // namespace liedirac
