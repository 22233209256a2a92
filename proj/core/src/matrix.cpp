#include "liedirac/matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace liedirac {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw DomainError("from_rows: matrix must be square");
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diag(std::initializer_list<double> d) {
  return diag(std::vector<double>(d));
}

Matrix Matrix::diag(const std::vector<double>& d) {
  Matrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[i];
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) += o(i, j);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) -= o(i, j);
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix Matrix::operator-() const {
  Matrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = -(*this)(i, j);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(j, i);
  return m;
}

double Matrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

double Matrix::det() const {
  // LU with partial pivoting on a local copy.
  Matrix lu = *this;
  double d = 1.0;
  for (int k = 0; k < n_; ++k) {
    int piv = k;
    for (int i = k + 1; i < n_; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n_; ++j) std::swap(lu(piv, j), lu(k, j));
      d = -d;
    }
    d *= lu(k, k);
    for (int i = k + 1; i < n_; ++i) {
      const double f = lu(i, k) / lu(k, k);
      for (int j = k; j < n_; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return d;
}

bool Matrix::try_inverse(Matrix& out) const {
  Matrix a = *this;
  Matrix inv = Matrix::identity(n_);
  for (int k = 0; k < n_; ++k) {
    int piv = k;
    for (int i = k + 1; i < n_; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0.0) return false;
    if (piv != k)
      for (int j = 0; j < n_; ++j) {
        std::swap(a(piv, j), a(k, j));
        std::swap(inv(piv, j), inv(k, j));
      }
    const double p = a(k, k);
    for (int j = 0; j < n_; ++j) {
      a(k, j) /= p;
      inv(k, j) /= p;
    }
    for (int i = 0; i < n_; ++i) {
      if (i == k) continue;
      const double f = a(i, k);
      if (f == 0.0) continue;
      for (int j = 0; j < n_; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  if (!inv.all_finite()) return false;
  out = inv;
  return true;
}

Matrix Matrix::inverse() const {
  Matrix out;
  if (!try_inverse(out)) throw NumericError("singular matrix has no inverse");
  return out;
}

std::vector<double> Matrix::apply(const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) != n_)
    throw DomainError("apply: vector length does not match matrix dimension");
  std::vector<double> r(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

bool Matrix::all_finite() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (!std::isfinite((*this)(i, j))) return false;
  return true;
}

std::string Matrix::str(int precision) const {
  std::string s;
  char buf[64];
  for (int i = 0; i < n_; ++i) {
    s += (i == 0) ? "[" : " ";
    for (int j = 0; j < n_; ++j) {
      std::snprintf(buf, sizeof buf, "% .*g", precision, (*this)(i, j));
      s += buf;
      if (j + 1 < n_) s += " ";
    }
    s += (i + 1 == n_) ? "]" : "\n";
  }
  return s;
}

ComplexMatrix::ComplexMatrix(const Matrix& re) : ComplexMatrix(re.dim()) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) = cd(re(i, j), 0.0);
}

ComplexMatrix::ComplexMatrix(const Matrix& re, const Matrix& im) : ComplexMatrix(re.dim()) {
  if (im.dim() != re.dim()) throw DomainError("real/imag parts differ in dimension");
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) = cd(re(i, j), im(i, j));
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = cd(1.0, 0.0);
  return m;
}

ComplexMatrix ComplexMatrix::unit_phase_diag(const std::vector<double>& theta) {
  ComplexMatrix m(static_cast<int>(theta.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = std::polar(1.0, theta[i]);
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) += o(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) -= o(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd s) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int n = a.dim();
  ComplexMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const ComplexMatrix::cd aik = a(i, k);
      if (aik == ComplexMatrix::cd(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(j, i);
  return m;
}

Matrix ComplexMatrix::real_part() const {
  Matrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).real();
  return m;
}

Matrix ComplexMatrix::imag_part() const {
  Matrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).imag();
  return m;
}

ComplexMatrix::cd ComplexMatrix::trace() const {
  cd t(0.0, 0.0);
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += std::norm((*this)(i, j));
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

bool ComplexMatrix::try_inverse(ComplexMatrix& out) const {
  ComplexMatrix a = *this;
  ComplexMatrix inv = ComplexMatrix::identity(n_);
  for (int k = 0; k < n_; ++k) {
    int piv = k;
    for (int i = k + 1; i < n_; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) == 0.0) return false;
    if (piv != k)
      for (int j = 0; j < n_; ++j) {
        std::swap(a(piv, j), a(k, j));
        std::swap(inv(piv, j), inv(k, j));
      }
    const cd p = a(k, k);
    for (int j = 0; j < n_; ++j) {
      a(k, j) /= p;
      inv(k, j) /= p;
    }
    for (int i = 0; i < n_; ++i) {
      if (i == k) continue;
      const cd f = a(i, k);
      if (f == cd(0.0, 0.0)) continue;
      for (int j = 0; j < n_; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  if (!inv.all_finite()) return false;
  out = inv;
  return true;
}

ComplexMatrix ComplexMatrix::inverse() const {
  ComplexMatrix out;
  if (!try_inverse(out)) throw NumericError("singular complex matrix has no inverse");
  return out;
}

bool ComplexMatrix::all_finite() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const cd v = (*this)(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  return true;
}

std::string ComplexMatrix::str(int precision) const {
  std::string s;
  char buf[96];
  for (int i = 0; i < n_; ++i) {
    s += (i == 0) ? "[" : " ";
    for (int j = 0; j < n_; ++j) {
      const cd v = (*this)(i, j);
      std::snprintf(buf, sizeof buf, "(% .*g%+.*gi)", precision, v.real(), precision, v.imag());
      s += buf;
      if (j + 1 < n_) s += " ";
    }
    s += (i + 1 == n_) ? "]" : "\n";
  }
  return s;
}

namespace detail {

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, int d) {
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int i = k + 1; i < d; ++i)
      if (std::abs(a[i * d + k]) > std::abs(a[piv * d + k])) piv = i;
    if (a[piv * d + k] == 0.0) throw NumericError("solve_dense: singular system");
    if (piv != k) {
      for (int j = 0; j < d; ++j) std::swap(a[piv * d + j], a[k * d + j]);
      std::swap(b[piv], b[k]);
    }
    for (int i = k + 1; i < d; ++i) {
      const double f = a[i * d + k] / a[k * d + k];
      if (f == 0.0) continue;
      for (int j = k; j < d; ++j) a[i * d + j] -= f * a[k * d + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(d, 0.0);
  for (int i = d - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < d; ++j) s -= a[i * d + j] * x[j];
    x[i] = s / a[i * d + i];
  }
  return x;
}

double det_dense(std::vector<double> a, int d) {
  double det = 1.0;
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int i = k + 1; i < d; ++i)
      if (std::abs(a[i * d + k]) > std::abs(a[piv * d + k])) piv = i;
    if (a[piv * d + k] == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < d; ++j) std::swap(a[piv * d + j], a[k * d + j]);
      det = -det;
    }
    det *= a[k * d + k];
    for (int i = k + 1; i < d; ++i) {
      const double f = a[i * d + k] / a[k * d + k];
      for (int j = k; j < d; ++j) a[i * d + j] -= f * a[k * d + j];
    }
  }
  return det;
}

}  // namespace detail

double pairwise_sum(const double* v, size_t count) {
  if (count == 0) return 0.0;
  if (count <= 8) {
    double s = v[0];
    for (size_t i = 1; i < count; ++i) s += v[i];
    return s;
  }
  const size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

}  // namespace liedirac
