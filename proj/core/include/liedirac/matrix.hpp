#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "liedirac/errors.hpp"

namespace liedirac {

/// Ambient matrix sizes are small by design; charts and decompositions are
/// hand-derived per group and nothing in the catalog exceeds this.
inline constexpr int kMaxDim = 8;

namespace detail {
inline void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw DomainError("matrix dimension must be in [1, " +
                      std::to_string(kMaxDim) + "], got " + std::to_string(n));
}
}  // namespace detail

/// Dense square real matrix with inline storage, value semantics.
class Matrix {
public:
  Matrix() : n_(0) { a_.fill(0.0); }
  explicit Matrix(int n) : n_(n) {
    detail::check_dim(n);
    a_.fill(0.0);
  }
  /// Row-major construction: Matrix::from_rows({{1,2},{3,4}}).
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix zero(int n) { return Matrix(n); }
  static Matrix identity(int n);
  static Matrix diag(std::initializer_list<double> d);
  static Matrix diag(const std::vector<double>& d);

  int dim() const { return n_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * kMaxDim + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * kMaxDim + j]; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix operator-() const;

  Matrix transpose() const;
  double trace() const;
  /// sqrt of the sum of squared entries, i.e. sqrt(tr(m^t m)).
  double frobenius() const;
  double max_abs() const;

  double det() const;
  /// Gauss-Jordan with partial pivoting; throws NumericError when singular.
  Matrix inverse() const;
  bool try_inverse(Matrix& out) const;

  /// Matrix-vector product (v.size() == dim()).
  std::vector<double> apply(const std::vector<double>& v) const;

  bool all_finite() const;
  std::string str(int precision = 6) const;

private:
  int n_;
  std::array<double, kMaxDim * kMaxDim> a_;
};

inline double frobenius_distance(const Matrix& a, const Matrix& b) {
  return (a - b).frobenius();
}

/// Dense square complex matrix, same storage scheme as Matrix.
class ComplexMatrix {
public:
  using cd = std::complex<double>;

  ComplexMatrix() : n_(0) { a_.fill(cd(0.0, 0.0)); }
  explicit ComplexMatrix(int n) : n_(n) {
    detail::check_dim(n);
    a_.fill(cd(0.0, 0.0));
  }
  ComplexMatrix(const Matrix& re);  // NOLINT: deliberate promotion
  ComplexMatrix(const Matrix& re, const Matrix& im);
  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int n) { return ComplexMatrix(n); }
  /// diag(exp(i theta_1), ..., exp(i theta_n)).
  static ComplexMatrix unit_phase_diag(const std::vector<double>& theta);

  int dim() const { return n_; }

  cd& operator()(int i, int j) { return a_[static_cast<size_t>(i) * kMaxDim + j]; }
  cd operator()(int i, int j) const { return a_[static_cast<size_t>(i) * kMaxDim + j]; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cd s);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cd s) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  ComplexMatrix transpose() const;
  Matrix real_part() const;
  Matrix imag_part() const;
  cd trace() const;
  double frobenius() const;
  double max_abs() const;

  ComplexMatrix inverse() const;
  bool try_inverse(ComplexMatrix& out) const;

  bool all_finite() const;
  std::string str(int precision = 6) const;

private:
  int n_;
  std::array<cd, kMaxDim * kMaxDim> a_;
};

/// Fixed-shape pairwise summation. The reduction tree depends only on the
/// length of the input, which makes accumulated roundoff reproducible across
/// runs and thread counts.
double pairwise_sum(const double* v, size_t count);
inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

namespace detail {
/// Gaussian-elimination helpers on flat row-major storage for algebra-sized
/// systems (Gram matrices reach dim n^2, beyond the inline Matrix cap).
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, int d);
double det_dense(std::vector<double> a, int d);
}  // namespace detail

}  // namespace liedirac
