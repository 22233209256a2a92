#include <doctest.h>

#include "liedirac/matrix.hpp"
#include "liedirac/rng.hpp"

using namespace liedirac;

TEST_CASE("matrix basics") {
  const Matrix a = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  CHECK(a.trace() == doctest::Approx(5.0));
  CHECK(a.det() == doctest::Approx(-2.0));
  CHECK(a.frobenius() == doctest::Approx(std::sqrt(30.0)));

  const Matrix inv = a.inverse();
  const Matrix prod = a * inv;
  CHECK(frobenius_distance(prod, Matrix::identity(2)) < 1e-14);

  const Matrix t = a.transpose();
  CHECK(t(0, 1) == 3.0);
  CHECK(t(1, 0) == 2.0);
}

TEST_CASE("matrix inverse rejects singular input") {
  const Matrix s = Matrix::from_rows({{1.0, 2.0}, {2.0, 4.0}});
  CHECK(s.det() == doctest::Approx(0.0));
  CHECK_THROWS_AS(s.inverse(), NumericError);
}

TEST_CASE("matrix dimension guard") {
  CHECK_THROWS_AS(Matrix(9), DomainError);
  CHECK_THROWS_AS(Matrix(0), DomainError);
}

TEST_CASE("inverse identity (A B)^-1 = B^-1 A^-1 on random samples") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    Matrix a(n), b(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = rng.next_uniform(-2.0, 2.0);
        b(i, j) = rng.next_uniform(-2.0, 2.0);
      }
    if (std::abs(a.det()) < 1e-3 || std::abs(b.det()) < 1e-3) continue;
    const Matrix lhs = (a * b).inverse();
    const Matrix rhs = b.inverse() * a.inverse();
    CHECK(frobenius_distance(lhs, rhs) < 1e-9 * std::max(1.0, rhs.frobenius()));
  }
}

TEST_CASE("complex matrix inverse and transpose") {
  ComplexMatrix z(2);
  z(0, 0) = {1.0, 1.0};
  z(0, 1) = {0.0, 2.0};
  z(1, 0) = {-1.0, 0.5};
  z(1, 1) = {2.0, -1.0};
  const ComplexMatrix zi = z.inverse();
  const ComplexMatrix prod = z * zi;
  CHECK(frobenius_distance(prod.real_part(), Matrix::identity(2)) < 1e-13);
  CHECK(prod.imag_part().frobenius() < 1e-13);
  CHECK(z.transpose()(0, 1) == z(1, 0));
}

TEST_CASE("pairwise sum is deterministic and accurate") {
  SplitMix64 rng(99);
  std::vector<double> v(100001);
  for (double& x : v) x = rng.next_uniform(-1.0, 1.0) * std::exp(rng.next_uniform(0.0, 8.0));
  const double s1 = pairwise_sum(v);
  const double s2 = pairwise_sum(v);
  CHECK(s1 == s2);  // bitwise
  long double ref = 0.0L;
  for (double x : v) ref += static_cast<long double>(x);
  CHECK(std::abs(s1 - static_cast<double>(ref)) < 1e-6);
}
