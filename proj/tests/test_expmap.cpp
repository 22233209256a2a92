#include <doctest.h>

#include <cmath>

#include "liedirac/group.hpp"
#include "liedirac/rng.hpp"

using namespace liedirac;

TEST_CASE("matrix_exp on nilpotent input uses the exact finite series") {
  Matrix x(2);
  x(0, 1) = 3.5;
  const Matrix e = matrix_exp(x);
  CHECK(e(0, 0) == 1.0);
  CHECK(e(0, 1) == 3.5);
  CHECK(e(1, 0) == 0.0);
  CHECK(e(1, 1) == 1.0);
}

TEST_CASE("matrix_exp basics") {
  CHECK(frobenius_distance(matrix_exp(Matrix::zero(3)), Matrix::identity(3)) == 0.0);

  SplitMix64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix x(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) x(i, j) = rng.next_uniform(-1.5, 1.5);
    const Matrix fwd = matrix_exp(x);
    const Matrix bwd = matrix_exp(-x);
    CHECK(frobenius_distance(fwd * bwd, Matrix::identity(3)) < 1e-12);
  }
}

TEST_CASE("matrix_log examples") {
  CHECK(matrix_log(Matrix::identity(2)).frobenius() == doctest::Approx(0.0));

  const Matrix d = Matrix::diag({std::exp(1.0), std::exp(-1.0)});
  const Matrix ld = matrix_log(d);
  CHECK(ld(0, 0) == doctest::Approx(1.0));
  CHECK(ld(1, 1) == doctest::Approx(-1.0));
  CHECK(std::abs(ld(0, 1)) + std::abs(ld(1, 0)) < 1e-14);

  const double theta = 2.2;  // |theta| < pi
  Matrix r(2);
  r(0, 0) = std::cos(theta);
  r(0, 1) = -std::sin(theta);
  r(1, 0) = std::sin(theta);
  r(1, 1) = std::cos(theta);
  const Matrix lr = matrix_log(r);
  CHECK(lr(1, 0) == doctest::Approx(theta).epsilon(1e-10));
  CHECK(lr(0, 1) == doctest::Approx(-theta).epsilon(1e-10));
}

TEST_CASE("matrix_log rejects spectrum on the negative real axis") {
  CHECK_THROWS_AS(matrix_log(Matrix::diag({-1.0, -2.0})), DomainError);
  CHECK_THROWS_AS(matrix_log(Matrix::diag({1.0, -3.0})), DomainError);
}

TEST_CASE("log is a left inverse of exp near zero") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix x(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) x(i, j) = rng.next_uniform(-0.8, 0.8);
    const Matrix back = matrix_log(matrix_exp(x));
    CHECK(frobenius_distance(back, x) < 1e-10 * std::max(1.0, x.frobenius()));
  }
}

TEST_CASE("exp_matrix and log_matrix round trip through group elements") {
  const GroupPtr sl2 = make_group("SL(2)");
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> coords(sl2->dim);
    for (double& c : coords) c = rng.next_uniform(-0.7, 0.7);
    const AlgebraVector x = make_algebra_vector(sl2, coords);
    const GroupElement g = exp_matrix(x);
    CHECK(membership_residual(g.mat, *sl2) < 1e-9);
    const AlgebraVector back = log_matrix(g);
    for (int i = 0; i < sl2->dim; ++i)
      CHECK(back.coords[i] == doctest::Approx(coords[i]).epsilon(1e-8));
  }
}

TEST_CASE("haar density of the exponential chart") {
  SUBCASE("identity point") {
    const GroupPtr sl2 = make_group("SL(2)");
    const AlgebraVector zero = make_algebra_vector(sl2, {0.0, 0.0, 0.0});
    CHECK(haar_density_exp_chart(zero) == doctest::Approx(1.0));
  }

  SUBCASE("abelian groups have density 1 everywhere") {
    for (const char* name : {"SO(2)", "GL+(1)", "DIAG+(2)"}) {
      const GroupPtr spec = make_group(name);
      SplitMix64 rng(3);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> coords(spec->dim);
        for (double& c : coords) c = rng.next_uniform(-2.0, 2.0);
        CHECK(haar_density_exp_chart(make_algebra_vector(spec, coords)) ==
              doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  SUBCASE("Heisenberg density is 1, against the symbolic determinant oracle") {
    // Basis (E12, E23, E13) with [E12, E23] = E13 and central E13: ad_V has
    // square zero, so the chart Jacobian is det(I - ad_V/2). The oracle
    // builds that 3x3 matrix explicitly.
    const GroupPtr heis = make_group("HEIS");
    SplitMix64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
      const double a = rng.next_uniform(-3.0, 3.0);
      const double b = rng.next_uniform(-3.0, 3.0);
      const double c = rng.next_uniform(-3.0, 3.0);
      Matrix op = Matrix::identity(3);
      op(2, 0) = b / 2.0;   // image of E12 is -b E13 under ad, halved and negated
      op(2, 1) = -a / 2.0;  // image of E23 is a E13
      const double oracle_det = std::abs(op.det());
      CHECK(oracle_det == doctest::Approx(1.0));
      const AlgebraVector v = make_algebra_vector(heis, {a, b, c});
      CHECK(haar_density_exp_chart(v) == doctest::Approx(oracle_det).epsilon(1e-13));
    }
  }

  SUBCASE("density is smooth under perturbation") {
    const GroupPtr sl2 = make_group("SL(2)");
    const AlgebraVector base = make_algebra_vector(sl2, {0.4, -0.2, 0.3});
    const double f0 = haar_density_exp_chart(base);
    for (const double eps : {1e-4, 1e-5, 1e-6}) {
      const AlgebraVector shifted = make_algebra_vector(sl2, {0.4 + eps, -0.2, 0.3});
      CHECK(std::abs(haar_density_exp_chart(shifted) - f0) < 10.0 * eps);
    }
  }
}

TEST_CASE("is_nilpotent") {
  Matrix n(3);
  n(0, 1) = 2.0;
  n(1, 2) = -1.0;
  n(0, 2) = 0.5;
  CHECK(is_nilpotent(n));
  CHECK_FALSE(is_nilpotent(Matrix::identity(3)));
}
