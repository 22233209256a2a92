#include <doctest.h>

#include <cmath>

#include "liedirac/group.hpp"
#include "liedirac/rng.hpp"

using namespace liedirac;

TEST_CASE("frobenius gauge examples") {
  CHECK(frobenius_gauge(Matrix::identity(2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(frobenius_gauge(Matrix::diag({3.0, 4.0})) == doctest::Approx(5.0));
  // Any rotation has orthonormal columns.
  for (double theta : {0.3, 1.2, -2.6}) {
    Matrix r(2);
    r(0, 0) = std::cos(theta);
    r(0, 1) = -std::sin(theta);
    r(1, 0) = std::sin(theta);
    r(1, 1) = std::cos(theta);
    CHECK(frobenius_gauge(r) == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("group norm examples") {
  const GroupPtr so2 = make_group("SO(2)");
  CHECK(group_norm(make_element(so2, Matrix::identity(2))) == doctest::Approx(std::sqrt(2.0)));

  const GroupPtr gl1 = make_group("GL(1)");
  Matrix x(1);
  x(0, 0) = 3.0;
  CHECK(group_norm(make_element(gl1, x)) == doctest::Approx(3.0));

  const GroupPtr sl2 = make_group("SL(2)");
  const GroupElement d = make_element(sl2, Matrix::diag({2.0, 0.5}));
  CHECK(group_norm(d) == doctest::Approx(std::sqrt(4.25)));
  // Inversion invariance is exact by construction.
  CHECK(group_norm(make_element(sl2, d.mat.inverse())) == group_norm(d));

  CHECK_THROWS_AS(group_norm(Matrix::zero(2)), NumericError);
}

TEST_CASE("gauge is bi-invariant under orthogonal factors") {
  const GroupPtr so2 = make_group("SO(2)");
  SplitMix64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix g(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = rng.next_uniform(-4.0, 4.0);
    const auto ks = sample_group(so2, 2, 2.0, 1000 + trial);
    const Matrix conj = ks[0].mat * g * ks[1].mat;
    CHECK(frobenius_gauge(conj) == doctest::Approx(frobenius_gauge(g)).epsilon(1e-10));
  }
}

TEST_CASE("gauge is sub-multiplicative") {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    Matrix a(3), b(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = rng.next_uniform(-3.0, 3.0);
        b(i, j) = rng.next_uniform(-3.0, 3.0);
      }
    CHECK(frobenius_gauge(a * b) <= frobenius_gauge(a) * frobenius_gauge(b) * (1.0 + 1e-12));
  }
}

TEST_CASE("membership residuals") {
  const GroupPtr sl2 = make_group("SL(2)");
  CHECK(membership_residual(Matrix::identity(2), *sl2) == 0.0);
  CHECK(membership_residual(Matrix::diag({2.0, 1.0}), *sl2) == doctest::Approx(1.0));

  const GroupPtr so2 = make_group("SO(2)");
  Matrix r(2);
  r(0, 0) = std::cos(0.4);
  r(0, 1) = -std::sin(0.4);
  r(1, 0) = std::sin(0.4);
  r(1, 1) = std::cos(0.4);
  CHECK(membership_residual(r, *so2) < 1e-15);

  CHECK_THROWS_AS(make_element(sl2, Matrix::diag({2.0, 1.0})), DomainError);
}

TEST_CASE("catalog specs satisfy their invariants") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const GroupPtr spec = make_group(name);
    CHECK_NOTHROW(validate_spec(spec));
    CHECK(spec->dim == static_cast<int>(spec->algebra_basis.size()));
  }
  CHECK_THROWS_AS(make_group("E8"), DomainError);
}

TEST_CASE("algebra vectors stay consistent with their coordinates") {
  const GroupPtr heis = make_group("HEIS");
  const AlgebraVector v = make_algebra_vector(heis, {1.0, -2.0, 0.5});
  CHECK(v.mat(0, 1) == 1.0);
  CHECK(v.mat(1, 2) == -2.0);
  CHECK(v.mat(0, 2) == 0.5);
  const AlgebraVector w = algebra_from_matrix(heis, v.mat);
  for (int i = 0; i < 3; ++i) CHECK(w.coords[i] == doctest::Approx(v.coords[i]).epsilon(1e-12));

  // A matrix outside the algebra is rejected.
  Matrix low(3);
  low(2, 0) = 1.0;
  CHECK_THROWS_AS(algebra_from_matrix(heis, low), DomainError);
}

TEST_CASE("sample_group is deterministic and respects norm caps") {
  for (const char* name : {"SO(2)", "GL(1)", "GL+(1)", "SL(2)", "GL(2)", "HEIS", "DIAG+(2)"}) {
    CAPTURE(name);
    const GroupPtr spec = make_group(name);
    const auto a = sample_group(spec, 25, 50.0, 42);
    const auto b = sample_group(spec, 25, 50.0, 42);
    REQUIRE(a.size() == 25);
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(frobenius_distance(a[i].mat, b[i].mat) == 0.0);
      CHECK(membership_residual(a[i].mat, *spec) <= spec->membership_tol);
      CHECK(group_norm(a[i]) <= 50.0 * (1.0 + 1e-9));
    }
  }
}
