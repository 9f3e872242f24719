#include <doctest.h>

#include "support.hpp"

using namespace tmtest;

TEST_CASE("pinv of zero and diagonal matrices") {
  CHECK(pinv(CMatrix::Zero(2, 2)).norm() == 0.0);
  CHECK((pinv(diag2(2, 0)) - diag2(0.5, 0)).norm() < 1e-15);
}

TEST_CASE("pinv of the all-ones matrix satisfies the Penrose equations") {
  const CMatrix a = real2(1, 1, 1, 1);
  const CMatrix x = pinv(a);
  CHECK((x - a / 4.0).norm() < 1e-14);
  CHECK((a * x * a - a).norm() < 1e-14);
  CHECK((x * a * x - x).norm() < 1e-14);
  CHECK((CMatrix(a * x).adjoint() - a * x).norm() < 1e-14);
  CHECK((CMatrix(x * a).adjoint() - x * a).norm() < 1e-14);
}

TEST_CASE("pinv rejects non-finite input") {
  CMatrix a = CMatrix::Identity(2, 2);
  a(0, 1) = Complex(std::nan(""), 0);
  CHECK_THROWS_AS(pinv(a), InvalidInput);
}

TEST_CASE("pinv is an involution and respects unitary transforms") {
  Gen g(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Index r = g.integer(1, 4), c = g.integer(1, 4);
    const Index rank = g.integer(1, std::min(r, c));
    const CMatrix a = g.matrix(r, rank) * g.matrix(rank, c);
    CHECK((pinv(pinv(a)) - a).norm() <= 1e-9 * (1 + a.norm()));
    const CMatrix v = g.unitary(r), u = g.unitary(c);
    const CMatrix lhs = pinv(CMatrix(v * a * u));
    const CMatrix rhs = u.adjoint() * pinv(a) * v.adjoint();
    CHECK((lhs - rhs).norm() <= 1e-9 * (1 + rhs.norm()));
  }
}

TEST_CASE("adjugate closed forms") {
  CHECK((adjugate(CMatrix::Identity(2, 2)) - CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((adjugate(real2(1, 2, 3, 4)) - real2(4, -2, -3, 1)).norm() < 1e-15);
  CHECK(adjugate(mat1(7.5))(0, 0) == Complex(1, 0));
}

TEST_CASE("adjugate identity on random and singular matrices") {
  Gen g(12);
  for (int trial = 0; trial < 40; ++trial) {
    const Index q = g.integer(1, 5);
    CMatrix a = g.matrix(q, q);
    if (trial % 3 == 0 && q > 1) a.col(0) = a.col(1);
    const CMatrix adj = adjugate(a);
    const CMatrix d = a.determinant() * CMatrix::Identity(q, q);
    const double scale = 1 + std::pow(a.norm(), static_cast<double>(q));
    CHECK((adj * a - d).norm() <= 1e-10 * scale);
    CHECK((a * adj - d).norm() <= 1e-10 * scale);
  }
}

TEST_CASE("nonnegativity test") {
  CHECK(is_nonneg_hermitian(CMatrix::Identity(3, 3)));
  CHECK_FALSE(is_nonneg_hermitian(diag2(1, -1)));
  CHECK(is_nonneg_hermitian(real2(1, 1, 1, 1)));
  CHECK_FALSE(is_nonneg_hermitian(real2(1, 1, 0, 1)));  // not Hermitian
}

TEST_CASE("real and imaginary parts reassemble exactly") {
  Gen g(13);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = g.matrix(3, 3);
    const CMatrix back = hermitian_part(a) + Complex(0, 1) * skew_part(a);
    CHECK((back - a).norm() <= 1e-15 * a.norm());
  }
}

TEST_CASE("rank, square roots and unitarity") {
  CHECK(numerical_rank(real2(1, 1, 1, 1)) == 1);
  CHECK(numerical_rank(CMatrix::Zero(3, 3)) == 0);
  const CMatrix s = sqrt_psd(diag2(4, 9));
  CHECK((s - diag2(2, 3)).norm() < 1e-14);
  CHECK(is_unitary(rotation_u()));
  CHECK_FALSE(is_unitary(diag2(1, 2)));
  CHECK(min_hermitian_eigenvalue(real2(1, 2, 2, 1)) == doctest::Approx(-1.0));
}
