#include <doctest.h>

#include "support.hpp"

using namespace tmtest;

namespace {

CMatrix rotated_phi(Complex z) {
  const double s = std::sqrt(3.0);
  const Complex f = (1.0 + z) / (1.0 - z);
  CMatrix m(2, 2);
  m << 3.0 + f, -s * (1.0 - f), -s * (1.0 - f), 1.0 + 3.0 * f;
  return m / 4.0;
}

CaratheodoryQuotient central_quotient(const HermSeq& s) { return build_ab(to_gamma(s), s.last_index()); }

}  // namespace

TEST_CASE("Caratheodory condition") {
  CHECK(caratheodory_check(scalar_gamma({1, 2})));
  CHECK_FALSE(caratheodory_check(scalar_gamma({1, 4})));
  // oracle: re S_1 for Gamma = (1, 4)
  const CMatrix re = hermitian_part(lower_block_toeplitz(scalar_gamma({1, 4}).coeffs(), 1));
  CHECK((re - real2(1, 2, 2, 1)).norm() < 1e-15);
  CHECK(min_hermitian_eigenvalue(re) == doctest::Approx(-1.0));
  CHECK(caratheodory_check(scalar_gamma({0})));
  CHECK(caratheodory_failure(scalar_gamma({1, 4})) == std::optional<std::size_t>(1));
}

TEST_CASE("quotient for scalar fixtures") {
  const auto cq = build_ab(scalar_gamma({1, 2}), 1);
  CHECK((cq.a(0.37) - mat1(1.37)).norm() < 1e-14);
  CHECK((cq.b(0.37) - mat1(0.63)).norm() < 1e-14);
  const auto flat = build_ab(scalar_gamma({1, 0}), 1);
  CHECK((flat.a(0.5) - mat1(1)).norm() < 1e-15);
  CHECK((flat.b(0.5) - mat1(1)).norm() < 1e-15);
  CHECK_THROWS_AS(build_ab(scalar_gamma({1, 4}), 1), ModelError);
  CHECK_THROWS_AS(build_ab(GammaSeq({real2(1, 1, 0, 1)}), 0), InvalidInput);
}

TEST_CASE("quotient for the rotated example") {
  const auto cq = central_quotient(rotated_seq());
  for (Complex z : {Complex(0, 0), Complex(0.5, 0), Complex(-0.3, 0.6), Complex(0.1, -0.9)})
    CHECK((eval_phi(cq, z) - rotated_phi(z)).norm() < 1e-12);
  CHECK((eval_phi(cq, 0.0) - CMatrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("evaluation of Phi") {
  const auto cq = build_ab(scalar_gamma({1, 2}), 1);
  CHECK(std::abs(eval_phi(cq, 0.0)(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(eval_phi(cq, 0.5)(0, 0) - 3.0) < 1e-14);
  CHECK_THROWS_AS(eval_phi(cq, 1.0), InvalidInput);
  CHECK_THROWS_AS(eval_quotient(cq, 1.0), ModelError);
}

TEST_CASE("positive-definite polynomials") {
  const auto pd = build_AB_pd(scalar_seq({1, 0}), 1);
  CHECK((pd.A(0.4) - mat1(1)).norm() < 1e-14);
  CHECK((pd.B(0.4) - mat1(1)).norm() < 1e-14);
  const auto half = build_AB_pd(scalar_seq({1, 0.5}), 1);
  // oracle: T_1^{-1} = (4/3)[[1, -1/2], [-1/2, 1]]
  const CMatrix tinv = (4.0 / 3.0) * real2(1, -0.5, -0.5, 1);
  CHECK((block_toeplitz(scalar_seq({1, 0.5}), 1) * tinv - CMatrix::Identity(2, 2)).norm() < 1e-14);
  const Complex z(0.2, 0.3);
  CHECK(std::abs(half.A(z)(0, 0) - (4.0 / 3.0) * (1.0 - z / 2.0)) < 1e-14);
  const auto two = build_AB_pd(HermSeq({CMatrix::Identity(2, 2), CMatrix::Zero(2, 2)}), 1);
  CHECK((two.A(z) - CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK_THROWS_AS(build_AB_pd(scalar_seq({1, 1}), 1), ModelError);
}

TEST_CASE("radial atom limits") {
  const auto cq = build_ab(scalar_gamma({1, 2}), 1);
  CHECK(std::abs(radial_atom_limit(cq, 1.0)(0, 0) - 1.0) < 1e-10);
  CHECK(std::abs(radial_atom_limit(cq, -1.0)(0, 0)) < 1e-10);
  CHECK(std::abs(radial_atom_limit(build_ab(scalar_gamma({1, 0}), 1), 1.0)(0, 0)) < 1e-10);
  CHECK_THROWS_AS(radial_atom_limit(cq, 0.5), InvalidInput);
}

TEST_CASE("property: real part of Phi is nonnegative and of constant rank") {
  Gen g(51);
  for (int trial = 0; trial < 20; ++trial) {
    const Index q = g.integer(1, 3);
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 4));
    const HermSeq s = trial % 2 ? random_dirac_measure(g, q, n).sequence(n)
                                : random_density_measure(g, q, 2, g.integer(0, 2), 1).sequence(n);
    const auto cq = central_quotient(s);
    const double scale = 1 + s[0].norm();
    const Index r0 = numerical_rank(s[0], 1e-8);
    for (int k = 0; k < 200; ++k) {
      const Complex z = g.in_disk(0.9);
      const CMatrix re = hermitian_part(eval_phi(cq, z));
      CHECK(min_hermitian_eigenvalue(re) >= -1e-9 * scale);
      if (k % 20 == 0) CHECK(numerical_rank(re, 1e-8) == r0);
    }
  }
}

TEST_CASE("property: Taylor coefficients reproduce Gamma") {
  Gen g(52);
  for (int trial = 0; trial < 20; ++trial) {
    const Index q = g.integer(1, 3);
    const std::size_t n = static_cast<std::size_t>(g.integer(0, 5));
    const HermSeq s = trial % 3 == 0 ? random_dirac_measure(g, q, n + 1).sequence(n)
                                     : random_density_measure(g, q, 3, 1, 1).sequence(n);
    const GammaSeq gs = to_gamma(s);
    const auto tc = taylor_coefficients(build_ab(gs, n), n + 1);
    CHECK(max_diff(tc, gs.coeffs()) <= 1e-8 * (1 + s[0].norm()));
  }
}

TEST_CASE("property: positive-definite inputs have pole-free quotients matching the A-form") {
  Gen g(53);
  for (int trial = 0; trial < 10; ++trial) {
    const Index q = g.integer(1, 2);
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    const HermSeq s = random_density_measure(g, q, 2, 0, 1).sequence(n);
    const auto cq = central_quotient(s);
    CHECK(unimodular_roots(det_poly(cq.b)).empty());
    const auto pd = build_AB_pd(s, n);
    const Complex zeta = g.unimodular();
    const CMatrix ainv = pd.A(zeta).inverse();
    const CMatrix target = ainv.adjoint() * pd.A(0.0) * ainv;
    const CMatrix near = hermitian_part(eval_phi(cq, (1.0 - 1e-9) * zeta));
    CHECK((near - target).norm() <= 1e-6 * (1 + target.norm()));
  }
}
