#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tmoment/central.hpp"
#include "tmoment/matpoly.hpp"

namespace tmoment {

/// Phi(z) = a(z) b(z)^{-1}, the central Caratheodory function of Gamma_0..Gamma_n.
struct CaratheodoryQuotient {
  MatPoly a;
  MatPoly b;
  std::size_t n = 0;
};

/// Matrix polynomials built from the first block column (A) and last block
/// row (B) of T_n^{-1}.
struct PdPolynomials {
  MatPoly A;
  MatPoly B;
  std::size_t n = 0;
};

/// First n with re S_n not nonnegative Hermitian, if any.
std::optional<std::size_t> caratheodory_failure(const GammaSeq& g, double tol = kDefaultPsdTol);

bool caratheodory_check(const GammaSeq& g, double tol = kDefaultPsdTol);

/// a_n(z) = Gamma_0 + z e_{n-1}(z) S_{n-1}* T_{n-1}^+ Y_n,
/// b_n(z) = I - z e_{n-1}(z) T_{n-1}^+ Y_n, with T and Y taken from the
/// covariances C_0 = re Gamma_0, C_j = Gamma_j / 2. n = 0 gives a = Gamma_0, b = I.
/// Gamma_0 must be Hermitian.
CaratheodoryQuotient build_ab(const GammaSeq& g, std::size_t n, const Tolerances& tol = {});

PdPolynomials build_AB_pd(const HermSeq& seq, std::size_t n, const Tolerances& tol = {});

/// a(z) b(z)^{-1} anywhere b(z) is invertible.
CMatrix eval_quotient(const CaratheodoryQuotient& cq, Complex z);

/// Phi(z) for |z| < 1.
CMatrix eval_phi(const CaratheodoryQuotient& cq, Complex z);

/// First `count` Taylor coefficients of a b^{-1} at 0 by power-series division.
std::vector<CMatrix> taylor_coefficients(const CaratheodoryQuotient& cq, std::size_t count);

/// Richardson-extrapolated lim_{r -> 1-} (1 - r)/2 Phi(r u) along r = 1 - 2^-k.
CMatrix radial_atom_limit(const CaratheodoryQuotient& cq, Complex u, int steps = 16);

}  // namespace tmoment
