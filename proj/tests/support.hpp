// Shared fixtures and random generators for the test binaries.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "tmoment/spectral.hpp"

namespace tmtest {

using namespace tmoment;

inline constexpr double kPi = std::numbers::pi;

inline CMatrix mat1(double x) { return CMatrix::Constant(1, 1, Complex(x, 0)); }

inline HermSeq scalar_seq(std::initializer_list<double> xs) {
  std::vector<CMatrix> cs;
  for (double x : xs) cs.push_back(mat1(x));
  return HermSeq(cs);
}

inline GammaSeq scalar_gamma(std::initializer_list<double> xs) {
  std::vector<CMatrix> cs;
  for (double x : xs) cs.push_back(mat1(x));
  return GammaSeq(cs);
}

inline CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline CMatrix real2(double a, double b, double c, double d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

/// U = 1/2 [[sqrt3, -1], [1, sqrt3]]
inline CMatrix rotation_u() {
  const double s = std::sqrt(3.0);
  return real2(s, -1, 1, s) / 2.0;
}

/// 1/4 [[1, sqrt3], [sqrt3, 3]]
inline CMatrix rotated_block() {
  const double s = std::sqrt(3.0);
  return real2(1, s, s, 3) / 4.0;
}

inline HermSeq rotated_seq(std::size_t len = 2) {
  std::vector<CMatrix> cs{CMatrix::Identity(2, 2)};
  for (std::size_t j = 1; j < len; ++j) cs.push_back(rotated_block());
  return HermSeq(cs);
}

inline HermSeq diag_seq() { return HermSeq({CMatrix::Identity(2, 2), diag2(0, 1)}); }

inline double max_diff(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, (a[k] - b[k]).norm());
  return d;
}

/// Deterministic generators; every test seeds its own engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>()(eng_); }
  Complex cnormal() { return {normal(), normal()}; }

  CMatrix matrix(Index r, Index c) {
    CMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = cnormal();
    return m;
  }

  CMatrix psd(Index q, Index rank) {
    const CMatrix g = matrix(q, rank);
    return g * g.adjoint();
  }

  CMatrix unitary(Index q) {
    Eigen::HouseholderQR<CMatrix> qr(matrix(q, q));
    return qr.householderQ();
  }

  Complex unimodular() { return std::polar(1.0, uniform(0.0, 2 * kPi)); }

  Complex in_disk(double rmax = 0.95) { return std::polar(rmax * std::sqrt(uniform()), uniform(0.0, 2 * kPi)); }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// A measure with known Fourier coefficients: density (1/2pi) P*P for a
/// matrix trigonometric polynomial P plus point masses.
struct KnownMeasure {
  std::vector<CMatrix> p;  // P(zeta) = sum_k p_k zeta^k
  std::vector<Atom> atoms;
  Index q = 0;

  CMatrix coeff(int j) const {
    CMatrix c = CMatrix::Zero(q, q);
    // zeta^{-j} P*P integrates to sum_k p_k^* p_{k+j}
    for (std::size_t k = 0; k < p.size(); ++k) {
      const long l = static_cast<long>(k) + j;
      if (l >= 0 && l < static_cast<long>(p.size())) c += p[k].adjoint() * p[static_cast<std::size_t>(l)];
    }
    for (const auto& a : atoms) c += std::pow(a.u, -j) * a.w;
    return c;
  }

  CMatrix density(Complex zeta) const {
    CMatrix v = CMatrix::Zero(q, q);
    for (std::size_t k = 0; k < p.size(); ++k) v += std::pow(zeta, static_cast<int>(k)) * p[k];
    return v.adjoint() * v / (2 * kPi);
  }

  HermSeq sequence(std::size_t n) const {
    std::vector<CMatrix> cs;
    for (std::size_t j = 0; j <= n; ++j) cs.push_back(coeff(static_cast<int>(j)));
    return HermSeq(cs);
  }
};

inline KnownMeasure random_density_measure(Gen& g, Index q, int degree, int atoms, Index atom_rank) {
  KnownMeasure m;
  m.q = q;
  for (int k = 0; k <= degree; ++k) m.p.push_back(g.matrix(q, q) / std::sqrt(static_cast<double>(degree + 1)));
  for (int k = 0; k < atoms; ++k) m.atoms.push_back({g.unimodular(), g.psd(q, atom_rank)});
  return m;
}

/// Point masses only, with total rank <= n q so that T_n is singular when the
/// sequence runs to index n.
inline KnownMeasure random_dirac_measure(Gen& g, Index q, std::size_t n) {
  KnownMeasure m;
  m.q = q;
  const int total = static_cast<int>(n) * static_cast<int>(q);
  int used = 0;
  const int count = g.integer(1, std::max(1, total));
  for (int k = 0; k < count && used < total; ++k) {
    const int r = g.integer(1, std::min<int>(static_cast<int>(q), total - used));
    used += r;
    // well separated angles keep the conditioning of the atoms reasonable
    const double angle = 2 * kPi * (k + g.uniform(0.1, 0.9)) / count;
    m.atoms.push_back({std::polar(1.0, angle), g.psd(q, r)});
  }
  return m;
}

}  // namespace tmtest
