#pragma once

#include <functional>
#include <vector>

#include "tmoment/linalg.hpp"
#include "tmoment/tolerances.hpp"

namespace tmoment {

/// p(z) = sum_j p_j z^j with complex coefficients.
class ScalarPoly {
 public:
  ScalarPoly() = default;
  explicit ScalarPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  /// Stored degree (size - 1); -1 for the empty polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double max_abs_coeff() const;
  bool is_zero() const { return max_abs_coeff() == 0.0; }

  Complex operator()(Complex z) const;
  /// k-th derivative evaluated at z.
  Complex derivative_at(Complex z, int k) const;
  ScalarPoly derivative(int k = 1) const;
  /// Drops trailing coefficients with |c| <= rel_tol * max |c|.
  ScalarPoly trimmed(double rel_tol) const;

 private:
  std::vector<Complex> coeffs_;
};

/// P(z) = sum_j P_j z^j with q x q coefficients.
class MatPoly {
 public:
  MatPoly() = default;
  MatPoly(Index q, std::vector<CMatrix> coeffs);

  static MatPoly constant(const CMatrix& c) { return MatPoly(c.rows(), {c}); }

  Index q() const noexcept { return q_; }
  const std::vector<CMatrix>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double max_abs_coeff() const;

  CMatrix operator()(Complex z) const;
  CMatrix derivative_at(Complex z, int k) const;
  MatPoly derivative(int k = 1) const;
  /// Drops trailing blocks whose largest entry is <= rel_tol * max |entry|.
  MatPoly trimmed(double rel_tol) const;

 private:
  Index q_ = 0;
  std::vector<CMatrix> coeffs_;
};

MatPoly operator*(const MatPoly& a, const MatPoly& b);
MatPoly operator+(const MatPoly& a, const MatPoly& b);

/// Coefficients of a matrix polynomial of degree <= degree_bound from its
/// values on the N-th roots of unity (N the smallest power of two above the
/// bound), by discrete Fourier inversion.
MatPoly interpolate_unit_roots(Index q, int degree_bound, const std::function<CMatrix(Complex)>& f);

/// z -> det p(z), degree <= q deg p.
ScalarPoly det_poly(const MatPoly& p);

/// z -> adj p(z), degree <= (q - 1) deg p.
MatPoly adjugate_poly(const MatPoly& p);

/// z -> a(z) adj b(z), formed by interpolation.
MatPoly times_adjugate(const MatPoly& a, const MatPoly& b);

struct RootCluster {
  Complex v;
  int m = 1;
  /// Derivative test passed: Taylor coefficients of order < m vanish at v,
  /// the m-th does not.
  bool validated = true;
};

/// All roots of s grouped by location with multiplicities; the multiplicities
/// sum to the trimmed degree. Throws InvalidInput for the zero polynomial.
std::vector<RootCluster> root_clusters(const ScalarPoly& s, const Tolerances& tol = {});

using UnimodularRoot = RootCluster;

/// Roots within tol.root_tol of the unit circle, projected onto it.
std::vector<UnimodularRoot> unimodular_roots(const ScalarPoly& s, const Tolerances& tol = {});

/// Smallest m with |s^{(m)}(w)| / m! above derivative_tol * max|coeff|.
int zero_multiplicity(const ScalarPoly& s, Complex w, double derivative_tol = 1e-7);

/// lim_{z->w} (z - w)^ell G(z) / h(z) for a zero w of h of multiplicity m >= ell:
/// m! / ((m - ell)! h^{(m)}(w)) G^{(m - ell)}(w).
CMatrix pole_limit(const MatPoly& g, const ScalarPoly& h, Complex w, int ell, int m,
                   double derivative_tol = 1e-7);

/// Same, with m detected by zero_multiplicity().
CMatrix pole_limit(const MatPoly& g, const ScalarPoly& h, Complex w, int ell,
                   const Tolerances& tol = {});

}  // namespace tmoment
