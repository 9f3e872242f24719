#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tmoment/herglotz.hpp"

namespace tmoment {

/// Point mass w delta_u.
struct Atom {
  Complex u;
  CMatrix w;
};

enum class Provenance { CENTRAL, PD_PATH, ATOMS_ONLY };

std::string to_string(Provenance p);

/// mu(B) = (1/2pi) int_B re Lambda(zeta) dlambda + sum_k W_k delta_{u_k}(B) with
/// Lambda = a b^{-1} - sum_k (u_k + z)/(u_k - z) W_k.
///
/// Without a quotient the absolutely continuous part comes from the
/// positive-definite polynomials (PD_PATH) or vanishes (ATOMS_ONLY).
struct SpectralMeasure {
  Index q = 0;
  std::vector<Atom> atoms;
  std::optional<CaratheodoryQuotient> quotient;
  std::optional<PdPolynomials> pd;
  Provenance provenance = Provenance::CENTRAL;
  /// Largest pointwise discrepancy between the quotient density and the
  /// positive-definite forms, when both were built.
  std::optional<double> pd_crosscheck;
  /// Lambda is evaluated through a Cauchy integral on |z - u_k| = atom_radius[k]
  /// when zeta is within half that distance of atom k.
  std::vector<double> atom_radius;
  Tolerances tol;
};

/// Radii of circles around the atoms that stay clear of every other zero of
/// det b, capped at tol.near_atom_radius. Empty without a quotient.
std::vector<double> atom_radii(const SpectralMeasure& sm);

/// Atoms of the Riesz-Herglotz measure of a b^{-1}, located at the unimodular
/// zeros of det b, with weights -m/(2 v (det b)^{(m)}(v)) (a adj b)^{(m-1)}(v).
std::vector<Atom> compute_atoms(const CaratheodoryQuotient& cq, const Tolerances& tol = {});

/// Density of the absolutely continuous part with respect to arc length.
CMatrix density_at(const SpectralMeasure& sm, Complex zeta);

/// Central measure for a Toeplitz nonnegative definite C_0..C_n.
SpectralMeasure central_measure(const HermSeq& seq, const Tolerances& tol = {});

/// Absolutely continuous central measure from the PD polynomials only.
SpectralMeasure pd_measure(const HermSeq& seq, const Tolerances& tol = {});

SpectralMeasure atoms_only_measure(Index q, std::vector<Atom> atoms);

/// (1/2pi) C0 dlambda
SpectralMeasure uniform_measure(const CMatrix& c0);

struct PdDensityForms {
  CMatrix a_form;  ///< (1/2pi) A(zeta)^{-*} A(0) A(zeta)^{-1}
  CMatrix b_form;  ///< (1/2pi) B(zeta)^{-1} B(0) B(zeta)^{-*}
};

PdDensityForms pd_density_forms(const PdPolynomials& pd, Complex zeta);

/// A-form density; throws ModelError if the two forms disagree.
CMatrix pd_density(const HermSeq& seq, std::size_t n, Complex zeta, const Tolerances& tol = {});

/// Default node count max(1024, 16 n q) for quadrature over the circle.
int default_nodes(const SpectralMeasure& sm);

/// Uniform quadrature angles 2pi (k + offset)/N with the offset chosen so no
/// node sits near an atom (offset 1/2 unless an atom forces another).
std::vector<double> quadrature_angles(const SpectralMeasure& sm, int nodes);

/// int zeta^{-j} mu(dzeta): uniform quadrature of the density plus exact atom sums.
CMatrix fourier_coeff(const SpectralMeasure& sm, int j, int nodes = 0);

/// int (zeta + z)/(zeta - z) mu(dzeta) for |z| < 1.
CMatrix herglotz_transform(const SpectralMeasure& sm, Complex z, int nodes = 0);

struct RecoveryReport {
  std::vector<double> errors;     ///< ||fourier_coeff(j) - C_j||_F for j = 0..n
  double max_error = 0.0;
  bool pass = false;
  double tol = 0.0;
  CMatrix atom_mass;              ///< sum of atom weights
  CMatrix density_mass;           ///< integral of the density
  std::size_t atom_count = 0;
  std::size_t atom_bound = 0;     ///< n q
  std::size_t psd_violations = 0; ///< density samples with an eigenvalue below -psd_tol scale
  double min_density_eigenvalue = 0.0;
};

RecoveryReport verify_recovery(const SpectralMeasure& sm, const HermSeq& seq, double tol, int nodes = 0);

struct ArSpectrum {
  SpectralMeasure measure;
  bool tail_consistent = true;
  std::vector<std::string> warnings;
};

/// Spectral measure of an autoregressive sequence of the declared order, built
/// from C_0..C_order; stored coefficients beyond the order are compared with
/// the central extension and reported when they disagree.
ArSpectrum ar_spectrum(const HermSeq& seq, std::size_t order, const Tolerances& tol = {});

}  // namespace tmoment
