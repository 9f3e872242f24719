#pragma once

namespace tmoment {

/// Numerical thresholds used across the pipeline. Every field is relative to
/// the scale noted next to it.
struct Tolerances {
  double rank_rtol = 1e-10;       ///< pinv / numerical rank cutoff, relative to sigma_max
  double psd_tol = 1e-9;          ///< PSD decisions, relative to 1 + ||T||
  double center_tol = 1e-8;       ///< C_j == M_j, relative to 1 + ||C_0||
  double ball_tol = 1e-9;         ///< matrix ball membership
  double trim_tol = 1e-12;        ///< polynomial coefficient trimming, relative to max |coeff|
  double root_tol = 1e-7;         ///< | |v| - 1 | for a root to count as unimodular
  double cluster_radius = 1e-6;   ///< eigenvalues closer than this share a root
  double derivative_tol = 1e-7;   ///< multiplicity validation, relative to max |coeff|
  double atom_clip = 1e-9;        ///< tolerated negative eigenvalue of an atom, relative to ||C_0||
  double atom_drop = 1e-10;       ///< atoms below this norm are removable, relative to ||C_0||
  double near_atom_radius = 0.1;  ///< largest circle around an atom used to evaluate the density
  double pd_agreement = 1e-8;     ///< A-form vs B-form density, relative to 1 + ||C_0||
};

}  // namespace tmoment
