#include "tmoment/spectral.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tmoment {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_of(Complex u) {
  double a = std::arg(u);
  return a < 0 ? a + kTwoPi : a;
}

CMatrix lambda_raw(const SpectralMeasure& sm, Complex z) {
  CMatrix v = eval_quotient(*sm.quotient, z);
  for (const auto& a : sm.atoms) v -= ((a.u + z) / (a.u - z)) * a.w;
  return v;
}

CMatrix re_lambda(const SpectralMeasure& sm, Complex z) { return hermitian_part(lambda_raw(sm, z)); }

void require_tnd(const HermSeq& seq, const Tolerances& tol) {
  const auto c = classify(seq, tol.psd_tol);
  if (c.kind == SeqClass::NOT_TND)
    throw ModelError("T_" + std::to_string(*c.first_failure) + " not nonnegative Hermitian", *c.first_failure);
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::CENTRAL: return "CENTRAL";
    case Provenance::PD_PATH: return "PD_PATH";
    case Provenance::ATOMS_ONLY: return "ATOMS_ONLY";
  }
  return "?";
}

std::vector<Atom> compute_atoms(const CaratheodoryQuotient& cq, const Tolerances& tol) {
  const Index q = cq.a.q();
  if (cq.b.trimmed(tol.trim_tol).degree() <= 0) return {};
  const double c0 = hermitian_part(cq.a.coeffs().front()).norm();
  const ScalarPoly detb = det_poly(cq.b).trimmed(tol.trim_tol);
  const auto roots = unimodular_roots(detb, tol);
  if (roots.empty()) return {};

  const MatPoly g = times_adjugate(cq.a, cq.b);
  std::vector<Atom> atoms;
  for (const auto& r : roots) {
    if (!r.validated) {
      std::ostringstream os;
      os << "zero of det b at " << r.v << " failed the multiplicity test for m = " << r.m;
      throw MultiplicityError(os.str(), r.v, r.m);
    }
    const Complex dm = detb.derivative_at(r.v, r.m);
    const CMatrix w = (-static_cast<double>(r.m) / (2.0 * r.v * dm)) * g.derivative_at(r.v, r.m - 1);
    const CMatrix wh = hermitian_part(w);
    if (wh.norm() <= tol.atom_drop * c0) continue;  // removable singularity
    Eigen::SelfAdjointEigenSolver<CMatrix> es(wh);
    const double lmin = es.eigenvalues()(0);
    if (lmin < -tol.atom_clip * c0) {
      std::ostringstream os;
      os << "atom weight at " << r.v << " has eigenvalue " << lmin << " below -" << tol.atom_clip << " ||C_0||";
      throw ModelError(os.str());
    }
    atoms.push_back({r.v, psd_projection(wh)});
  }
  if (atoms.size() > cq.n * static_cast<std::size_t>(q))
    throw ModelError("more than n q atoms found (" + std::to_string(atoms.size()) + ")");
  return atoms;
}

PdDensityForms pd_density_forms(const PdPolynomials& pd, Complex zeta) {
  const CMatrix a0 = pd.A.coeffs().front();
  const CMatrix b0 = pd.B(0.0);
  const CMatrix ainv = pd.A(zeta).inverse();
  const CMatrix binv = pd.B(zeta).inverse();
  PdDensityForms f;
  f.a_form = hermitian_part(CMatrix(ainv.adjoint() * a0 * ainv)) / kTwoPi;
  f.b_form = hermitian_part(CMatrix(binv * b0 * binv.adjoint())) / kTwoPi;
  return f;
}

std::vector<double> atom_radii(const SpectralMeasure& sm) {
  std::vector<double> radii(sm.atoms.size(), sm.tol.near_atom_radius);
  if (!sm.quotient || sm.atoms.empty()) return radii;
  const ScalarPoly detb = det_poly(sm.quotient->b).trimmed(sm.tol.trim_tol);
  const auto roots = root_clusters(detb, sm.tol);
  for (std::size_t k = 0; k < sm.atoms.size(); ++k) {
    const Complex u = sm.atoms[k].u;
    std::size_t self = roots.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (std::abs(roots[i].v - u) < best) {
        best = std::abs(roots[i].v - u);
        self = i;
      }
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (i != self) radii[k] = std::min(radii[k], 0.5 * std::abs(roots[i].v - u));
  }
  return radii;
}

CMatrix density_at(const SpectralMeasure& sm, Complex zeta) {
  if (sm.quotient) {
    // Near an atom a b^{-1} and the atom's kernel cancel to roundoff that grows
    // like 1/|zeta - u|^2. Lambda is holomorphic there, so take it from the
    // Cauchy integral over a circle that stays away from the pole.
    const Atom* near = nullptr;
    double radius = 0.0;
    for (std::size_t k = 0; k < sm.atoms.size(); ++k) {
      const double r = k < sm.atom_radius.size() ? sm.atom_radius[k] : sm.tol.near_atom_radius;
      const double d = std::abs(zeta - sm.atoms[k].u);
      if (d < 0.5 * r && (!near || d < std::abs(zeta - near->u))) {
        near = &sm.atoms[k];
        radius = r;
      }
    }
    if (!near) return re_lambda(sm, zeta) / kTwoPi;

    constexpr int kNodes = 64;
    CMatrix acc = CMatrix::Zero(sm.q, sm.q);
    for (int k = 0; k < kNodes; ++k) {
      const Complex offset = std::polar(radius, kTwoPi * (k + 0.5) / kNodes);
      const Complex s = near->u + offset;
      acc += (offset / (s - zeta)) * lambda_raw(sm, s);
    }
    return hermitian_part(CMatrix(acc / static_cast<double>(kNodes))) / kTwoPi;
  }
  if (sm.pd) return pd_density_forms(*sm.pd, zeta).a_form;
  return CMatrix::Zero(sm.q, sm.q);
}

SpectralMeasure atoms_only_measure(Index q, std::vector<Atom> atoms) {
  SpectralMeasure sm;
  sm.q = q;
  sm.atoms = std::move(atoms);
  sm.provenance = Provenance::ATOMS_ONLY;
  return sm;
}

SpectralMeasure uniform_measure(const CMatrix& c0) {
  require_square(c0, "uniform_measure");
  SpectralMeasure sm;
  sm.q = c0.rows();
  sm.quotient = CaratheodoryQuotient{MatPoly::constant(c0), MatPoly::constant(CMatrix::Identity(sm.q, sm.q)), 0};
  sm.provenance = Provenance::CENTRAL;
  return sm;
}

SpectralMeasure pd_measure(const HermSeq& seq, const Tolerances& tol) {
  SpectralMeasure sm;
  sm.q = seq.q();
  sm.pd = build_AB_pd(seq, seq.last_index(), tol);
  sm.provenance = Provenance::PD_PATH;
  sm.tol = tol;
  return sm;
}

SpectralMeasure central_measure(const HermSeq& seq, const Tolerances& tol) {
  const auto cls = classify(seq, tol.psd_tol);
  if (cls.kind == SeqClass::NOT_TND)
    throw ModelError("T_" + std::to_string(*cls.first_failure) + " not nonnegative Hermitian", *cls.first_failure);
  if (seq.size() == 1) {
    auto sm = uniform_measure(seq[0]);
    sm.tol = tol;
    return sm;
  }
  SpectralMeasure sm;
  sm.q = seq.q();
  sm.tol = tol;
  sm.provenance = Provenance::CENTRAL;
  sm.quotient = build_ab(to_gamma(seq), seq.last_index(), tol);
  sm.atoms = compute_atoms(*sm.quotient, tol);
  sm.atom_radius = atom_radii(sm);

  if (cls.kind == SeqClass::TPD) {
    try {
      sm.pd = build_AB_pd(seq, seq.last_index(), tol);
    } catch (const ModelError&) {
      // numerically too close to the boundary for the inverse-based forms
    }
    if (sm.pd) {
      double worst = 0.0;
      for (int k = 0; k < 32; ++k) {
        const Complex z = std::polar(1.0, kTwoPi * (k + 0.5) / 32.0);
        const auto f = pd_density_forms(*sm.pd, z);
        const CMatrix d = density_at(sm, z);
        worst = std::max({worst, (d - f.a_form).norm(), (f.a_form - f.b_form).norm()});
      }
      sm.pd_crosscheck = worst;
    }
  }
  return sm;
}

CMatrix pd_density(const HermSeq& seq, std::size_t n, Complex zeta, const Tolerances& tol) {
  const auto pd = build_AB_pd(seq, n, tol);
  const auto f = pd_density_forms(pd, zeta);
  if ((f.a_form - f.b_form).norm() > tol.pd_agreement * (1 + seq[0].norm()))
    throw ModelError("pd_density: A-form and B-form densities disagree");
  return f.a_form;
}

int default_nodes(const SpectralMeasure& sm) {
  const std::size_t n = sm.quotient ? sm.quotient->n : (sm.pd ? sm.pd->n : 0);
  return std::max(1024, static_cast<int>(16 * n * static_cast<std::size_t>(sm.q)));
}

std::vector<double> quadrature_angles(const SpectralMeasure& sm, int nodes) {
  if (nodes <= 0) throw InvalidInput("quadrature needs a positive node count");
  const double step = kTwoPi / nodes;
  const auto clearance = [&](double off) {
    double worst = step;
    for (const auto& a : sm.atoms) {
      const double p = angle_of(a.u) / step - off;
      worst = std::min(worst, std::abs(p - std::round(p)) * step);
    }
    return worst;
  };
  double best_off = 0.5;
  double best = clearance(best_off);
  for (int level = 2; best < 0.1 * step && level <= 64; level *= 2) {
    for (int k = 1; k < 2 * level; k += 2) {
      const double off = static_cast<double>(k) / (2.0 * level);
      const double c = clearance(off);
      if (c > best) {
        best = c;
        best_off = off;
      }
    }
  }
  std::vector<double> angles(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k) angles[static_cast<std::size_t>(k)] = step * (k + best_off);
  return angles;
}

namespace {

struct Grid {
  std::vector<Complex> nodes;
  std::vector<CMatrix> density;
  double weight = 0.0;
};

Grid sample_density(const SpectralMeasure& sm, int nodes) {
  Grid g;
  const auto angles = quadrature_angles(sm, nodes);
  g.weight = kTwoPi / nodes;
  g.nodes.reserve(angles.size());
  g.density.reserve(angles.size());
  const bool has_density = sm.quotient || sm.pd;
  for (double t : angles) {
    const Complex z = std::polar(1.0, t);
    g.nodes.push_back(z);
    g.density.push_back(has_density ? density_at(sm, z) : CMatrix(CMatrix::Zero(sm.q, sm.q)));
  }
  return g;
}

CMatrix coefficient_from_grid(const SpectralMeasure& sm, const Grid& g, int j) {
  CMatrix acc = CMatrix::Zero(sm.q, sm.q);
  for (std::size_t k = 0; k < g.nodes.size(); ++k) acc += std::pow(g.nodes[k], -j) * g.density[k];
  acc *= g.weight;
  for (const auto& a : sm.atoms) acc += std::pow(a.u, -j) * a.w;
  return acc;
}

// The trapezoid rule on N nodes converges like rho^-N, where rho > 1 is the
// annulus of analyticity of the density, set by the zeros of det b off the
// circle. Choose N so that rho^-N is below roundoff.
int resolution_nodes(const SpectralMeasure& sm) {
  if (!sm.quotient || sm.quotient->b.trimmed(sm.tol.trim_tol).degree() <= 0) return 0;
  constexpr double kDigits = 36.0;  // e^-36 ~ 2e-16
  constexpr int kMaxNodes = 1 << 20;
  const ScalarPoly detb = det_poly(sm.quotient->b).trimmed(sm.tol.trim_tol);
  if (detb.degree() <= 0) return 0;
  double worst = 0.0;
  for (const auto& r : root_clusters(detb, sm.tol)) {
    const double rad = std::abs(r.v);
    if (std::abs(rad - 1.0) <= sm.tol.root_tol) continue;  // atom or removable point
    worst = std::max(worst, kDigits / std::abs(std::log(rad)));
  }
  return static_cast<int>(std::min<double>(kMaxNodes, std::ceil(worst)));
}

int nodes_for(const SpectralMeasure& sm, int requested, int j) {
  if (requested > 0) return requested;
  int n = std::max(default_nodes(sm), resolution_nodes(sm));
  if (sm.quotient) {
    const int deg = static_cast<int>(sm.q) * std::max(sm.quotient->b.degree(), 0);
    n = std::max(n, 4 * (deg + std::abs(j) + 1));
  }
  return n;
}

}  // namespace

CMatrix fourier_coeff(const SpectralMeasure& sm, int j, int nodes) {
  return coefficient_from_grid(sm, sample_density(sm, nodes_for(sm, nodes, j)), j);
}

CMatrix herglotz_transform(const SpectralMeasure& sm, Complex z, int nodes) {
  if (!(std::abs(z) < 1.0)) throw InvalidInput("herglotz_transform: |z| must be < 1");
  const Grid g = sample_density(sm, nodes_for(sm, nodes, 0));
  CMatrix acc = CMatrix::Zero(sm.q, sm.q);
  for (std::size_t k = 0; k < g.nodes.size(); ++k) acc += ((g.nodes[k] + z) / (g.nodes[k] - z)) * g.density[k];
  acc *= g.weight;
  for (const auto& a : sm.atoms) acc += ((a.u + z) / (a.u - z)) * a.w;
  return acc;
}

RecoveryReport verify_recovery(const SpectralMeasure& sm, const HermSeq& seq, double tol, int nodes) {
  if (seq.q() != sm.q) throw DimensionError("verify_recovery: measure and sequence dimensions differ");
  RecoveryReport rep;
  rep.tol = tol;
  const int n_index = static_cast<int>(seq.last_index());
  const Grid g = sample_density(sm, nodes_for(sm, nodes, n_index));
  for (int j = 0; j <= n_index; ++j) {
    const double e = (coefficient_from_grid(sm, g, j) - seq[static_cast<std::size_t>(j)]).norm();
    rep.errors.push_back(e);
    rep.max_error = std::max(rep.max_error, e);
  }
  rep.pass = rep.max_error <= tol;
  rep.atom_mass = CMatrix::Zero(sm.q, sm.q);
  for (const auto& a : sm.atoms) rep.atom_mass += a.w;
  rep.density_mass = CMatrix::Zero(sm.q, sm.q);
  const double scale = 1 + seq[0].norm();
  rep.min_density_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& d : g.density) {
    rep.density_mass += g.weight * d;
    const double l = min_hermitian_eigenvalue(d);
    rep.min_density_eigenvalue = std::min(rep.min_density_eigenvalue, l);
    if (l < -sm.tol.psd_tol * scale) ++rep.psd_violations;
  }
  rep.atom_count = sm.atoms.size();
  rep.atom_bound = seq.last_index() * static_cast<std::size_t>(seq.q());
  return rep;
}

ArSpectrum ar_spectrum(const HermSeq& seq, std::size_t order, const Tolerances& tol) {
  if (order > seq.last_index())
    throw IndexError("ar_spectrum: order " + std::to_string(order) + " needs " + std::to_string(order + 1) +
                     " coefficients");
  const HermSeq head = seq.prefix(order + 1);
  require_tnd(head, tol);
  ArSpectrum out{central_measure(head, tol), true, {}};
  if (seq.size() == head.size()) return out;

  const HermSeq ext = central_extend(head, seq.size(), tol);
  const double thresh = tol.center_tol * (1 + seq[0].norm());
  for (std::size_t j = order + 1; j < seq.size(); ++j) {
    const double d = (seq[j] - ext[j]).norm();
    if (d > thresh) {
      out.tail_consistent = false;
      std::ostringstream os;
      os << "C_" << j << " differs from the central extension by " << d
         << "; the sequence is not autoregressive of order " << order;
      out.warnings.push_back(os.str());
    }
  }
  const auto cls = classify(seq, tol.psd_tol);
  if (cls.kind == SeqClass::NOT_TND)
    out.warnings.push_back("full sequence is not Toeplitz nonnegative definite (T_" +
                           std::to_string(*cls.first_failure) + ")");
  return out;
}

}  // namespace tmoment
