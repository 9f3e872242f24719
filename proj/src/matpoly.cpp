#include "tmoment/matpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tmoment {

namespace {

// j! / (j - k)!
double falling_factorial(int j, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(j - i);
  return r;
}

double factorial(int k) { return falling_factorial(k, k); }

Complex unit_root(int k, int n) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

}  // namespace

// ---------------------------------------------------------------- ScalarPoly

double ScalarPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex ScalarPoly::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex ScalarPoly::derivative_at(Complex z, int k) const {
  Complex acc = 0.0;
  for (int j = degree(); j >= k; --j) acc = acc * z + falling_factorial(j, k) * coeffs_[static_cast<std::size_t>(j)];
  return acc;
}

ScalarPoly ScalarPoly::derivative(int k) const {
  if (k <= 0) return *this;
  if (degree() < k) return ScalarPoly({Complex(0.0)});
  std::vector<Complex> d(static_cast<std::size_t>(degree() - k + 1));
  for (int j = k; j <= degree(); ++j)
    d[static_cast<std::size_t>(j - k)] = falling_factorial(j, k) * coeffs_[static_cast<std::size_t>(j)];
  return ScalarPoly(std::move(d));
}

ScalarPoly ScalarPoly::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  auto c = coeffs_;
  while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
  return ScalarPoly(std::move(c));
}

// ------------------------------------------------------------------- MatPoly

MatPoly::MatPoly(Index q, std::vector<CMatrix> coeffs) : q_(q), coeffs_(std::move(coeffs)) {
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].rows() != q_ || coeffs_[j].cols() != q_)
      throw DimensionError("MatPoly coefficient " + std::to_string(j) + " is not q x q");
  }
}

double MatPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_)
    if (c.size() > 0) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

CMatrix MatPoly::operator()(Complex z) const {
  CMatrix acc = CMatrix::Zero(q_, q_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

CMatrix MatPoly::derivative_at(Complex z, int k) const {
  CMatrix acc = CMatrix::Zero(q_, q_);
  for (int j = degree(); j >= k; --j) acc = acc * z + falling_factorial(j, k) * coeffs_[static_cast<std::size_t>(j)];
  return acc;
}

MatPoly MatPoly::derivative(int k) const {
  if (k <= 0) return *this;
  if (degree() < k) return MatPoly(q_, {CMatrix::Zero(q_, q_)});
  std::vector<CMatrix> d;
  for (int j = k; j <= degree(); ++j) d.emplace_back(falling_factorial(j, k) * coeffs_[static_cast<std::size_t>(j)]);
  return MatPoly(q_, std::move(d));
}

MatPoly MatPoly::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  auto c = coeffs_;
  while (c.size() > 1 && c.back().cwiseAbs().maxCoeff() <= cut) c.pop_back();
  return MatPoly(q_, std::move(c));
}

MatPoly operator*(const MatPoly& a, const MatPoly& b) {
  if (a.q() != b.q()) throw DimensionError("MatPoly product: dimension mismatch");
  if (a.coeffs().empty() || b.coeffs().empty()) return MatPoly(a.q(), {});
  std::vector<CMatrix> c(a.coeffs().size() + b.coeffs().size() - 1, CMatrix::Zero(a.q(), a.q()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return MatPoly(a.q(), std::move(c));
}

MatPoly operator+(const MatPoly& a, const MatPoly& b) {
  if (a.q() != b.q()) throw DimensionError("MatPoly sum: dimension mismatch");
  std::vector<CMatrix> c(std::max(a.coeffs().size(), b.coeffs().size()), CMatrix::Zero(a.q(), a.q()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
  return MatPoly(a.q(), std::move(c));
}

// ------------------------------------------------------------- interpolation

MatPoly interpolate_unit_roots(Index q, int degree_bound, const std::function<CMatrix(Complex)>& f) {
  const int bound = std::max(degree_bound, 0);
  int n = 1;
  while (n <= bound) n *= 2;
  std::vector<CMatrix> values;
  values.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) values.push_back(f(unit_root(k, n)));
  std::vector<CMatrix> coeffs(static_cast<std::size_t>(bound + 1), CMatrix::Zero(q, q));
  for (int j = 0; j <= bound; ++j) {
    auto& c = coeffs[static_cast<std::size_t>(j)];
    for (int k = 0; k < n; ++k) c += values[static_cast<std::size_t>(k)] * unit_root(-((j * k) % n), n);
    c /= static_cast<double>(n);
  }
  return MatPoly(q, std::move(coeffs));
}

ScalarPoly det_poly(const MatPoly& p) {
  const MatPoly t = p.trimmed(1e-300);
  if (t.coeffs().empty()) return ScalarPoly({Complex(0.0)});
  const int bound = static_cast<int>(t.q()) * t.degree();
  const MatPoly d = interpolate_unit_roots(1, bound, [&](Complex z) {
    CMatrix v(1, 1);
    v(0, 0) = t(z).determinant();
    return v;
  });
  std::vector<Complex> c;
  c.reserve(d.coeffs().size());
  for (const auto& m : d.coeffs()) c.push_back(m(0, 0));
  return ScalarPoly(std::move(c));
}

MatPoly adjugate_poly(const MatPoly& p) {
  const MatPoly t = p.trimmed(1e-300);
  if (t.q() == 1) return MatPoly::constant(CMatrix::Ones(1, 1));
  const int bound = static_cast<int>(t.q() - 1) * t.degree();
  return interpolate_unit_roots(t.q(), bound, [&](Complex z) { return adjugate(t(z)); });
}

MatPoly times_adjugate(const MatPoly& a, const MatPoly& b) {
  if (a.q() != b.q()) throw DimensionError("times_adjugate: dimension mismatch");
  const MatPoly at = a.trimmed(1e-300);
  const MatPoly bt = b.trimmed(1e-300);
  const int bound = at.degree() + static_cast<int>(bt.q() - 1) * bt.degree();
  return interpolate_unit_roots(a.q(), bound, [&](Complex z) { return CMatrix(at(z) * adjugate(bt(z))); });
}

// -------------------------------------------------------------- root finding

namespace {

struct Cluster {
  std::vector<Complex> members;
  Complex v;
  bool valid = false;
};

Complex centroid(const std::vector<Complex>& pts) {
  Complex s = 0.0;
  for (const auto& p : pts) s += p;
  return s / static_cast<double>(pts.size());
}

// Derivative test for an m-fold zero at v: Taylor coefficients below order m
// vanish, the m-th does not.
bool multiplicity_holds(const ScalarPoly& s, Complex v, int m, double thresh) {
  for (int k = 0; k < m; ++k)
    if (std::abs(s.derivative_at(v, k)) / factorial(k) > thresh) return false;
  return std::abs(s.derivative_at(v, m)) / factorial(m) > thresh;
}

// Centroid polished by Newton on s^{(m-1)}, which has a simple zero at an
// m-fold root of s.
void refine(const ScalarPoly& s, Cluster& c, double thresh, double radius) {
  const int m = static_cast<int>(c.members.size());
  const Complex start = centroid(c.members);
  double spread = 0.0;
  for (const auto& p : c.members) spread = std::max(spread, std::abs(p - start));
  Complex z = start;
  for (int it = 0; it < 30; ++it) {
    const Complex d = s.derivative_at(z, m);
    if (d == Complex(0.0)) break;
    const Complex step = s.derivative_at(z, m - 1) / d;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      z = start;
      break;
    }
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  const double allowed = 10.0 * std::max(spread, radius * std::max(1.0, std::abs(start)));
  c.v = std::abs(z - start) <= allowed ? z : start;
  c.valid = multiplicity_holds(s, c.v, m, thresh);
}

}  // namespace

std::vector<RootCluster> root_clusters(const ScalarPoly& s, const Tolerances& tol) {
  const ScalarPoly t = s.trimmed(tol.trim_tol);
  if (t.coeffs().empty() || t.is_zero()) throw InvalidInput("root finding on the zero polynomial");
  const int d = t.degree();
  if (d == 0) return {};

  // companion matrix of the monic normalization
  const Complex lead = t.coeffs().back();
  CMatrix comp = CMatrix::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -t.coeffs()[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  if (es.info() != Eigen::Success) throw Error("companion eigenvalue solve failed");
  std::vector<Complex> eig(es.eigenvalues().data(), es.eigenvalues().data() + d);

  // single-linkage clustering at cluster_radius
  std::vector<int> label(eig.size(), -1);
  int nlabels = 0;
  for (std::size_t i = 0; i < eig.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = nlabels;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const auto a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < eig.size(); ++b) {
        if (label[b] >= 0) continue;
        const double r = tol.cluster_radius * std::max(1.0, std::abs(eig[a]));
        if (std::abs(eig[a] - eig[b]) <= r) {
          label[b] = nlabels;
          stack.push_back(b);
        }
      }
    }
    ++nlabels;
  }
  std::vector<Cluster> clusters(static_cast<std::size_t>(nlabels));
  for (std::size_t i = 0; i < eig.size(); ++i) clusters[static_cast<std::size_t>(label[i])].members.push_back(eig[i]);

  const double thresh = tol.derivative_tol * t.max_abs_coeff();
  for (auto& c : clusters) refine(t, c, thresh, tol.cluster_radius);

  // A multiple root perturbed by roundoff splits into a ring of radius about
  // eps^(1/m), which can exceed cluster_radius. Clusters failing the
  // derivative test absorb their nearest neighbor until they pass.
  const double merge_radius = 1e-3;
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < clusters.size() && !merged; ++i) {
      if (clusters[i].valid) continue;
      std::size_t best = clusters.size();
      double best_dist = merge_radius * std::max(1.0, std::abs(clusters[i].v));
      for (std::size_t j = 0; j < clusters.size(); ++j) {
        if (j == i) continue;
        const double dist = std::abs(clusters[j].v - clusters[i].v);
        if (dist <= best_dist) {
          best_dist = dist;
          best = j;
        }
      }
      if (best == clusters.size()) continue;
      auto& dst = clusters[i];
      dst.members.insert(dst.members.end(), clusters[best].members.begin(), clusters[best].members.end());
      clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best));
      refine(t, clusters[best < i ? i - 1 : i], thresh, tol.cluster_radius);
      merged = true;
    }
  }

  std::vector<RootCluster> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back({c.v, static_cast<int>(c.members.size()), c.valid});
  return out;
}

std::vector<UnimodularRoot> unimodular_roots(const ScalarPoly& s, const Tolerances& tol) {
  std::vector<UnimodularRoot> out;
  for (const auto& c : root_clusters(s, tol)) {
    const double r = std::abs(c.v);
    if (std::abs(r - 1.0) <= tol.root_tol) out.push_back({c.v / r, c.m, c.validated});
  }
  // counterclockwise from 1, angles in [0, 2pi)
  const auto angle = [](Complex v) {
    const double t = std::arg(v);
    return t < 0 ? t + 2.0 * std::numbers::pi : t;
  };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return angle(a.v) < angle(b.v); });
  return out;
}

int zero_multiplicity(const ScalarPoly& s, Complex w, double derivative_tol) {
  const double thresh = derivative_tol * s.max_abs_coeff();
  for (int m = 0; m <= s.degree(); ++m)
    if (std::abs(s.derivative_at(w, m)) / factorial(m) > thresh) return m;
  throw InvalidInput("zero_multiplicity: polynomial vanishes identically");
}

CMatrix pole_limit(const MatPoly& g, const ScalarPoly& h, Complex w, int ell, int m, double derivative_tol) {
  if (ell < 0 || m < ell) throw InvalidInput("pole_limit: requires 0 <= ell <= m");
  const Complex hm = h.derivative_at(w, m);
  if (std::abs(hm) / factorial(m) <= derivative_tol * h.max_abs_coeff())
    throw DegenerateZero("pole_limit: h^(m)(w) vanishes numerically");
  const double ratio = factorial(m) / factorial(m - ell);
  return (ratio / hm) * g.derivative_at(w, m - ell);
}

CMatrix pole_limit(const MatPoly& g, const ScalarPoly& h, Complex w, int ell, const Tolerances& tol) {
  return pole_limit(g, h, w, ell, zero_multiplicity(h, w, tol.derivative_tol), tol.derivative_tol);
}

}  // namespace tmoment
