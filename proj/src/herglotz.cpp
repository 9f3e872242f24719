#include "tmoment/herglotz.hpp"

#include <cmath>
#include <numbers>

namespace tmoment {

std::optional<std::size_t> caratheodory_failure(const GammaSeq& g, double tol) {
  // re S_k is a leading principal submatrix of re S_n, so the first failing
  // prefix is found by walking up.
  for (std::size_t k = 0; k < g.size(); ++k) {
    const CMatrix s = lower_block_toeplitz(g.coeffs(), k);
    const CMatrix re = hermitian_part(s);
    if (min_hermitian_eigenvalue(re) < -tol * (1 + s.norm())) return k;
  }
  return std::nullopt;
}

bool caratheodory_check(const GammaSeq& g, double tol) { return !caratheodory_failure(g, tol).has_value(); }

CaratheodoryQuotient build_ab(const GammaSeq& g, std::size_t n, const Tolerances& tol) {
  if (n > g.last_index()) throw IndexError("build_ab: n exceeds the last stored index");
  const Index q = g.q();
  const CMatrix& g0 = g[0];
  if ((g0 - g0.adjoint()).norm() > tol.psd_tol * (1 + g0.norm()))
    throw InvalidInput("build_ab: Gamma_0 must be Hermitian");
  const GammaSeq head = g.prefix(n + 1);
  if (auto k = caratheodory_failure(head, tol.psd_tol))
    throw ModelError("re S_" + std::to_string(*k) + " not nonnegative Hermitian (not a Caratheodory sequence)", *k);

  CaratheodoryQuotient cq;
  cq.n = n;
  if (n == 0) {
    cq.a = MatPoly::constant(g0);
    cq.b = MatPoly::constant(CMatrix::Identity(q, q));
    return cq;
  }
  const HermSeq c = to_covariance(head);
  const ToeplitzBundle bundle = build_bundle(c, n);
  const CMatrix tp = pinv(block_toeplitz(c, n - 1), tol.rank_rtol);
  const CMatrix s = lower_block_toeplitz(head.coeffs(), n - 1);
  const CMatrix x = tp * bundle.Y;       // T_{n-1}^+ Y_n
  const CMatrix w = s.adjoint() * x;     // S_{n-1}^* T_{n-1}^+ Y_n

  std::vector<CMatrix> a(n + 1), b(n + 1);
  a[0] = g0;
  b[0] = CMatrix::Identity(q, q);
  for (std::size_t j = 0; j < n; ++j) {
    const auto r = static_cast<Index>(j) * q;
    a[j + 1] = w.block(r, 0, q, q);
    b[j + 1] = -x.block(r, 0, q, q);
  }
  cq.a = MatPoly(q, std::move(a));
  cq.b = MatPoly(q, std::move(b));
  return cq;
}

PdPolynomials build_AB_pd(const HermSeq& seq, std::size_t n, const Tolerances& tol) {
  if (n > seq.last_index()) throw IndexError("build_AB_pd: n exceeds the last stored index");
  const auto cls = classify(seq.prefix(n + 1), tol.psd_tol);
  if (cls.kind != SeqClass::TPD)
    throw ModelError("T_" + std::to_string(cls.first_failure.value_or(0)) + " not positive definite",
                     cls.first_failure.value_or(ModelError::npos));
  const Index q = seq.q();
  const CMatrix t = block_toeplitz(seq, n);
  const CMatrix tinv = t.llt().solve(CMatrix::Identity(t.rows(), t.cols()));
  const auto nn = static_cast<Index>(n);
  std::vector<CMatrix> a, b;
  for (Index j = 0; j <= nn; ++j) {
    a.emplace_back(tinv.block(j * q, 0, q, q));
    b.emplace_back(tinv.block(nn * q, (nn - j) * q, q, q));
  }
  PdPolynomials pd{MatPoly(q, std::move(a)), MatPoly(q, std::move(b)), n};

  // det A_n and det B_n have no zeros in the closed disk; spot-check a grid.
  const double floor_a = 1e-13 * std::pow(1 + pd.A.max_abs_coeff(), static_cast<double>(q));
  const double floor_b = 1e-13 * std::pow(1 + pd.B.max_abs_coeff(), static_cast<double>(q));
  for (double r : {0.0, 0.5, 0.9, 1.0}) {
    for (int k = 0; k < 64; ++k) {
      const Complex z = std::polar(r, 2.0 * std::numbers::pi * (k + 0.5) / 64.0);
      if (std::abs(pd.A(z).determinant()) <= floor_a || std::abs(pd.B(z).determinant()) <= floor_b)
        throw ModelError("build_AB_pd: det A_n or det B_n vanishes in the closed disk");
    }
  }
  return pd;
}

CMatrix eval_quotient(const CaratheodoryQuotient& cq, Complex z) {
  const CMatrix bz = cq.b(z);
  Eigen::PartialPivLU<CMatrix> lu(bz.transpose());
  if (!(lu.rcond() > 1e-15)) throw ModelError("denominator b(z) is numerically singular");
  return lu.solve(cq.a(z).transpose()).transpose();
}

CMatrix eval_phi(const CaratheodoryQuotient& cq, Complex z) {
  if (!(std::abs(z) < 1.0)) throw InvalidInput("eval_phi: |z| must be < 1");
  return eval_quotient(cq, z);
}

std::vector<CMatrix> taylor_coefficients(const CaratheodoryQuotient& cq, std::size_t count) {
  // Phi b = a with b_0 = I: Phi_j = a_j - sum_{k<j} Phi_k b_{j-k}
  const Index q = cq.a.q();
  const auto coeff = [q](const MatPoly& p, std::size_t j) {
    return j < p.coeffs().size() ? p.coeffs()[j] : CMatrix(CMatrix::Zero(q, q));
  };
  const CMatrix b0inv = coeff(cq.b, 0).inverse();
  std::vector<CMatrix> phi;
  phi.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    CMatrix acc = coeff(cq.a, j);
    for (std::size_t k = 0; k < j; ++k) acc -= phi[k] * coeff(cq.b, j - k);
    phi.push_back(acc * b0inv);
  }
  return phi;
}

CMatrix radial_atom_limit(const CaratheodoryQuotient& cq, Complex u, int steps) {
  if (std::abs(std::abs(u) - 1.0) > 1e-12) throw InvalidInput("radial_atom_limit: |u| must be 1");
  if (steps < 3) throw InvalidInput("radial_atom_limit: at least 3 steps required");
  constexpr int kOrder = 2;
  // table[k][j]: j-fold Richardson extrapolation ending at h = 2^-(k+1)
  std::vector<std::vector<CMatrix>> table;
  for (int k = 0; k < steps; ++k) {
    const double h = std::ldexp(1.0, -(k + 1));
    std::vector<CMatrix> row;
    row.push_back(0.5 * h * eval_quotient(cq, (1.0 - h) * u));
    for (int j = 1; j <= kOrder && j <= k; ++j) {
      const double f = std::ldexp(1.0, j);
      row.push_back((f * row[static_cast<std::size_t>(j - 1)] - table.back()[static_cast<std::size_t>(j - 1)]) / (f - 1.0));
    }
    table.push_back(std::move(row));
  }
  const CMatrix& last = table[static_cast<std::size_t>(steps - 1)].back();
  const CMatrix& prev = table[static_cast<std::size_t>(steps - 2)].back();
  if ((last - prev).norm() > 1e-4 * (1 + last.norm()))
    throw NoLimit("radial_atom_limit: extrapolation did not settle");
  return last;
}

}  // namespace tmoment
