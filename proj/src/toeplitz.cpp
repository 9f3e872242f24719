#include "tmoment/toeplitz.hpp"

#include <algorithm>

namespace tmoment {

HermSeq::HermSeq(std::vector<CMatrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("sequence must contain at least C_0");
  q_ = coeffs_.front().rows();
  if (q_ == 0) throw DimensionError("coefficient 0: empty matrix");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const auto& c = coeffs_[j];
    if (c.rows() != q_ || c.cols() != q_) {
      throw DimensionError("coefficient " + std::to_string(j) + ": expected " +
                           std::to_string(q_) + "x" + std::to_string(q_) + ", got " +
                           std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
    }
    if (!c.allFinite()) throw InvalidInput("coefficient " + std::to_string(j) + ": non-finite entry");
  }
}

CMatrix HermSeq::at(std::ptrdiff_t j) const {
  const auto k = static_cast<std::size_t>(j < 0 ? -j : j);
  if (k >= coeffs_.size()) throw IndexError("index " + std::to_string(j) + " outside stored range");
  return j < 0 ? CMatrix(coeffs_[k].adjoint()) : coeffs_[k];
}

HermSeq HermSeq::prefix(std::size_t len) const {
  if (len == 0 || len > coeffs_.size()) throw IndexError("prefix length " + std::to_string(len) + " out of range");
  return HermSeq(std::vector<CMatrix>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(len)));
}

HermSeq HermSeq::appended(const CMatrix& c) const {
  auto out = coeffs_;
  out.push_back(c);
  return HermSeq(std::move(out));
}

std::string to_string(SeqClass c) {
  switch (c) {
    case SeqClass::TPD: return "TPD";
    case SeqClass::TND: return "TND";
    case SeqClass::NOT_TND: return "NOT_TND";
  }
  return "?";
}

namespace {

void require_index(const HermSeq& seq, std::size_t n) {
  if (seq.empty() || n > seq.last_index()) {
    throw IndexError("index " + std::to_string(n) + " exceeds last stored index " +
                     std::to_string(seq.empty() ? 0 : seq.last_index()));
  }
}

}  // namespace

CMatrix block_toeplitz(const HermSeq& seq, std::size_t n) {
  require_index(seq, n);
  const Index q = seq.q();
  const auto m = static_cast<Index>(n + 1);
  CMatrix t(m * q, m * q);
  for (Index j = 0; j < m; ++j)
    for (Index k = 0; k < m; ++k) t.block(j * q, k * q, q, q) = seq.at(j - k);
  return t;
}

CMatrix lower_block_toeplitz(const std::vector<CMatrix>& blocks, std::size_t n) {
  if (n >= blocks.size()) throw IndexError("lower_block_toeplitz: index out of range");
  const Index q = blocks.front().rows();
  const auto m = static_cast<Index>(n + 1);
  CMatrix s = CMatrix::Zero(m * q, m * q);
  for (Index j = 0; j < m; ++j)
    for (Index k = 0; k <= j; ++k) s.block(j * q, k * q, q, q) = blocks[static_cast<std::size_t>(j - k)];
  return s;
}

ToeplitzBundle build_bundle(const HermSeq& seq, std::size_t n) {
  require_index(seq, n);
  const Index q = seq.q();
  const auto nn = static_cast<Index>(n);
  ToeplitzBundle b;
  b.n = n;
  b.T = block_toeplitz(seq, n);
  b.Y.resize(nn * q, q);
  b.Z.resize(q, nn * q);
  for (Index j = 1; j <= nn; ++j) {
    b.Y.block((j - 1) * q, 0, q, q) = seq[static_cast<std::size_t>(j)];
    b.Z.block(0, (nn - j) * q, q, q) = seq[static_cast<std::size_t>(j)];
  }
  std::vector<CMatrix> gamma(n + 1);
  gamma[0] = seq[0];
  for (std::size_t j = 1; j <= n; ++j) gamma[j] = 2.0 * seq[j];
  b.S = lower_block_toeplitz(gamma, n);
  return b;
}

Classification classify(const HermSeq& seq, double tol) {
  Classification out;
  out.kind = SeqClass::TPD;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const CMatrix t = block_toeplitz(seq, k);
    const double scale = 1 + t.norm();
    const bool hermitian = (t - t.adjoint()).norm() <= tol * scale;
    const double lmin = min_hermitian_eigenvalue(t);
    if (!hermitian || lmin < -tol * scale) {
      out.kind = SeqClass::NOT_TND;
      out.first_failure = k;
      return out;
    }
    if (lmin <= tol * scale && out.kind == SeqClass::TPD) {
      out.kind = SeqClass::TND;
      out.first_failure = k;
    }
  }
  return out;
}

MatrixBall ball_params_unchecked(const HermSeq& seq, std::size_t n, double rank_rtol) {
  require_index(seq, n);
  const Index q = seq.q();
  if (n == 0) return {CMatrix::Zero(q, q), seq[0], seq[0]};
  const auto b = build_bundle(seq, n);
  const CMatrix tp = pinv(block_toeplitz(seq, n - 1), rank_rtol);
  MatrixBall ball;
  ball.M = b.Z * tp * b.Y;
  ball.L = seq[0] - b.Z * tp * b.Z.adjoint();
  ball.R = seq[0] - b.Y.adjoint() * tp * b.Y;
  return ball;
}

MatrixBall ball_params(const HermSeq& seq, std::size_t n, const Tolerances& tol) {
  require_index(seq, n);
  const auto c = classify(seq.prefix(n + 1), tol.psd_tol);
  if (c.kind == SeqClass::NOT_TND) {
    throw ModelError("T_" + std::to_string(*c.first_failure) + " not nonnegative Hermitian",
                     *c.first_failure);
  }
  return ball_params_unchecked(seq, n, tol.rank_rtol);
}

namespace {

// PSD square root with eigenvalues at or below `cut` removed.
CMatrix truncated_sqrt(const CMatrix& a, double cut) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > cut ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

bool ball_membership(const MatrixBall& ball, const CMatrix& x, double tol, double rank_rtol) {
  const Index q = ball.M.rows();
  if (ball.M.cols() != q || ball.L.rows() != q || ball.L.cols() != q || ball.R.rows() != q ||
      ball.R.cols() != q || x.rows() != q || x.cols() != q) {
    throw DimensionError("ball_membership: incompatible dimensions");
  }
  const double scale = 1 + ball.M.norm() + ball.L.norm() + ball.R.norm();
  const CMatrix d = x - ball.M;
  const CMatrix sl = truncated_sqrt(ball.L, rank_rtol * scale);
  const CMatrix sr = truncated_sqrt(ball.R, rank_rtol * scale);
  const CMatrix slp = pinv(sl, rank_rtol);
  const CMatrix srp = pinv(sr, rank_rtol);
  const double consistency = tol * (scale + d.norm());
  if ((sl * slp * d - d).norm() > consistency) return false;
  if ((d * srp * sr - d).norm() > consistency) return false;
  return operator_norm(CMatrix(slp * d * srp)) <= 1 + tol;
}

bool rank_drop(const HermSeq& seq, std::size_t n, double rank_rtol) {
  if (n == 0) throw IndexError("rank_drop requires n >= 1");
  require_index(seq, n);
  return numerical_rank(block_toeplitz(seq, n), rank_rtol) ==
         numerical_rank(block_toeplitz(seq, n - 1), rank_rtol);
}

HermSeq conjugate_by_unitary(const HermSeq& seq, const CMatrix& u) {
  if (u.rows() != seq.q() || u.cols() != seq.q())
    throw DimensionError("conjugate_by_unitary: U must be q x q");
  if (!u.allFinite() || !is_unitary(u)) throw InvalidInput("conjugate_by_unitary: U is not unitary");
  std::vector<CMatrix> out;
  out.reserve(seq.size());
  for (const auto& c : seq.coeffs()) out.emplace_back(u.adjoint() * c * u);
  return HermSeq(std::move(out));
}

HermSeq direct_sum(const HermSeq& a, const HermSeq& b) {
  if (a.size() != b.size()) throw DimensionError("direct_sum: sequences differ in length");
  const Index p = a.q();
  const Index q = b.q();
  std::vector<CMatrix> out;
  out.reserve(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    CMatrix d = CMatrix::Zero(p + q, p + q);
    d.topLeftCorner(p, p) = a[j];
    d.bottomRightCorner(q, q) = b[j];
    out.push_back(std::move(d));
  }
  return HermSeq(std::move(out));
}

}  // namespace tmoment
