#include "tmoment/central.hpp"

namespace tmoment {

GammaSeq::GammaSeq(std::vector<CMatrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("Gamma sequence must contain at least Gamma_0");
  q_ = coeffs_.front().rows();
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const auto& c = coeffs_[j];
    if (c.rows() != q_ || c.cols() != q_ || q_ == 0)
      throw DimensionError("Gamma coefficient " + std::to_string(j) + ": wrong dimensions");
    if (!c.allFinite()) throw InvalidInput("Gamma coefficient " + std::to_string(j) + ": non-finite entry");
  }
}

GammaSeq GammaSeq::prefix(std::size_t len) const {
  if (len == 0 || len > coeffs_.size()) throw IndexError("prefix length out of range");
  return GammaSeq(std::vector<CMatrix>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(len)));
}

GammaSeq to_gamma(const HermSeq& seq) {
  std::vector<CMatrix> g;
  g.reserve(seq.size());
  g.push_back(seq[0]);
  for (std::size_t j = 1; j < seq.size(); ++j) g.emplace_back(2.0 * seq[j]);
  return GammaSeq(std::move(g));
}

HermSeq to_covariance(const GammaSeq& gamma) {
  std::vector<CMatrix> c;
  c.reserve(gamma.size());
  c.push_back(hermitian_part(gamma[0]));
  for (std::size_t j = 1; j < gamma.size(); ++j) c.emplace_back(0.5 * gamma[j]);
  return HermSeq(std::move(c));
}

namespace {

void require_tnd(const HermSeq& seq, const Tolerances& tol) {
  const auto c = classify(seq, tol.psd_tol);
  if (c.kind == SeqClass::NOT_TND) {
    throw ModelError("T_" + std::to_string(*c.first_failure) + " not nonnegative Hermitian",
                     *c.first_failure);
  }
}

}  // namespace

HermSeq central_extend(const HermSeq& seq, std::size_t target_len, const Tolerances& tol) {
  if (target_len < seq.size())
    throw IndexError("central_extend: target length shorter than the input");
  require_tnd(seq, tol);
  std::vector<CMatrix> c = seq.coeffs();
  while (c.size() < target_len) {
    const HermSeq cur(c);
    c.push_back(ball_params_unchecked(cur, cur.last_index(), tol.rank_rtol).M);
  }
  return HermSeq(std::move(c));
}

std::optional<std::size_t> central_order(const HermSeq& seq, const Tolerances& tol) {
  const std::size_t n = seq.last_index();
  if (n == 0) return 0;
  const double thresh = tol.center_tol * (1 + seq[0].norm());

  // matches[j]: C_j equals the center of the ball determined by C_0..C_{j-1}.
  // Order k means C_0..C_k determine the rest: C_j = M_j for every j > k.
  std::size_t k = 0;
  bool last_matches = true;
  for (std::size_t j = 1; j <= n; ++j) {
    const CMatrix m = ball_params_unchecked(seq, j - 1, tol.rank_rtol).M;
    const bool matches = (seq[j] - m).norm() <= thresh;
    if (!matches) k = j;
    if (j == n) last_matches = matches;
  }
  if (!last_matches) return std::nullopt;
  return k;
}

}  // namespace tmoment
