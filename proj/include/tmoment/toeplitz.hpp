#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tmoment/linalg.hpp"
#include "tmoment/tolerances.hpp"

namespace tmoment {

/// Finite sequence C_0, ..., C_n of q x q matrices. Negative indices are
/// never stored; at(-j) returns C_j*.
class HermSeq {
 public:
  HermSeq() = default;
  explicit HermSeq(std::vector<CMatrix> coeffs);

  Index q() const noexcept { return q_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool empty() const noexcept { return coeffs_.empty(); }
  /// Largest stored index n.
  std::size_t last_index() const noexcept { return coeffs_.size() - 1; }

  const CMatrix& operator[](std::size_t j) const { return coeffs_[j]; }
  CMatrix at(std::ptrdiff_t j) const;
  const std::vector<CMatrix>& coeffs() const noexcept { return coeffs_; }

  HermSeq prefix(std::size_t len) const;
  HermSeq appended(const CMatrix& c) const;

 private:
  Index q_ = 0;
  std::vector<CMatrix> coeffs_;
};

struct ToeplitzBundle {
  std::size_t n = 0;
  CMatrix T;  ///< [C_{j-k}]_{j,k=0..n}
  CMatrix Y;  ///< col(C_1, ..., C_n); empty for n = 0
  CMatrix Z;  ///< [C_n, ..., C_1]; empty for n = 0
  CMatrix S;  ///< lower block triangular Toeplitz of Gamma_0 = C_0, Gamma_j = 2 C_j
};

/// Admissible next coefficients {M + sqrt(L) K sqrt(R) : ||K|| <= 1}.
struct MatrixBall {
  CMatrix M;
  CMatrix L;
  CMatrix R;
};

enum class SeqClass { TPD, TND, NOT_TND };

struct Classification {
  SeqClass kind = SeqClass::NOT_TND;
  /// NOT_TND: first k with T_k not nonnegative Hermitian.
  /// TND: first k with T_k singular. TPD: empty.
  std::optional<std::size_t> first_failure;
};

std::string to_string(SeqClass c);

/// [C_{j-k}]_{j,k=0..n}
CMatrix block_toeplitz(const HermSeq& seq, std::size_t n);

/// Lower block triangular Toeplitz matrix with blocks G_0, ..., G_n.
CMatrix lower_block_toeplitz(const std::vector<CMatrix>& blocks, std::size_t n);

ToeplitzBundle build_bundle(const HermSeq& seq, std::size_t n);

Classification classify(const HermSeq& seq, double tol = kDefaultPsdTol);

/// Center and semi-radii of the ball of admissible C_{n+1}.
/// Throws ModelError when C_0..C_n is not Toeplitz nonnegative definite.
MatrixBall ball_params(const HermSeq& seq, std::size_t n, const Tolerances& tol = {});

/// ball_params() without the nonnegativity check.
MatrixBall ball_params_unchecked(const HermSeq& seq, std::size_t n, double rank_rtol);

bool ball_membership(const MatrixBall& ball, const CMatrix& x, double tol = 1e-9,
                     double rank_rtol = kDefaultRankRtol);

/// rank T_n == rank T_{n-1}
bool rank_drop(const HermSeq& seq, std::size_t n, double rank_rtol = kDefaultRankRtol);

/// (U* C_j U)_j
HermSeq conjugate_by_unitary(const HermSeq& seq, const CMatrix& u);

/// (diag(A_j, B_j))_j over the common length.
HermSeq direct_sum(const HermSeq& a, const HermSeq& b);

}  // namespace tmoment
