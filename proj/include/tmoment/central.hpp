#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tmoment/toeplitz.hpp"

namespace tmoment {

/// Taylor coefficients Gamma_0, ..., Gamma_n of a Caratheodory function.
class GammaSeq {
 public:
  GammaSeq() = default;
  explicit GammaSeq(std::vector<CMatrix> coeffs);

  Index q() const noexcept { return q_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::size_t last_index() const noexcept { return coeffs_.size() - 1; }
  const CMatrix& operator[](std::size_t j) const { return coeffs_[j]; }
  const std::vector<CMatrix>& coeffs() const noexcept { return coeffs_; }
  GammaSeq prefix(std::size_t len) const;

 private:
  Index q_ = 0;
  std::vector<CMatrix> coeffs_;
};

/// Gamma_0 = C_0, Gamma_j = 2 C_j.
GammaSeq to_gamma(const HermSeq& seq);

/// C_0 = re Gamma_0, C_j = Gamma_j / 2.
HermSeq to_covariance(const GammaSeq& gamma);

/// Appends ball centers until the sequence has target_len elements.
/// Throws ModelError if the input is not Toeplitz nonnegative definite.
HermSeq central_extend(const HermSeq& seq, std::size_t target_len, const Tolerances& tol = {});

/// Smallest k such that every stored C_j with j > k equals the center of the
/// ball determined by C_0..C_{j-1}, i.e. the data is the central extension of
/// C_0..C_k. Order 0 forces C_j = 0 for j >= 1. Empty when the last stored
/// element already differs from its center. Only the stored data is inspected;
/// it is not required to be Toeplitz nonnegative definite.
std::optional<std::size_t> central_order(const HermSeq& seq, const Tolerances& tol = {});

}  // namespace tmoment
