#pragma once

// Dense matrix primitives shared by every other module. All functions are
// templated on the Eigen expression they receive and return plain dynamic
// matrices of the same scalar type, so they compose with real or complex
// operands alike.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "tmoment/error.hpp"

namespace tmoment {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultRankRtol = 1e-10;
inline constexpr double kDefaultPsdTol = 1e-9;

template <typename Derived>
using DenseOf = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

/// re A = (A + A*)/2
template <typename Derived>
DenseOf<Derived> hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.adjoint()) * RealOf<Derived>(0.5);
}

/// im A = (A - A*)/(2i); A = re A + i im A.
template <typename Derived>
DenseOf<Derived> skew_part(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return (a - a.adjoint()) / (Scalar(2) * Scalar(0, 1));
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (!a.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

/// Moore-Penrose inverse by SVD. Singular values at or below
/// rel_tol * sigma_max are treated as zero.
template <typename Derived>
DenseOf<Derived> pinv(const Eigen::MatrixBase<Derived>& a,
                      RealOf<Derived> rel_tol = kDefaultRankRtol) {
  using Mat = DenseOf<Derived>;
  require_finite(a, "pinv");
  if (a.size() == 0) return Mat::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<Mat> svd(a.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const auto cutoff = rel_tol * s(0);
  Eigen::Matrix<RealOf<Derived>, Eigen::Dynamic, 1> inv_s(s.size());
  for (Index i = 0; i < s.size(); ++i) inv_s(i) = (s(i) > cutoff && s(i) > 0) ? 1 / s(i) : 0;
  return svd.matrixV() * inv_s.asDiagonal() * svd.matrixU().adjoint();
}

/// Number of singular values above rel_tol * sigma_max. Uses the same cutoff
/// as pinv() so rank decisions and pseudoinverses stay consistent.
template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& a,
                     RealOf<Derived> rel_tol = kDefaultRankRtol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<DenseOf<Derived>> svd(a.eval());
  const auto& s = svd.singularValues();
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0) && s(i) > 0) ++r;
  return r;
}

/// Classical adjugate (transposed cofactor matrix): A adj(A) = adj(A) A = det(A) I.
/// Works for singular A.
template <typename Derived>
DenseOf<Derived> adjugate(const Eigen::MatrixBase<Derived>& a) {
  using Mat = DenseOf<Derived>;
  require_square(a, "adjugate");
  const Index q = a.rows();
  if (q == 0) return Mat(0, 0);
  if (q == 1) return Mat::Ones(1, 1);
  Mat result(q, q);
  Mat minor(q - 1, q - 1);
  for (Index i = 0; i < q; ++i) {
    for (Index j = 0; j < q; ++j) {
      // minor of A with row j and column i removed
      for (Index r = 0, mr = 0; r < q; ++r) {
        if (r == j) continue;
        for (Index c = 0, mc = 0; c < q; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      const auto d = minor.determinant();
      result(i, j) = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return result;
}

/// Smallest eigenvalue of the Hermitian part.
template <typename Derived>
RealOf<Derived> min_hermitian_eigenvalue(const Eigen::MatrixBase<Derived>& a) {
  require_square(a, "min_hermitian_eigenvalue");
  if (a.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<DenseOf<Derived>> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// True iff ||A - A*|| <= tol (1 + ||A||) and lambda_min(re A) >= -tol (1 + ||A||),
/// Frobenius norms throughout.
template <typename Derived>
bool is_nonneg_hermitian(const Eigen::MatrixBase<Derived>& a,
                         RealOf<Derived> tol = kDefaultPsdTol) {
  require_square(a, "is_nonneg_hermitian");
  const auto scale = 1 + a.norm();
  if ((a - a.adjoint()).norm() > tol * scale) return false;
  return min_hermitian_eigenvalue(a) >= -tol * scale;
}

/// Square root of a nonnegative Hermitian matrix. Eigenvalues of the Hermitian
/// part below zero are clipped to zero.
template <typename Derived>
DenseOf<Derived> sqrt_psd(const Eigen::MatrixBase<Derived>& a) {
  require_square(a, "sqrt_psd");
  if (a.size() == 0) return DenseOf<Derived>(0, 0);
  Eigen::SelfAdjointEigenSolver<DenseOf<Derived>> es(hermitian_part(a));
  auto ev = es.eigenvalues().cwiseMax(0).cwiseSqrt().eval();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

/// Hermitian projection followed by clipping of negative eigenvalues.
template <typename Derived>
DenseOf<Derived> psd_projection(const Eigen::MatrixBase<Derived>& a) {
  require_square(a, "psd_projection");
  if (a.size() == 0) return DenseOf<Derived>(0, 0);
  Eigen::SelfAdjointEigenSolver<DenseOf<Derived>> es(hermitian_part(a));
  auto ev = es.eigenvalues().cwiseMax(0).eval();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, RealOf<Derived> tol = 1e-10) {
  if (u.rows() != u.cols()) return false;
  const auto eye = DenseOf<Derived>::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - eye).norm() <= tol * (1 + u.norm());
}

/// Spectral norm.
template <typename Derived>
RealOf<Derived> operator_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<DenseOf<Derived>> svd(a.eval());
  return svd.singularValues()(0);
}

}  // namespace tmoment
