#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace tmoment {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite entries, non-unitary transforms, zero polynomials, ...
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// The data violates a mathematical precondition (not Toeplitz nonnegative
/// definite, not a Caratheodory sequence, singular denominator in the disk).
/// `index()` is the first block index at which the violation was detected,
/// or npos when it does not apply.
class ModelError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit ModelError(const std::string& what, std::size_t index = npos)
      : Error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Leading nonvanishing derivative of a zero is numerically indistinguishable
/// from zero.
class DegenerateZero : public Error {
 public:
  using Error::Error;
};

/// A unimodular root cluster failed the derivative test for its multiplicity.
class MultiplicityError : public Error {
 public:
  MultiplicityError(const std::string& what, std::complex<double> v, int m)
      : Error(what), location_(v), multiplicity_(m) {}

  std::complex<double> location() const noexcept { return location_; }
  int multiplicity() const noexcept { return multiplicity_; }

 private:
  std::complex<double> location_;
  int multiplicity_;
};

/// Radial extrapolation did not settle.
class NoLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace tmoment
