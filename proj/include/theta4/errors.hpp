#pragma once

#include <stdexcept>
#include <string>

namespace theta4 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied something outside an operation's domain (bad genus,
/// mismatched dimensions, malformed period matrix, odd characteristic where
/// an even one is required).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The lattice sum could not reach the requested tail bound within the
/// radius cap.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required_radius)
      : Error(what), required_radius_(required_radius) {}

  int required_radius() const noexcept { return required_radius_; }

 private:
  int required_radius_;
};

/// A division by a theta value that is numerically zero. Signals a
/// vanishing theta-null (or an unlucky evaluation point).
class VanishingNullError : public Error {
 public:
  using Error::Error;
};

}  // namespace theta4
