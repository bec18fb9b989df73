#pragma once

// The sign matrix M over even characteristics, with entries
// <a, b> = (-1)^{a1.b2 + a2.b1}, and its closed-form inverse
// (M - 2^{g-1} I) / 2^{2g-1}. Everything here is exact.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "theta4/char2.hpp"

namespace theta4 {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

inline constexpr int kMaxMatrixGenus = 5;

class SignMatrix {
 public:
  SignMatrix(int g, std::vector<Characteristic> index_map, std::vector<std::int8_t> entries);

  int genus() const { return g_; }
  std::size_t dim() const { return index_map_.size(); }
  int at(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }
  const std::vector<Characteristic>& index_map() const { return index_map_; }

  bool is_symmetric() const;
  std::int64_t trace() const;

 private:
  int g_;
  std::vector<Characteristic> index_map_;
  std::vector<std::int8_t> entries_;
};

/// Dense square matrix of exact rationals.
class RationalMatrix {
 public:
  explicit RationalMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

  static RationalMatrix identity(std::size_t dim);
  static RationalMatrix from(const SignMatrix& m);

  std::size_t dim() const { return dim_; }
  Rational& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  /// Least common multiple of all denominators.
  mpz_class common_denominator() const;

  bool operator==(const RationalMatrix& o) const {
    return dim_ == o.dim_ && entries_ == o.entries_;
  }

 private:
  std::size_t dim_;
  std::vector<Rational> entries_;
};

/// M for genus g, rows and columns ordered by even_characteristics(g).
/// Throws InputError unless 1 <= g <= kMaxMatrixGenus.
SignMatrix build_m(int g);

/// Sum over even b of <a, b>. Closed form: d+ if a == 0, else
/// (-1)^{a1.a2} 2^{g-1}. Computed by direct summation.
std::int64_t row_sum(int g, const Characteristic& a);

/// The closed-form value of row_sum.
std::int64_t row_sum_closed_form(int g, const Characteristic& a);

/// (M - 2^{g-1} I) / 2^{2g-1}
RationalMatrix inverse_m(int g);

/// (2M - 2^g I) / 2^g. Row c expresses theta[c](0)^3 theta[c](2z) in terms of
/// the fourth powers theta[a](z)^4, a even.
RationalMatrix inversion_coefficients(int g);

RationalVector apply(const SignMatrix& m, std::span<const Rational> v);
RationalVector apply(const RationalMatrix& m, std::span<const Rational> v);

RationalMatrix multiply(const SignMatrix& a, const RationalMatrix& b);
RationalMatrix multiply(const RationalMatrix& a, const SignMatrix& b);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

/// Checks M^2 == 2^{g-1} M + 2^{2g-1} I in 64-bit integer arithmetic.
bool quadratic_identity_holds(const SignMatrix& m);

struct MMatrixVerification {
  int g = 0;
  std::size_t dim = 0;
  bool symmetric = false;
  bool unit_diagonal = false;
  bool row_sums = false;           // every one of the 2^{2g} characteristics
  bool quadratic_identity = false;
  bool inverse_right = false;      // M * Minv == I
  bool inverse_left = false;       // Minv * M == I

  bool ok() const {
    return symmetric && unit_diagonal && row_sums && quadratic_identity && inverse_right &&
           inverse_left;
  }
};

MMatrixVerification verify_mmatrix(int g);

}  // namespace theta4
