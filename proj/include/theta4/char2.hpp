#pragma once

// Theta characteristics over GF(2): pairs (a1, a2) of g-bit vectors, their
// parity, the Weil pairing, the quadratic forms kappa_c and the translation
// action of the 2-torsion group.

#include <cstdint>
#include <compare>
#include <string>
#include <vector>

namespace theta4 {

inline constexpr int kMaxCharGenus = 6;

/// A value in {+1, -1}.
class Sign {
 public:
  constexpr Sign() = default;

  static constexpr Sign plus() { return Sign(false); }
  static constexpr Sign minus() { return Sign(true); }
  /// (-1)^bit
  static constexpr Sign from_bit(unsigned bit) { return Sign((bit & 1U) != 0); }

  constexpr int value() const { return negative_ ? -1 : 1; }
  constexpr bool is_plus() const { return !negative_; }

  constexpr Sign operator*(Sign o) const { return Sign(negative_ != o.negative_); }
  constexpr Sign operator-() const { return Sign(!negative_); }
  constexpr bool operator==(const Sign&) const = default;

 private:
  constexpr explicit Sign(bool negative) : negative_(negative) {}
  bool negative_ = false;
};

/// A pair (a1, a2) of g-bit vectors over GF(2).
///
/// Bits are stored most-significant-bit-first: coordinate j (0-based) of a1
/// lives in bit (g - 1 - j). The canonical index is (a1 << g) | a2.
class Characteristic {
 public:
  Characteristic() = default;
  /// Throws InputError if g is outside [1, kMaxCharGenus] or a bit pattern
  /// does not fit in g bits.
  Characteristic(int g, std::uint32_t a1, std::uint32_t a2);

  static Characteristic zero(int g) { return {g, 0, 0}; }
  static Characteristic from_index(int g, std::uint32_t index);
  /// Builds from explicit coordinate lists; entries must be 0 or 1.
  static Characteristic from_bits(const std::vector<int>& a1,
                                  const std::vector<int>& a2);

  int genus() const { return g_; }
  std::uint32_t a1() const { return a1_; }
  std::uint32_t a2() const { return a2_; }
  std::uint32_t index() const { return (a1_ << g_) | a2_; }
  bool is_zero() const { return a1_ == 0 && a2_ == 0; }

  int a1_bit(int j) const { return static_cast<int>((a1_ >> (g_ - 1 - j)) & 1U); }
  int a2_bit(int j) const { return static_cast<int>((a2_ >> (g_ - 1 - j)) & 1U); }
  std::vector<int> a1_bits() const;
  std::vector<int> a2_bits() const;

  /// Componentwise sum over GF(2).
  Characteristic operator+(const Characteristic& o) const;

  /// e.g. "[01;10]"
  std::string to_string() const;

  bool operator==(const Characteristic&) const = default;
  std::strong_ordering operator<=>(const Characteristic& o) const;

 private:
  int g_ = 1;
  std::uint32_t a1_ = 0;
  std::uint32_t a2_ = 0;
};

/// Dot product of two g-bit vectors over GF(2).
inline unsigned dot2(std::uint32_t x, std::uint32_t y) {
  return static_cast<unsigned>(__builtin_popcount(x & y)) & 1U;
}

/// d+ = 2^{g-1}(2^g + 1), the number of even characteristics.
constexpr std::uint64_t even_count(int g) {
  return (std::uint64_t{1} << (g - 1)) * ((std::uint64_t{1} << g) + 1);
}
/// d- = 2^{g-1}(2^g - 1).
constexpr std::uint64_t odd_count(int g) {
  return (std::uint64_t{1} << (g - 1)) * ((std::uint64_t{1} << g) - 1);
}

/// All 2^{2g} characteristics, ascending by canonical index.
std::vector<Characteristic> enumerate_characteristics(int g);

/// (-1)^{a1 . a2}
Sign parity(const Characteristic& c);
inline bool is_even(const Characteristic& c) { return parity(c).is_plus(); }

/// <a, b> = (-1)^{a1 . b2 + a2 . b1}
Sign weil_pairing(const Characteristic& a, const Characteristic& b);

/// kappa_c(a) = (-1)^{a1 . a2 + c1 . a2 + c2 . a1}. Satisfies
/// kappa(a + b) = kappa(a) kappa(b) <a, b>.
Sign kappa_value(const Characteristic& c, const Characteristic& a);

/// The action b . kappa_c = kappa_{c + b}.
Characteristic translate(const Characteristic& b, const Characteristic& c);

/// {a : kappa_c(a) = +1} in canonical order. Throws InputError for odd c.
std::vector<Characteristic> even_points(const Characteristic& c);

/// Even characteristics in canonical order (equal to even_points(zero)).
std::vector<Characteristic> even_characteristics(int g);

}  // namespace theta4
