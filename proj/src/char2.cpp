#include "theta4/char2.hpp"

#include <sstream>

#include "theta4/errors.hpp"

namespace theta4 {

namespace {

void check_same_genus(const Characteristic& a, const Characteristic& b) {
  if (a.genus() != b.genus()) {
    throw InputError("genus mismatch: " + std::to_string(a.genus()) + " vs " +
                     std::to_string(b.genus()));
  }
}

std::uint32_t pack_bits(const std::vector<int>& bits) {
  std::uint32_t out = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw InputError("characteristic bits must be 0 or 1");
    out = (out << 1) | static_cast<std::uint32_t>(b);
  }
  return out;
}

}  // namespace

Characteristic::Characteristic(int g, std::uint32_t a1, std::uint32_t a2)
    : g_(g), a1_(a1), a2_(a2) {
  if (g < 1 || g > kMaxCharGenus) {
    throw InputError("genus " + std::to_string(g) + " outside supported range [1, " +
                     std::to_string(kMaxCharGenus) + "]");
  }
  const std::uint32_t limit = 1U << g;
  if (a1 >= limit || a2 >= limit) {
    throw InputError("characteristic bits do not fit in genus " + std::to_string(g));
  }
}

Characteristic Characteristic::from_index(int g, std::uint32_t index) {
  if (g < 1 || g > kMaxCharGenus) {
    throw InputError("genus " + std::to_string(g) + " outside supported range");
  }
  const std::uint32_t mask = (1U << g) - 1;
  if (index >> (2 * g) != 0) throw InputError("characteristic index out of range");
  return {g, index >> g, index & mask};
}

Characteristic Characteristic::from_bits(const std::vector<int>& a1,
                                         const std::vector<int>& a2) {
  if (a1.size() != a2.size() || a1.empty()) {
    throw InputError("characteristic halves must have equal, nonzero length");
  }
  return {static_cast<int>(a1.size()), pack_bits(a1), pack_bits(a2)};
}

std::vector<int> Characteristic::a1_bits() const {
  std::vector<int> out(g_);
  for (int j = 0; j < g_; ++j) out[j] = a1_bit(j);
  return out;
}

std::vector<int> Characteristic::a2_bits() const {
  std::vector<int> out(g_);
  for (int j = 0; j < g_; ++j) out[j] = a2_bit(j);
  return out;
}

Characteristic Characteristic::operator+(const Characteristic& o) const {
  check_same_genus(*this, o);
  return {g_, a1_ ^ o.a1_, a2_ ^ o.a2_};
}

std::string Characteristic::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int j = 0; j < g_; ++j) os << a1_bit(j);
  os << ';';
  for (int j = 0; j < g_; ++j) os << a2_bit(j);
  os << ']';
  return os.str();
}

std::strong_ordering Characteristic::operator<=>(const Characteristic& o) const {
  if (auto cmp = g_ <=> o.g_; cmp != 0) return cmp;
  return index() <=> o.index();
}

std::vector<Characteristic> enumerate_characteristics(int g) {
  if (g < 1 || g > kMaxCharGenus) {
    throw InputError("genus " + std::to_string(g) + " outside supported range [1, " +
                     std::to_string(kMaxCharGenus) + "]");
  }
  const std::uint32_t n = 1U << (2 * g);
  std::vector<Characteristic> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(Characteristic::from_index(g, i));
  return out;
}

Sign parity(const Characteristic& c) { return Sign::from_bit(dot2(c.a1(), c.a2())); }

Sign weil_pairing(const Characteristic& a, const Characteristic& b) {
  check_same_genus(a, b);
  return Sign::from_bit(dot2(a.a1(), b.a2()) ^ dot2(a.a2(), b.a1()));
}

Sign kappa_value(const Characteristic& c, const Characteristic& a) {
  check_same_genus(c, a);
  return Sign::from_bit(dot2(a.a1(), a.a2()) ^ dot2(c.a1(), a.a2()) ^
                        dot2(c.a2(), a.a1()));
}

Characteristic translate(const Characteristic& b, const Characteristic& c) { return c + b; }

std::vector<Characteristic> even_points(const Characteristic& c) {
  if (!is_even(c)) {
    throw InputError("even_points requires an even characteristic, got " + c.to_string());
  }
  std::vector<Characteristic> out;
  out.reserve(even_count(c.genus()));
  for (const auto& a : enumerate_characteristics(c.genus())) {
    if (kappa_value(c, a).is_plus()) out.push_back(a);
  }
  return out;
}

std::vector<Characteristic> even_characteristics(int g) {
  return even_points(Characteristic::zero(g));
}

}  // namespace theta4
