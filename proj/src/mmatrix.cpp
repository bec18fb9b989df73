#include "theta4/mmatrix.hpp"

#include <string>

#include "theta4/errors.hpp"

namespace theta4 {

namespace {

void check_genus(int g) {
  if (g < 1 || g > kMaxMatrixGenus) {
    throw InputError("genus " + std::to_string(g) + " outside supported range [1, " +
                     std::to_string(kMaxMatrixGenus) + "] for the sign matrix");
  }
}

void check_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw InputError("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                     std::to_string(got));
  }
}

Rational pow2(int k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return Rational(p);
}

// Accumulates sum_k sign_k * x_k with a shared denominator so the inner loop
// only touches integers.
class SignedAccumulator {
 public:
  void add(int sign, const Rational& x) {
    terms_.push_back({sign, &x});
  }
  Rational result() {
    mpz_class den = 1;
    for (const auto& t : terms_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.x->get_den_mpz_t());
    mpz_class num = 0;
    mpz_class scaled;
    for (const auto& t : terms_) {
      mpz_divexact(scaled.get_mpz_t(), den.get_mpz_t(), t.x->get_den_mpz_t());
      scaled *= t.x->get_num();
      if (t.sign > 0) {
        num += scaled;
      } else {
        num -= scaled;
      }
    }
    terms_.clear();
    Rational out(num, den);
    out.canonicalize();
    return out;
  }

 private:
  struct Term {
    int sign;
    const Rational* x;
  };
  std::vector<Term> terms_;
};

}  // namespace

SignMatrix::SignMatrix(int g, std::vector<Characteristic> index_map,
                       std::vector<std::int8_t> entries)
    : g_(g), index_map_(std::move(index_map)), entries_(std::move(entries)) {
  check_dim(index_map_.size() * index_map_.size(), entries_.size());
}

bool SignMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (at(i, j) != at(j, i)) return false;
    }
  }
  return true;
}

std::int64_t SignMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < dim(); ++i) t += at(i, i);
  return t;
}

RationalMatrix RationalMatrix::identity(std::size_t dim) {
  RationalMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) out.at(i, i) = 1;
  return out;
}

RationalMatrix RationalMatrix::from(const SignMatrix& m) {
  RationalMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out.at(i, j) = m.at(i, j);
  }
  return out;
}

mpz_class RationalMatrix::common_denominator() const {
  mpz_class den = 1;
  for (const auto& x : entries_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  return den;
}

SignMatrix build_m(int g) {
  check_genus(g);
  auto evens = even_characteristics(g);
  const std::size_t n = evens.size();
  std::vector<std::int8_t> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      entries[i * n + j] = static_cast<std::int8_t>(weil_pairing(evens[i], evens[j]).value());
    }
  }
  return SignMatrix(g, std::move(evens), std::move(entries));
}

std::int64_t row_sum(int g, const Characteristic& a) {
  check_genus(g);
  if (a.genus() != g) throw InputError("characteristic genus does not match");
  std::int64_t sum = 0;
  for (const auto& b : enumerate_characteristics(g)) {
    if (is_even(b)) sum += weil_pairing(a, b).value();
  }
  return sum;
}

std::int64_t row_sum_closed_form(int g, const Characteristic& a) {
  if (a.is_zero()) return static_cast<std::int64_t>(even_count(g));
  return parity(a).value() * (std::int64_t{1} << (g - 1));
}

RationalMatrix inverse_m(int g) {
  const SignMatrix m = build_m(g);
  const Rational shift = pow2(g - 1);
  const Rational scale = pow2(2 * g - 1);
  RationalMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      Rational x = m.at(i, j);
      if (i == j) x -= shift;
      out.at(i, j) = x / scale;
    }
  }
  return out;
}

RationalMatrix inversion_coefficients(int g) {
  const SignMatrix m = build_m(g);
  const Rational two_g = pow2(g);
  RationalMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      Rational x = 2 * m.at(i, j);
      if (i == j) x -= two_g;
      out.at(i, j) = x / two_g;
    }
  }
  return out;
}

RationalVector apply(const SignMatrix& m, std::span<const Rational> v) {
  check_dim(m.dim(), v.size());
  RationalVector out(m.dim());
  SignedAccumulator acc;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) acc.add(m.at(i, j), v[j]);
    out[i] = acc.result();
  }
  return out;
}

RationalVector apply(const RationalMatrix& m, std::span<const Rational> v) {
  check_dim(m.dim(), v.size());
  RationalVector out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.dim(); ++j) s += m.at(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

RationalMatrix multiply(const SignMatrix& a, const RationalMatrix& b) {
  check_dim(a.dim(), b.dim());
  const std::size_t n = a.dim();
  RationalMatrix out(n);
  SignedAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) acc.add(a.at(i, k), b.at(k, j));
      out.at(i, j) = acc.result();
    }
  }
  return out;
}

RationalMatrix multiply(const RationalMatrix& a, const SignMatrix& b) {
  check_dim(a.dim(), b.dim());
  const std::size_t n = a.dim();
  RationalMatrix out(n);
  SignedAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) acc.add(b.at(k, j), a.at(i, k));
      out.at(i, j) = acc.result();
    }
  }
  return out;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  check_dim(a.dim(), b.dim());
  const std::size_t n = a.dim();
  RationalMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a.at(i, k) * b.at(k, j);
      out.at(i, j) = s;
    }
  }
  return out;
}

bool quadratic_identity_holds(const SignMatrix& m) {
  const int g = m.genus();
  const std::size_t n = m.dim();
  const std::int64_t lin = std::int64_t{1} << (g - 1);
  const std::int64_t diag = std::int64_t{1} << (2 * g - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t sq = 0;
      for (std::size_t k = 0; k < n; ++k) sq += m.at(i, k) * m.at(k, j);
      const std::int64_t expected = lin * m.at(i, j) + (i == j ? diag : 0);
      if (sq != expected) return false;
    }
  }
  return true;
}

MMatrixVerification verify_mmatrix(int g) {
  MMatrixVerification v;
  const SignMatrix m = build_m(g);
  v.g = g;
  v.dim = m.dim();
  v.symmetric = m.is_symmetric();
  v.unit_diagonal = m.trace() == static_cast<std::int64_t>(m.dim());

  v.row_sums = true;
  for (const auto& a : enumerate_characteristics(g)) {
    if (row_sum(g, a) != row_sum_closed_form(g, a)) {
      v.row_sums = false;
      break;
    }
  }

  v.quadratic_identity = quadratic_identity_holds(m);
  const RationalMatrix inv = inverse_m(g);
  const RationalMatrix id = RationalMatrix::identity(m.dim());
  v.inverse_right = multiply(m, inv) == id;
  v.inverse_left = multiply(inv, m) == id;
  return v;
}

}  // namespace theta4
