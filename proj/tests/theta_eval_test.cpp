#include "theta4/theta_eval.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "theta4/errors.hpp"

namespace theta4 {
namespace {

const Complex I(0.0, 1.0);

double rel_diff(Complex a, Complex b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

Point random_z(int g, std::mt19937_64& rng, double scale = 0.6) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Point z(g);
  for (int j = 0; j < g; ++j) z[j] = Complex(u(rng), u(rng));
  return z;
}

TEST(ThetaEval, ThetaThreeAtI) {
  const auto tau = PeriodMatrix::diagonal({I});
  const auto v = theta_with_char(Characteristic::zero(1), Point::Zero(1), tau);
  // pi^{1/4} / Gamma(3/4)
  const double closed_form = std::pow(std::numbers::pi, 0.25) / std::tgamma(0.75);
  EXPECT_NEAR(v.value.real(), closed_form, 1e-12);
  EXPECT_NEAR(v.value.imag(), 0.0, 1e-15);
  EXPECT_NEAR(v.value.real(), oracle::direct_theta(Characteristic::zero(1), Point::Zero(1), tau).real(),
              1e-12);
  EXPECT_NEAR(v.value.real(), 1.086434811, 1e-9);
  EXPECT_LE(v.error_bound, 1e-11);
}

TEST(ThetaEval, MatchesDirectSummation) {
  std::mt19937_64 rng(3);
  for (int g = 1; g <= 2; ++g) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto tau = random_tau(g, 40 + trial, 1.0);
      const Point z = random_z(g, rng);
      for (const auto& c : enumerate_characteristics(g)) {
        const Complex got = theta_with_char(c, z, tau).value;
        const Complex want = oracle::direct_theta(c, z, tau);
        EXPECT_LT(std::abs(got - want), 1e-10) << g << c.to_string();
      }
    }
  }
}

TEST(ThetaEval, OddNullVanishes) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto tau = random_tau(1, seed);
    EXPECT_LT(std::abs(theta_with_char(Characteristic(1, 1, 1), Point::Zero(1), tau).value),
              1e-11);
  }
}

TEST(ThetaEval, BlockDiagonalFactorizes) {
  const auto t1 = random_tau(1, 8);
  const auto t2 = random_tau(1, 9);
  const auto tau = PeriodMatrix::block_diagonal({t1, t2});
  std::mt19937_64 rng(4);
  const Point z = random_z(2, rng);
  for (const auto& c : enumerate_characteristics(2)) {
    const Characteristic c1(1, static_cast<std::uint32_t>(c.a1_bit(0)),
                            static_cast<std::uint32_t>(c.a2_bit(0)));
    const Characteristic c2(1, static_cast<std::uint32_t>(c.a1_bit(1)),
                            static_cast<std::uint32_t>(c.a2_bit(1)));
    const Complex whole = theta_with_char(c, z, tau).value;
    const Complex product = theta_with_char(c1, z.head(1), t1).value *
                            theta_with_char(c2, z.tail(1), t2).value;
    EXPECT_LT(rel_diff(whole, product), 1e-9) << c.to_string();
    const Complex at_zero = theta_with_char(c, Point::Zero(2), tau).value;
    const Complex at_zero_product = theta_with_char(c1, Point::Zero(1), t1).value *
                                    theta_with_char(c2, Point::Zero(1), t2).value;
    EXPECT_LT(std::abs(at_zero - at_zero_product), 1e-10 * std::max(1.0, std::abs(at_zero)));
  }
}

TEST(ThetaEval, GenusThreeBlockFactorization) {
  const auto t1 = random_tau(2, 31);
  const auto t2 = random_tau(1, 32);
  const auto tau = PeriodMatrix::block_diagonal({t1, t2});
  std::mt19937_64 rng(6);
  const Point z = random_z(3, rng);
  const Characteristic c = Characteristic::from_bits({1, 0, 1}, {0, 1, 1});
  const Complex whole = theta_with_char(c, z, tau).value;
  const Complex product =
      theta_with_char(Characteristic::from_bits({1, 0}, {0, 1}), z.head(2), t1).value *
      theta_with_char(Characteristic::from_bits({1}, {1}), z.tail(1), t2).value;
  EXPECT_LT(rel_diff(whole, product), 1e-9);
}

TEST(ThetaEval, ParityUnderNegation) {
  std::mt19937_64 rng(11);
  for (int g = 1; g <= 2; ++g) {
    const auto tau = random_tau(g, 70 + g);
    for (int trial = 0; trial < 3; ++trial) {
      const Point z = random_z(g, rng);
      for (const auto& c : enumerate_characteristics(g)) {
        const Complex plus = theta_with_char(c, z, tau).value;
        const Complex minus = theta_with_char(c, Point(-z), tau).value;
        EXPECT_LT(rel_diff(minus, static_cast<double>(parity(c).value()) * plus), 1e-9) << c.to_string();
      }
    }
  }
}

TEST(ThetaEval, QuasiPeriodicity) {
  std::mt19937_64 rng(12);
  const double pi = std::numbers::pi;
  for (int g = 1; g <= 2; ++g) {
    const auto tau = random_tau(g, 80 + g);
    const Point z = random_z(g, rng, 0.3);
    for (const auto& c : enumerate_characteristics(g)) {
      const Complex base = theta_with_char(c, z, tau).value;
      for (std::uint32_t bits = 1; bits < (1u << g); ++bits) {
        Eigen::VectorXd p(g);
        for (int j = 0; j < g; ++j) p[j] = (bits >> j) & 1U;
        int a1p = 0;
        for (int j = 0; j < g; ++j) a1p += c.a1_bit(j) * static_cast<int>(p[j]);
        const Complex shifted_real = theta_with_char(c, Point(z + p.cast<Complex>()), tau).value;
        EXPECT_LT(rel_diff(shifted_real, (a1p % 2 ? -1.0 : 1.0) * base), 1e-9);

        const Eigen::VectorXcd q = p.cast<Complex>();
        Eigen::VectorXcd half_a2(g);
        for (int j = 0; j < g; ++j) half_a2[j] = 0.5 * c.a2_bit(j);
        const Complex qtq = q.transpose() * tau.tau() * q;
        const Complex qz = q.transpose() * (z + half_a2);
        const Complex factor = std::exp(Complex(0, -pi) * qtq - Complex(0, 2 * pi) * qz);
        const Complex shifted_tau = theta_with_char(c, Point(z + tau.tau() * q), tau).value;
        EXPECT_LT(rel_diff(shifted_tau, factor * base), 1e-9);
      }
    }
  }
}

TEST(ThetaEval, TruncationSoundness) {
  std::mt19937_64 rng(13);
  for (int g = 1; g <= 3; ++g) {
    const auto tau = random_tau(g, 90 + g);
    const auto points = sample_points(tau, 3, 14);
    for (const auto& z : points) {
      for (const auto& c : enumerate_characteristics(g)) {
        const ThetaValue v = theta_with_char(c, z, tau);
        const ThetaValue wide = theta_fixed_radius(c, z, tau, 2 * v.radius);
        // Double rounding in the sum is the only other discrepancy.
        EXPECT_LE(std::abs(wide.value - v.value), 1e-11 + 1e-13 * std::abs(v.value));
        EXPECT_LE(v.error_bound, 1e-11);
      }
    }
  }
}

TEST(ThetaEval, RadiusCapReported) {
  const auto tau = PeriodMatrix::diagonal({Complex(0, 1e-3)});
  try {
    theta_with_char(Characteristic::zero(1), Point::Zero(1), tau, TruncationPolicy{1e-11, 8});
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_GT(e.required_radius(), 8);
  }
}

TEST(ThetaEval, PeriodMatrixValidation) {
  ComplexMatrix asym(2, 2);
  asym << I, 0.1, 0.2, I;
  EXPECT_THROW(PeriodMatrix{asym}, InputError);
  ComplexMatrix indefinite(2, 2);
  indefinite << I, 2.0 * I, 2.0 * I, I;
  EXPECT_THROW(PeriodMatrix{indefinite}, InputError);
  EXPECT_THROW(PeriodMatrix::diagonal({Complex(0, 1e-7)}), InputError);
  EXPECT_THROW(PeriodMatrix::diagonal({Complex(0, std::nan(""))}), InputError);
  EXPECT_THROW((TruncationPolicy{1e-15, 64}).validate(), InputError);
  EXPECT_THROW((TruncationPolicy{1e-11, 65}).validate(), InputError);
  const auto tau = random_tau(2, 1);
  EXPECT_THROW(theta_with_char(Characteristic::zero(1), Point::Zero(1), tau), InputError);
  EXPECT_THROW(theta_with_char(Characteristic::zero(2), Point::Zero(3), tau), InputError);
}

TEST(ThetaEval, NullsGenusOne) {
  const auto nulls = theta_nulls(PeriodMatrix::diagonal({I}));
  ASSERT_EQ(nulls.size(), 3u);
  for (const auto& n : nulls) EXPECT_GT(std::abs(n.value), 0.5);
  EXPECT_NEAR(std::abs(nulls[1].value - nulls[2].value), 0.0, 1e-12);
  for (const auto& n : nulls) {
    EXPECT_NEAR(std::abs(n.value - oracle::direct_theta(n.characteristic, Point::Zero(1),
                                                        PeriodMatrix::diagonal({I}))),
                0.0, 1e-12);
  }
}

TEST(ThetaEval, NullsDiagonalGenusTwo) {
  const auto nulls = theta_nulls(PeriodMatrix::diagonal({I, I}));
  ASSERT_EQ(nulls.size(), 10u);
  double largest = 0.0;
  for (const auto& n : nulls) largest = std::max(largest, std::abs(n.value));
  int small = 0;
  for (const auto& n : nulls) {
    if (std::abs(n.value) < 1e-10 * largest) {
      ++small;
      EXPECT_EQ(n.characteristic, Characteristic(2, 3, 3));
    }
  }
  EXPECT_EQ(small, 1);
}

TEST(ThetaEval, NullsFiniteForRandomTau) {
  for (int g = 1; g <= 3; ++g) {
    for (const auto& n : theta_nulls(random_tau(g, 5 + g))) {
      EXPECT_TRUE(std::isfinite(n.value.real()) && std::isfinite(n.value.imag()));
    }
  }
}

TEST(ThetaEval, TwoTorsionPoint) {
  const auto tau = PeriodMatrix::diagonal({I});
  EXPECT_EQ(two_torsion_point(Characteristic::zero(1), tau), Point::Zero(1));
  // z_a = (a2 + tau a1) / 2
  EXPECT_NEAR(std::abs(two_torsion_point(Characteristic(1, 1, 0), tau)[0] - 0.5 * I), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(two_torsion_point(Characteristic(1, 0, 1), tau)[0] - 0.5), 0.0, 1e-15);
  EXPECT_THROW(two_torsion_point(Characteristic::zero(2), tau), InputError);
}

TEST(ThetaEval, RandomTauContract) {
  EXPECT_EQ(random_tau(3, 7, 1.0), random_tau(3, 7, 1.0));
  EXPECT_FALSE(random_tau(3, 7, 1.0) == random_tau(3, 8, 1.0));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto tau = random_tau(2, seed, 1.0);
    EXPECT_GE(tau.lambda_min(), 1.0 - 1e-12);
  }
  const auto t3 = random_tau(3, 7);
  EXPECT_EQ((t3.tau() - t3.tau().transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ThetaEval, SamplePointsDeterministic) {
  const auto tau = random_tau(2, 1);
  EXPECT_EQ(sample_points(tau, 5, 9), sample_points(tau, 5, 9));
}

}  // namespace
}  // namespace theta4
