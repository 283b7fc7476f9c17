#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qho/special_fn.hpp"

namespace {

using namespace qho;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

TEST(Hermite, LowOrdersMatchClosedForms) {
  EXPECT_EQ(hermite_eval(0, 3.7), 1.0);
  EXPECT_EQ(hermite_eval(1, 3.7), 7.4);
  EXPECT_EQ(hermite_eval(2, 0.0), -2.0);
  EXPECT_EQ(hermite_eval(3, 1.0), -4.0);
  EXPECT_EQ(hermite_eval(4, 0.5), 1.0);
}

TEST(Hermite, MatchesExactCoefficientOracle) {
  for (int m : {5, 10, 17, 25, 40, 60, 90}) {
    for (double x : {-3.3, -2.2, -0.7, 0.1, 1.3, 2.9, 4.1}) {
      const double want = static_cast<double>(oracle::hermite_exact(m, x));
      const double got = hermite_eval(m, x);
      // Envelope |H_m(x)| <= 1.09 sqrt(2^m m!) exp(x^2 / 2) sets the rounding scale.
      const double envelope = std::exp(0.5 * (m * std::log(2.0) + std::lgamma(m + 1.0)) + 0.5 * x * x);
      EXPECT_LT(std::abs(got - want), 1e-14 * m * envelope) << "m=" << m << " x=" << x;
    }
  }
}

TEST(Hermite, ParityProperty) {
  for (int m = 0; m <= 30; ++m) {
    for (double x : {0.3, 1.7, 4.4}) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      EXPECT_EQ(hermite_eval(m, -x), sign * hermite_eval(m, x));
    }
  }
}

TEST(Hermite, ScaledEvaluationBeyondDoubleRange) {
  const ScaledReal h = hermite_eval_scaled(1000, 3.0);
  EXPECT_EQ(h.sign(), -1);
  EXPECT_NEAR(h.log2_abs(), oracle::frozen::hermite_1000_at_3_log2, 1e-8);
  EXPECT_TRUE(std::isinf(hermite_eval(1000, 3.0)));
  EXPECT_LT(hermite_eval(1000, 3.0), 0.0);
}

TEST(Hermite, ScaledAgreesWithPlainInRange) {
  EXPECT_LT(rel_err(hermite_eval_scaled(200, 0.7).to_double(), oracle::frozen::hermite_200_at_0_7), 1e-11);
  EXPECT_LT(rel_err(hermite_eval(200, 0.7), oracle::frozen::hermite_200_at_0_7), 1e-11);
}

TEST(Hermite, RatioMatchesQuotient) {
  for (int m : {1, 5, 30}) {
    EXPECT_NEAR(hermite_ratio(m, 1.1), hermite_eval(m, 1.1) / hermite_eval(m - 1, 1.1), 1e-12 * std::abs(hermite_ratio(m, 1.1)));
  }
  EXPECT_THROW(hermite_ratio(0, 1.0), std::domain_error);
}

TEST(Hermite, RejectsBadArguments) {
  EXPECT_THROW(hermite_eval(-1, 0.0), std::domain_error);
  EXPECT_THROW(hermite_eval(100001, 0.0), std::domain_error);
  EXPECT_THROW(hermite_eval(3, NAN), std::domain_error);
  EXPECT_THROW(hermite_zeros(201), std::domain_error);
}

TEST(HermiteZeros, KnownValuesOrderFive) {
  const auto z = hermite_zeros(5);
  ASSERT_EQ(z.size(), 5u);
  EXPECT_NEAR(z[0], -2.0201828704560856329, 1e-13);
  EXPECT_NEAR(z[1], -0.95857246461381850711, 1e-13);
  EXPECT_EQ(z[2], 0.0);
  EXPECT_NEAR(z[3], 0.95857246461381850711, 1e-13);
  EXPECT_NEAR(z[4], 2.0201828704560856329, 1e-13);
}

TEST(HermiteZeros, EmptyAndSingle) {
  EXPECT_TRUE(hermite_zeros(0).empty());
  ASSERT_EQ(hermite_zeros(1).size(), 1u);
  EXPECT_EQ(hermite_zeros(1)[0], 0.0);
}

TEST(HermiteZeros, SortedSymmetricAndVanishing) {
  for (int m : {2, 7, 20, 64, 150, 200}) {
    const auto z = hermite_zeros(m);
    ASSERT_EQ(z.size(), static_cast<std::size_t>(m));
    for (std::size_t i = 0; i + 1 < z.size(); ++i) EXPECT_LT(z[i], z[i + 1]);
    for (std::size_t i = 0; i < z.size(); ++i) EXPECT_EQ(z[i], -z[z.size() - 1 - i]);
    // Sign change across every zero.
    for (double r : z) {
      const double eps = 1e-7 * std::max(1.0, std::abs(r));
      EXPECT_NE(hermite_eval_scaled(m, r - eps).sign(), hermite_eval_scaled(m, r + eps).sign()) << "m=" << m << " r=" << r;
    }
  }
}

TEST(Gamma, KnownValues) {
  EXPECT_LT(rel_err(gamma_fn(0.5), std::sqrt(std::numbers::pi)), 1e-14);
  EXPECT_LT(rel_err(gamma_fn(3.7), 4.1706517837966040301), 1e-13);
  EXPECT_LT(rel_err(gamma_fn(25.0), 6.2044840173323943936e+23), 1e-13);
  EXPECT_EQ(gamma_fn(5.0), 24.0);
  EXPECT_NEAR(log_gamma_fn(170.5), 704.00442773420467079, 1e-10);
  EXPECT_TRUE(std::isinf(gamma_fn(180.0)));
  EXPECT_NEAR(log_gamma_fn(25.0), 54.78472939811231919, 1e-11);
}

TEST(Gamma, RejectsOutOfRange) {
  EXPECT_THROW(gamma_fn(0.0), std::domain_error);
  EXPECT_THROW(gamma_fn(-1.5), std::domain_error);
  EXPECT_THROW(gamma_fn(200.5), std::domain_error);
  EXPECT_THROW(log_gamma_fn(0.0), std::domain_error);
}

TEST(Bessel, FrozenValues) {
  EXPECT_NEAR(bessel_j(0, 1.0), 0.76519768655796655145, 1e-14);
  EXPECT_NEAR(bessel_j(1, 2.5), 0.49709410246427403801, 1e-14);
  EXPECT_NEAR(bessel_j(2.5, 7.0), -0.28343665120169919822, 1e-14);
  EXPECT_NEAR(bessel_j(10, 30.0), -0.12987689399858876819, 1e-13);
  EXPECT_NEAR(bessel_j(0, 60.0), -0.091471804089061869531, 1e-13);
  EXPECT_NEAR(bessel_j(24, 50.0), 0.013415702227558110992, 1e-13);
  EXPECT_NEAR(bessel_j(50, 100.0), -0.038698339728525383467, 1e-13);
}

TEST(Bessel, AgreesWithStandardLibrary) {
  for (double nu : {0.0, 0.5, 1.0, 3.5, 12.0, 31.0}) {
    for (double x : {0.0, 0.2, 1.5, 9.0, 27.0, 48.0, 95.0}) {
      EXPECT_NEAR(bessel_j(nu, x), std::cyl_bessel_j(nu, x), 1e-12) << "nu=" << nu << " x=" << x;
    }
  }
}

TEST(Bessel, HalfOrderClosedForm) {
  for (double x : {0.5, 2.0, 10.0}) {
    EXPECT_NEAR(bessel_j(0.5, x), std::sqrt(2.0 / (std::numbers::pi * x)) * std::sin(x), 1e-14);
  }
}

TEST(Bessel, RejectsOutOfRange) {
  EXPECT_THROW(bessel_j(-0.5, 1.0), std::domain_error);
  EXPECT_THROW(bessel_j(51.0, 1.0), std::domain_error);
  EXPECT_THROW(bessel_j(1.0, -1.0), std::domain_error);
  EXPECT_THROW(bessel_j(1.0, 101.0), std::domain_error);
  EXPECT_THROW(bessel_first_zero(-1.0), std::domain_error);
}

TEST(BesselZero, FrozenValues) {
  namespace fz = oracle::frozen;
  EXPECT_NEAR(bessel_first_zero(0.0), fz::j0, 1e-12);
  EXPECT_NEAR(bessel_first_zero(0.5), fz::j_half, 1e-12);
  EXPECT_NEAR(bessel_first_zero(1.0), fz::j1, 1e-12);
  EXPECT_NEAR(bessel_first_zero(1.5), fz::j3_2, 1e-12);
  EXPECT_NEAR(bessel_first_zero(2.0), fz::j2, 1e-12);
  EXPECT_NEAR(bessel_first_zero(5.0), fz::j5, 1e-12);
  EXPECT_NEAR(bessel_first_zero(10.0), fz::j10, 1e-11);
  EXPECT_NEAR(bessel_first_zero(24.0), fz::j24, 1e-11);
}

TEST(BesselZero, InsideBracketAndIsFirstSignChange) {
  for (double nu = 0.5; nu <= 24.0; nu += 0.5) {
    const ZeroBracket b = bessel_zero_bracket(nu);
    const double z = bessel_first_zero(nu);
    EXPECT_LT(b.lower, z);
    EXPECT_GT(b.upper, z);
    EXPECT_NEAR(std::cyl_bessel_j(nu, z), 0.0, 1e-12);
    for (double x = 0.05 * z; x < 0.999 * z; x += 0.05 * z) EXPECT_GT(std::cyl_bessel_j(nu, x), 0.0);
  }
}

TEST(BesselZero, IncreasesWithOrder) {
  double prev = 0.0;
  for (double nu = 0.0; nu <= 50.0; nu += 0.5) {
    const double z = bessel_first_zero(nu);
    EXPECT_GT(z, prev);
    prev = z;
  }
}

}  // namespace
