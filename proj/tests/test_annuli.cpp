#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qho/annuli.hpp"
#include "qho/constants.hpp"
#include "qho/errors.hpp"

namespace {

using namespace qho;

const double kSqrt2 = std::numbers::sqrt2;

TEST(ChooseM, Examples) {
  EXPECT_EQ(choose_M(1, 2), 1);
  EXPECT_EQ(choose_M(10000, 2), 10);
  EXPECT_EQ(choose_M(10001, 2), 11);
  EXPECT_EQ(choose_M(81, 2), 3);
  EXPECT_EQ(choose_M(82, 2), 4);
  EXPECT_EQ(choose_M(1000000, 3), 10);
  EXPECT_THROW(choose_M(0, 2), std::domain_error);
}

TEST(ChooseM, IsSmallestWithPowerAtLeastK) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t k = 1; k <= 5000; k += 37) {
      const int M = choose_M(k, n);
      EXPECT_GE(std::pow(static_cast<double>(M), 2.0 * n), static_cast<double>(k));
      if (M > 1) EXPECT_LT(std::pow(static_cast<double>(M - 1), 2.0 * n), static_cast<double>(k));
    }
  }
}

TEST(ChooseM, GrowsSlowerThanKToTheOneOverN) {
  for (std::size_t n = 1; n <= 3; ++n) {
    double prev = INFINITY;
    for (int j = 2; j <= 18; j += 2) {
      const double k = std::pow(10.0, j);
      const double r = choose_M(static_cast<std::uint64_t>(k), n) / std::pow(k, 1.0 / n);
      EXPECT_LT(r, prev);
      prev = r;
    }
    // M ~ k^{1/(2n)}, so the ratio decays like k^{-1/(2n)}.
    EXPECT_LT(prev, 1.01 * std::pow(1e18, -0.5 / n));
  }
}

TEST(BuildPartition, Examples) {
  const auto p1 = build_partition({1.0, kSqrt2}, 7.5, 1);
  EXPECT_EQ(p1.boundaries, (std::vector<double>{0.0, 7.5}));

  const auto p2 = build_partition({1.0, 1.0}, 4.0, 4);
  ASSERT_EQ(p2.boundaries.size(), 5u);
  for (int i = 0; i <= 4; ++i) EXPECT_NEAR(p2.boundaries[static_cast<std::size_t>(i)], i, 1e-15);

  const auto p3 = build_partition({1.0, 1.0, 1.0, 1.0}, 16.0, 2);
  ASSERT_EQ(p3.boundaries.size(), 3u);
  EXPECT_EQ(p3.boundaries[0], 0.0);
  EXPECT_NEAR(p3.boundaries[1], 16.0 / kSqrt2, 1e-13);
  EXPECT_EQ(p3.boundaries[2], 16.0);

  EXPECT_THROW(build_partition({1.0}, 4.0, 0), std::domain_error);
  EXPECT_THROW(build_partition({1.0}, 0.0, 3), std::domain_error);
}

TEST(BuildPartition, EqualShellVolumes) {
  for (const OscillatorConfig& c : {OscillatorConfig{1.0, kSqrt2}, OscillatorConfig{0.7, 1.9, 2.4},
                                    OscillatorConfig{1.0, 1.0, 1.0, 1.0, 1.0}}) {
    for (int M : {1, 3, 10, 57}) {
      const auto p = build_partition(c, 23.0, M);
      EXPECT_EQ(p.boundaries.front(), 0.0);
      EXPECT_EQ(p.boundaries.back(), 23.0);
      for (std::size_t i = 1; i < p.boundaries.size(); ++i) EXPECT_LT(p.boundaries[i - 1], p.boundaries[i]);
      for (int i = 1; i <= M; ++i) EXPECT_NEAR(shell_volume(c, p, i) / p.shell_volume, 1.0, 1e-10);
    }
  }
}

TEST(Classify, GroundStateCrossesTheOnlyBoundary) {
  const OscillatorConfig c{1.0, 1.0};
  const Combination comb = Combination::single(c, MultiIndex{0, 0});
  const NodalCountResult r = count_nodal_domains(comb, {default_box(comb), 64}, 1);
  const Classification cls = classify(build_partition(c, 2.0, 1), r, comb);
  ASSERT_EQ(cls.components.size(), 1u);
  EXPECT_EQ(cls.components[0].kind, ComponentClass::Kind::crosser);
  EXPECT_EQ(cls.components[0].crossed, std::vector<int>{1});
  EXPECT_EQ(cls.crosser_count, 1u);
  EXPECT_EQ(cls.resolution, 64);
}

TEST(Classify, HalfPlanesBothCross) {
  const OscillatorConfig c{1.0, 1.0};
  const Combination comb = Combination::single(c, MultiIndex{1, 0});
  const NodalCountResult r = count_nodal_domains(comb, {default_box(comb), 64}, 1);
  const Classification cls = classify(build_partition(c, 4.0, 1), r, comb);
  ASSERT_EQ(cls.components.size(), 2u);
  for (const auto& comp : cls.components) {
    EXPECT_EQ(comp.kind, ComponentClass::Kind::crosser);
    EXPECT_EQ(comp.crossed, std::vector<int>{1});
  }
}

TEST(Classify, InteriorComponentOfCircleField) {
  // 1 - 4(x^2 + y^2) at a = (1, 1): inner disk V < 1/4 is interior to shell 1
  // once v_1 exceeds 1/4 by more than a cell.
  const OscillatorConfig c{1.0, 1.0};
  const ScalarField field = [](std::span<const double> x) {
    return ScaledReal::from_double(1.0 - 4.0 * (x[0] * x[0] + x[1] * x[1]));
  };
  const GridSpec spec{{2.0, 2.0}, 128};
  NodalCountResult r = count_sign_components(field, c, spec, 1);
  ASSERT_EQ(r.count, 2u);
  // classify only reads the config from the combination.
  const Combination comb = Combination::single(c, MultiIndex{0, 0});
  const Classification cls = classify(build_partition(c, 4.0, 4), r, comb);
  EXPECT_EQ(cls.components[0].kind, ComponentClass::Kind::crosser);  // outer region spans every level
  EXPECT_EQ(cls.components[1].kind, ComponentClass::Kind::interior);
  EXPECT_EQ(cls.components[1].shell, 1);
  EXPECT_EQ(cls.interior_total(), 1u);
  EXPECT_EQ(cls.interior_counts[0], 1u);
  annotate_crossings(r, cls);
  ASSERT_EQ(r.crossing_flags.size(), 2u);
  EXPECT_EQ(r.crossing_flags[0], (std::vector<int>{1, 2, 3, 4}));
  EXPECT_TRUE(r.crossing_flags[1].empty());
}

TEST(Classify, ComponentBeyondLambdaIsFlagged) {
  // Sign change on the circle V = 9, partition level 4: outside region lies past lambda.
  const OscillatorConfig c{1.0, 1.0};
  const ScalarField field = [](std::span<const double> x) {
    return ScaledReal::from_double(9.0 - (x[0] * x[0] + x[1] * x[1]));
  };
  const NodalCountResult r = count_sign_components(field, c, {{5.0, 5.0}, 128}, 1);
  ASSERT_EQ(r.count, 2u);
  const Combination comb = Combination::single(c, MultiIndex{0, 0});
  const Classification cls = classify(build_partition(c, 4.0, 2), r, comb);
  EXPECT_TRUE(cls.components[1].beyond_lambda || cls.components[0].beyond_lambda);
  EXPECT_EQ(cls.interior_total() + cls.crosser_count, 2u);
}

TEST(Classify, PartitionsEveryComponent) {
  const OscillatorConfig c{1.0, kSqrt2};
  for (int d = 0; d <= 6; ++d) {
    for (int k0 = 0; k0 <= d; ++k0) {
      const Combination comb = Combination::single(c, MultiIndex{k0, d - k0});
      const NodalCountResult r = stabilized_count(comb, 64, 4);
      for (int M : {1, 2, 5, 9}) {
        const Classification cls = classify(build_partition(c, r.lambda_max, M), r, comb);
        EXPECT_EQ(cls.interior_total() + cls.crosser_count, r.count);
        ASSERT_EQ(cls.components.size(), r.count);
        for (const auto& comp : cls.components) {
          if (comp.kind == ComponentClass::Kind::crosser) EXPECT_FALSE(comp.crossed.empty());
          if (comp.kind == ComponentClass::Kind::interior) {
            EXPECT_TRUE(comp.crossed.empty());
            EXPECT_GE(comp.shell, 1);
            EXPECT_LE(comp.shell, M);
          }
        }
      }
    }
  }
}

TEST(Classify, RequiresLabelGrid) {
  const OscillatorConfig c{1.0, 1.0};
  const Combination comb = Combination::single(c, MultiIndex{1, 0});
  const NodalCountResult r = count_nodal_domains(comb, {default_box(comb), 32}, 1, {.keep_labels = false});
  EXPECT_THROW(classify(build_partition(c, 4.0, 2), r, comb), std::invalid_argument);
  EXPECT_THROW(classify(build_partition(c, 4.0, 2), exact_count_result(MultiIndex{1, 0}, 4.0), comb),
               std::invalid_argument);
}

TEST(CardAiBound, Examples) {
  const OscillatorConfig c{1.0, 1.0};
  const double j0 = oracle::frozen::j0;
  EXPECT_NEAR(card_Ai_bound(c, 10.0, 2, 1), 100.0 * 0.5 / (j0 * j0 * 2.0), 1e-12);
  EXPECT_NEAR(card_Ai_bound(c, 10.0, 2, 1), 4.3229, 1e-4);
  EXPECT_EQ(card_Ai_bound(c, 10.0, 2, 2), 0.0);
  EXPECT_NEAR(card_Ai_bound(c, 20.0, 5, 2) / card_Ai_bound(c, 10.0, 5, 2), 4.0, 1e-12);
  const OscillatorConfig c3{1.0, kSqrt2, 0.5};
  EXPECT_NEAR(card_Ai_bound(c3, 14.0, 7, 3) / card_Ai_bound(c3, 7.0, 7, 3), 8.0, 1e-12);
  EXPECT_THROW(card_Ai_bound(c, 10.0, 2, 0), std::domain_error);
  EXPECT_THROW(card_Ai_bound(c, 10.0, 2, 3), std::domain_error);
}

TEST(CardAiBound, EqualsVolumeOverFaberKrahnVolume) {
  // |A_i| / (minimal nodal-domain volume) reproduces the bound.
  const OscillatorConfig c{1.0, kSqrt2, 1.7};
  const double lambda = 31.0;
  const int M = 6;
  for (int i = 1; i < M; ++i) {
    const double ratio = annulus_volume(c, lambda, M) / nodal_volume_lower(c, lambda, i, M);
    EXPECT_NEAR(card_Ai_bound(c, lambda, M, i) / ratio, 1.0, 1e-12);
  }
}

TEST(RiemannSum, ConvergesToClosedForm) {
  for (int n = 2; n <= 5; ++n) {
    const double exact = pleijel_integral(n).closed_form;
    double prev = INFINITY;
    for (int M : {10, 100, 1000}) {
      const double err = std::abs(annulus_riemann_sum(n, M) - exact);
      EXPECT_LT(err, prev) << "n=" << n << " M=" << M;
      EXPECT_LE(err, 1.0 / M) << "n=" << n << " M=" << M;
      prev = err;
    }
  }
  EXPECT_NEAR(annulus_riemann_sum(2, 10), 0.45, 1e-15);
}

TEST(RiemannSum, MatchesInteriorBoundSum) {
  const OscillatorConfig c{1.0, kSqrt2};
  const double lambda = 50.0;
  const int M = 8;
  const double j = oracle::frozen::j0;
  const double scale = lambda * lambda / (j * j * c.a_product());
  EXPECT_NEAR(interior_bound_sum(c, lambda, M), scale * annulus_riemann_sum(2, M), 1e-12 * scale);
}

TEST(CrossersBound, Examples) {
  EXPECT_EQ(crossers_bound_at({1.0}, 9.0, 5), 10);
  EXPECT_EQ(crossers_bound({1.3}, 4, 7), 14);
  EXPECT_EQ(crossers_bound_at({1.0, 1.0}, 10.0, 3), 96);
  // N(8) = 10 for a = (1, 1), so k = 11 is the first index at eigenvalue 10.
  EXPECT_EQ(first_eigenpairs({1.0, 1.0}, 11).back().eigenvalue, 10.0);
  EXPECT_EQ(crossers_bound({1.0, 1.0}, 11, 3), 96);
  WideCount prev = 0;
  for (int M = 1; M <= 10; ++M) {
    const WideCount b = crossers_bound({1.0, kSqrt2}, 500, M);
    EXPECT_GT(b, prev);
    prev = b;
  }
  EXPECT_THROW(crossers_bound({1.0}, 0, 1), std::domain_error);
}

TEST(CrossersBound, DominatesGridCrossersOfProductEigenfunctions) {
  const OscillatorConfig c{1.0, kSqrt2};
  const auto spectrum = first_eigenpairs(c, 40);
  for (std::uint64_t k = 1; k <= spectrum.size(); ++k) {
    const auto& e = spectrum[k - 1];
    const Combination comb = Combination::single(c, e.index);
    const NodalCountResult r = stabilized_count(comb, 64, 4);
    const int M = choose_M(k, 2);
    const Classification cls = classify(build_partition(c, e.eigenvalue, M), r, comb);
    const WideCount bound = crossers_bound(c, k, M);
    for (auto per_boundary : cls.crossers_per_boundary) EXPECT_LE(WideCount(per_boundary), bound) << "k=" << k;
  }
}

TEST(Certificate, GroundState) {
  const OscillatorConfig c{1.0, kSqrt2};
  const auto results = exact_results(c, 1);
  const PleijelCertificate cert = pleijel_certificate(c, 1, results);
  EXPECT_EQ(cert.mu, 1u);
  EXPECT_EQ(cert.M, 1);
  EXPECT_GE(cert.total_bound, 1.0);
  EXPECT_TRUE(cert.bound_holds);
  EXPECT_FALSE(cert.classification);
}

TEST(Certificate, FiveHundredIsBelowGamma) {
  const OscillatorConfig c{1.0, kSqrt2};
  const auto results = exact_results(c, 500);
  const PleijelCertificate cert = pleijel_certificate(c, 500, results);
  EXPECT_LT(cert.mu_over_k, gamma_pleijel(2));
  EXPECT_EQ(cert.M, 5);
  EXPECT_TRUE(cert.bound_holds);
  EXPECT_EQ(cert.total_bound, cert.interior_bound + static_cast<double>(cert.crossers_bound));
  EXPECT_DOUBLE_EQ(cert.gamma, gamma_pleijel(2));
}

TEST(Certificate, InteriorSumApproachesGamma) {
  // Reference values from an independent enumeration in Python.
  struct Row {
    std::uint64_t k;
    int M;
    double lambda;
    double interior_over_k;
  };
  const Row rows[] = {{100, 4, 33.526911934581186, 0.5153902751673461},
                      {1000, 6, 106.35533905932738, 0.5762689178948283},
                      {10000, 10, 336.3553390593274, 0.6224823040810761}};
  const OscillatorConfig c{1.0, kSqrt2};
  const auto results = exact_results(c, 10000);
  const double gamma = gamma_pleijel(2);
  double prev_gap = INFINITY;
  for (const Row& row : rows) {
    const PleijelCertificate cert = pleijel_certificate(c, row.k, std::span(results).first(row.k));
    EXPECT_EQ(cert.M, row.M);
    EXPECT_NEAR(cert.eigenvalue, row.lambda, 1e-12);
    EXPECT_NEAR(cert.interior_over_k, row.interior_over_k, 1e-12);
    const double gap = std::abs(cert.interior_over_k - gamma);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  // At k = 10^4 the remaining gap is the right-endpoint Riemann factor of M = 10.
  const PleijelCertificate last = pleijel_certificate(c, 10000, results);
  const double riemann_factor = annulus_riemann_sum(2, 10) / pleijel_integral(2).closed_form;
  EXPECT_LT(std::abs(last.interior_over_k / (gamma * riemann_factor) - 1.0), 0.05);
}

TEST(Certificate, GridResultIsClassified) {
  const OscillatorConfig c{1.0, kSqrt2};
  auto results = exact_results(c, 30);
  const auto spectrum = first_eigenpairs(c, 30);
  const Combination comb = Combination::single(c, spectrum.back().index);
  results.back() = stabilized_count(comb, 64, 4);
  const PleijelCertificate cert = pleijel_certificate(c, 30, results, 3, &comb);
  EXPECT_EQ(cert.M, 3);
  ASSERT_TRUE(cert.classification);
  EXPECT_EQ(cert.classification->interior_total() + cert.classification->crosser_count, cert.mu);
  EXPECT_TRUE(cert.bound_holds);
}

TEST(Certificate, RejectsShortResultList) {
  const OscillatorConfig c{1.0, kSqrt2};
  const auto results = exact_results(c, 5);
  EXPECT_THROW(pleijel_certificate(c, 6, results), std::invalid_argument);
  EXPECT_THROW(pleijel_certificate(c, 0, results), std::domain_error);
  EXPECT_THROW(pleijel_certificate(c, 5, results, 0), std::domain_error);
}

}  // namespace
