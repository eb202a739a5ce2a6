#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "permconc/constants.hpp"
#include "permconc/group.hpp"
#include "permconc/local_base.hpp"
#include "permconc/measure.hpp"
#include "permconc/sampling.hpp"

using namespace permconc;

namespace {

double chi_square_pvalue(const std::vector<double>& counts, const std::vector<double>& probs, double total) {
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = probs[i] * total;
    stat += (counts[i] - e) * (counts[i] - e) / e;
  }
  return boost::math::gamma_q(0.5 * static_cast<double>(counts.size() - 1), 0.5 * stat);
}

std::vector<double> frequencies(const std::vector<std::size_t>& idx, std::size_t size) {
  std::vector<double> c(size, 0.0);
  for (std::size_t i : idx) c[i] += 1.0;
  return c;
}

}  // namespace

TEST(Sampling, DiracFactorsAreConstant) {
  auto S4 = symmetric_group(4);
  auto base = build_local_base(S4, 2);
  ProductMeasure p{{{1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 1.0, 0.0, 0.0}}};
  const auto expected = u_map(base, {1, 3, 2});
  for (const auto& s : sample(base, p, Seed(1), 100)) EXPECT_EQ(s, expected);
}

TEST(Sampling, UniformOnS3WithinFourSigma) {
  auto S3 = symmetric_group(3);
  auto base = build_local_base(S3, 2);
  const std::size_t n = 60000;
  const auto c = frequencies(sample_indices(S3, base, uniform_product(base), Seed(2), n), 6);
  const double p = 1.0 / 6.0, sd = std::sqrt(n * p * (1 - p));
  for (double v : c) EXPECT_LE(std::abs(v - n * p), 4 * sd);
}

TEST(Sampling, EwensCycleCountsMatchExactMarginal) {
  auto S4 = symmetric_group(4);
  auto base = build_local_base(S4, 2);
  const auto mu = ewens_closed(S4, 2.0);
  std::vector<double> exact(5, 0.0);
  for (std::size_t i = 0; i < 24; ++i) exact[static_cast<std::size_t>(S4.element(i).cycle_count())] += mu[i];
  const std::size_t n = 50000;
  std::vector<double> emp(5, 0.0);
  for (const auto& s : sample(base, ewens_product(base, 2.0), Seed(3), n)) emp[static_cast<std::size_t>(s.cycle_count())] += 1;
  for (std::size_t k = 1; k <= 4; ++k) {
    const double sd = std::sqrt(n * exact[k] * (1 - exact[k]));
    EXPECT_LE(std::abs(emp[k] - n * exact[k]), 4 * sd + 1e-9) << k;
  }
}

TEST(Sampling, ChiSquareAgainstPushforward) {
  struct Case {
    GroupTable G;
    int ell;
  };
  std::vector<Case> cases{{symmetric_group(3), 2}, {alternating_group(4), 3}};
  for (auto& [G, ell] : cases) {
    auto base = build_local_base(G, ell);
    // A non-uniform product so the test sees the map, not just uniformity.
    ProductMeasure p = uniform_product(base);
    for (auto& f : p.factors) {
      if (f.size() < 2) continue;
      double s = 0.0;
      for (std::size_t k = 0; k < f.size(); ++k) s += (f[k] = 1.0 + static_cast<double>(k));
      for (auto& v : f) v /= s;
    }
    const auto mu = pushforward_product(G, base, p);
    const std::size_t n = 100000;
    const auto c = frequencies(sample_indices(G, base, p, Seed(4), n), G.order());
    EXPECT_GT(chi_square_pvalue(c, mu.weights(), n), 1e-4);
  }
}

TEST(Sampling, ReproducibleAndThreadIndependent) {
  auto S5 = symmetric_group(5);
  auto base = build_local_base(S5, 2);
  auto p = ewens_product(base, 0.7);
  const auto a = sample(base, p, Seed(9), 10000, 1);
  const auto b = sample(base, p, Seed(9), 10000, 3);
  const auto c = sample(base, p, Seed(10), 10000, 1);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Statistics, CycleCounts) {
  EXPECT_EQ(l_cycle_statistic(Permutation::identity(5), 1), 5);
  EXPECT_EQ(l_cycle_statistic(Permutation::from_cycles(4, {{1, 2}, {3, 4}}), 2), 2);
  EXPECT_THROW(l_cycle_statistic(Permutation::identity(3), 4), std::invalid_argument);
  auto S4 = symmetric_group(4);
  for (int l = 1; l <= 4; ++l) {
    StatisticSpec spec;
    spec.l = l;
    const auto t = tabulate(spec, S4);
    for (std::size_t i = 0; i < 24; ++i) EXPECT_DOUBLE_EQ(t.alpha_sq[i], l * t.g[i]);
    EXPECT_LE(configuration_violation(S4, t), 1e-12);
  }
}

TEST(Statistics, OtherConfigurationFunctions) {
  auto S4 = symmetric_group(4);
  StatisticSpec lip;
  lip.kind = StatisticKind::lipschitz_convex;
  lip.x = {0.1, 0.9, 0.4, 0.0};
  lip.slopes = {{0.5, -0.5, 0.5, 0.5}, {-0.6, 0.0, 0.8, 0.0}, {0.0, 0.0, 0.0, 0.0}};
  lip.intercepts = {0.0, 0.2, 0.1};
  auto t = tabulate(lip, S4);
  EXPECT_LE(configuration_violation(S4, t), 1e-12);
  for (double v : t.alpha_sq) EXPECT_LE(v, 1.0 + 1e-12);

  StatisticSpec fam;
  fam.kind = StatisticKind::sup_linear_family;
  fam.family.resize(2, std::vector<std::vector<double>>(4, std::vector<double>(4)));
  for (int f = 0; f < 2; ++f)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) fam.family[f][i][j] = ((i + 2 * j + 3 * f) % 5) / 4.0;
  t = tabulate(fam, S4);
  EXPECT_LE(configuration_violation(S4, t), 1e-12);
  for (std::size_t i = 0; i < 24; ++i) {
    EXPECT_LE(t.alpha_sq[i], t.h[i] + 1e-12);
    EXPECT_LE(t.alpha_sq[i], *t.m_bound * t.g[i] + 1e-12);
  }
  lip.slopes[0][0] = 2.0;
  EXPECT_THROW(lip.validate(4), std::invalid_argument);
}

TEST(Deviation, TwoCyclesOnS4AndA4) {
  auto S4 = symmetric_group(4);
  auto base = build_local_base(S4, 2);
  DeviationExperiment exp;
  exp.statistic.l = 2;
  exp.u_grid = linear_grid(3.0, 50);
  exp.c_squared = c_squared_uniform_local(2);
  auto rep = run_deviation_experiment(exp, S4, base, uniform_product(base));
  EXPECT_TRUE(rep.exact);
  EXPECT_NEAR(rep.mean, 0.5, 1e-15);  // (6 transpositions + 3 double transpositions · 2) / 24
  EXPECT_DOUBLE_EQ(rep.rows[0].bound_upper, 1.0);
  EXPECT_GE(rep.worst_margin, 0.0);
  EXPECT_LE(rep.lambda_v_excess, 0.0);
  for (double theta : {0.5, 2.0}) {
    exp.c_squared = c_squared_normal_invariant(2);
    rep = run_deviation_experiment(exp, S4, base, ewens_product(base, theta));
    EXPECT_GE(rep.worst_margin, 0.0) << theta;
  }
  auto A4 = alternating_group(4);
  auto abase = build_local_base(A4, 3);
  exp.c_squared = c_squared_uniform_local(3);
  for (int l : {1, 2, 3}) {
    exp.statistic.l = l;
    rep = run_deviation_experiment(exp, A4, abase, uniform_product(abase));
    EXPECT_GE(rep.worst_margin, 0.0) << l;
  }
}

TEST(Deviation, CsvLayout) {
  auto S3 = symmetric_group(3);
  auto base = build_local_base(S3, 2);
  DeviationExperiment exp;
  exp.u_grid = {0.0, 1.0};
  exp.c_squared = 4.0;
  const auto csv = deviation_csv(run_deviation_experiment(exp, S3, base, uniform_product(base)));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "u,empirical_upper_tail,bound_upper,empirical_lower_tail,bound_lower,bound_median,empirical_median_upper");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}
