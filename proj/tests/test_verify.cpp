#include <gtest/gtest.h>

#include <cmath>

#include "permconc/constants.hpp"
#include "permconc/io.hpp"
#include "permconc/verify.hpp"

using namespace permconc;

namespace {

const Trial& find_trial(const VerificationReport& r, const std::string& witness) {
  for (const auto& t : r.trials)
    if (t.witness == witness) return t;
  throw std::runtime_error("no trial " + witness);
}

VerifyOptions small_options(std::uint64_t seed = 3) {
  VerifyOptions o;
  o.seed = seed;
  o.random_pairs = 40;
  o.dual_functions = 8;
  o.lipschitz_functions = 8;
  o.random_subsets = 5;
  o.tartine_functions = 5;
  return o;
}

}  // namespace

TEST(Verify, FinalizeUsesGapAndTolerance) {
  VerificationReport r;
  r.tolerance = 1e-8;
  r.trials = {{0, "a", 1.0, 1.0, 0.0, 0.0}, {1, "b", 1.0, 1.0 - 5e-9, -5e-9, 0.0}};
  r.finalize();
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.worst_trial, 1u);
  r.trials.push_back({2, "c", 1.0, 0.9, -0.1, 0.05});
  r.finalize();
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.failures, 1u);
  r.trials.back().gap = 0.2;
  r.finalize();
  EXPECT_TRUE(r.passed);
}

TEST(Verify, TW1OnS2ClosedForm) {
  const auto inst = uniform_instance("S2", symmetric_group(2), 2);
  const auto r = verify_tw1(inst, Metric::hamming, small_options());
  EXPECT_TRUE(r.passed);
  const auto& same = find_trial(r, "mu-mu");
  EXPECT_EQ(same.lhs, 0.0);
  EXPECT_EQ(same.slack, 0.0);
  // W1(δ_id, μ) = ½·2 = 1 under d_H; c = 2, K_2 = 1.
  const auto& t = find_trial(r, "dirac-mu:0");
  EXPECT_NEAR(t.lhs, 0.5, 1e-12);
  EXPECT_NEAR(t.rhs, std::log(2.0), 1e-12);
}

TEST(Verify, TTildeForcedKernelOnS3) {
  const auto inst = uniform_instance("S3", symmetric_group(3), 2);
  const auto reports = verify_t_tilde(inst, Metric::hamming, small_options());
  ASSERT_EQ(reports.size(), 3u);
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.inequality_id;
  const auto d = group_distances(inst.group, Metric::hamming);
  for (std::size_t s = 0; s < 6; ++s) {
    double cost = 0.0;
    for (std::size_t x = 0; x < 6; ++x) cost += d(x, s) * d(x, s) / 6.0;
    const auto& t = find_trial(reports[0], "mu-dirac:" + std::to_string(s));
    EXPECT_NEAR(t.lhs, cost / 8.0, 1e-7);  // c = 2
    EXPECT_NEAR(t.rhs, 2.0 * std::log(6.0), 1e-12);
  }
}

TEST(Verify, TParenDiracPairsOnS4) {
  const auto inst = uniform_instance("S4", symmetric_group(4), 2);
  auto opt = small_options();
  opt.extremal_witnesses = false;
  const auto reports = verify_t_paren(inst, opt);
  EXPECT_EQ(reports[0].regime, "uniform-local");
  const auto d = group_distances(inst.group, Metric::hamming);
  for (std::size_t a = 0; a < 24; a += 5)
    for (std::size_t b = 0; b < 24; b += 3) {
      const auto& t = find_trial(reports[0], "dirac:" + std::to_string(a) + "," + std::to_string(b));
      EXPECT_NEAR(t.lhs, d(a, b) / 8.0, 1e-9);
      EXPECT_NEAR(t.rhs, 4.0 * std::log(24.0), 1e-9);
    }
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.inequality_id;
}

TEST(Verify, EwensUsesNormalInvariantRegime) {
  const auto inst = ewens_instance(4, 0.5);
  const auto reports = verify_t_paren(inst, small_options());
  EXPECT_EQ(reports[0].regime, "normal-invariant");
  EXPECT_EQ(reports[0].constants[0].second, 10.0);
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.inequality_id;
  const auto tw = verify_tw1(inst, Metric::hamming, small_options());
  EXPECT_EQ(tw.regime, "general");
  EXPECT_EQ(tw.constants[0].second, 3.0);  // min(2ℓ−1, n)
  EXPECT_TRUE(tw.passed);
}

TEST(Verify, HypothesisFailureIsReportedSeparately) {
  auto S3 = symmetric_group(3);
  const auto inst = make_instance("S3", S3, 2, ProductMeasure{{{0.9, 0.1}, {0.2, 0.3, 0.5}}}, "skewed");
  EXPECT_THROW(verify_t_paren(inst, small_options()), HypothesisError);
  EXPECT_THROW(verify_talagrand(inst, small_options()), HypothesisError);
  const auto all = verify_instance(inst, small_options());
  std::size_t inapplicable = 0;
  for (const auto& r : all) {
    if (!r.applicable) ++inapplicable;
    EXPECT_TRUE(r.passed) << r.inequality_id;
  }
  EXPECT_EQ(inapplicable, 2u);
}

TEST(Verify, TalagrandSingletonOnS3) {
  const auto inst = uniform_instance("S3", symmetric_group(3), 2);
  auto opt = small_options();
  opt.alpha_grid = {0.5};
  const auto reports = verify_talagrand(inst, opt);
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.inequality_id;
  // f(σ,{id}) = d_H(σ,id); exponent α/(2c²) = 1/16 with c² = 4.
  const auto d = group_distances(inst.group, Metric::hamming);
  double s = 0.0;
  for (std::size_t x = 0; x < 6; ++x) s += std::exp(d(x, 0) / 16.0) / 6.0;
  const auto& t = find_trial(reports[0], "A={0},alpha=0.5");
  EXPECT_NEAR(t.lhs, std::log(s), 1e-9);
  EXPECT_NEAR(t.rhs, std::log(6.0), 1e-12);
  const auto& whole = find_trial(reports[0], "A={0,1,2,3,4,5},alpha=0.5");
  EXPECT_NEAR(whole.lhs, 0.0, 1e-12);
  EXPECT_NEAR(whole.rhs, 0.0, 1e-12);
}

TEST(Verify, CkpAndDuals) {
  const auto reports = verify_ckp(uniform(2), "S2", small_options());
  ASSERT_EQ(reports.size(), 3u);
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.inequality_id;
  const auto& t = find_trial(reports[0], "dirac:0,0");
  EXPECT_NEAR(t.lhs, 1.0, 1e-15);
  EXPECT_NEAR(t.rhs, 2.0 * std::log(2.0), 1e-15);
  EXPECT_EQ(find_trial(reports[0], "mu-mu").lhs, 0.0);
}

TEST(Verify, HoeffdingOnS4Transposition) {
  const auto inst = uniform_instance("S4", symmetric_group(4), 2);
  auto opt = small_options();
  opt.lipschitz_functions = 50;
  const auto r = verify_hoeffding_dual(inst, Metric::transposition, opt);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.constants[1].second, 3.0);
  const auto& zero = find_trial(r, "distance:0,lambda=0");
  EXPECT_NEAR(zero.lhs, 0.0, 1e-15);
  EXPECT_EQ(zero.rhs, 0.0);
}

TEST(Verify, SliceAntipodalDiracs) {
  auto opt = small_options();
  const auto reports = verify_slice(2, 4, opt);
  ASSERT_EQ(reports.size(), 5u);
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.inequality_id;
  // Points are in decreasing lexicographic order: 1100 is first, 0011 last.
  const auto& t = find_trial(reports[2], "dirac:0,5");
  EXPECT_NEAR(t.lhs, 0.5, 1e-9);
  EXPECT_NEAR(t.rhs, 4.0 * std::log(6.0), 1e-12);
  EXPECT_EQ(reports[0].constants[0].second, 2.0);
  EXPECT_EQ(reports[3].inequality_id, "tartine");
  EXPECT_EQ(reports[3].trials.size(), 5u * 24u);
}

TEST(Verify, MultinomialPasses) {
  const auto r = verify_multinomial({2, 1, 1}, small_options());
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.carrier, "X_{2,1,1}");
}

TEST(Verify, CanaryDetectsReducedConstant) {
  const auto inst = uniform_instance("S3", symmetric_group(3), 2);
  auto opt = small_options();
  opt.c_override = c_uniform(2, Metric::hamming) - 0.5;
  const auto r = verify_tw1(inst, Metric::hamming, opt);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.failures, 0u);
}

TEST(Verify, ReportsAreDeterministicAcrossThreadCounts) {
  const auto inst = ewens_instance(3, 2.0);
  auto opt = small_options(11);
  const auto a = suite_to_json(verify_instance(inst, opt), json{{"seed", 11}}, 0).dump();
  opt.threads = 3;
  const auto b = suite_to_json(verify_instance(inst, opt), json{{"seed", 11}}, 0).dump();
  EXPECT_EQ(a, b);
  opt.seed = 12;
  const auto c = suite_to_json(verify_instance(inst, opt), json{{"seed", 11}}, 0).dump();
  EXPECT_NE(a, c);
}

TEST(Io, InfinityAndTrialSelection) {
  EXPECT_EQ(number(kInfinity), "+inf");
  EXPECT_EQ(number(-kInfinity), "-inf");
  EXPECT_EQ(parse_number(json("+inf"), "x"), kInfinity);
  VerificationReport r;
  r.trials = {{0, "a", 0.0, 1.0, 1.0, 0.0}, {1, "b", 0.0, kInfinity, kInfinity, 0.0}, {2, "c", 0.5, 0.6, 0.1, 0.0}};
  r.finalize();
  const auto j = report_to_json(r, 2);
  ASSERT_EQ(j["trials"].size(), 2u);
  EXPECT_EQ(j["trials"][0]["witness"], "c");
  EXPECT_EQ(j["trials"][1]["witness"], "a");
  EXPECT_EQ(report_to_json(r, 0)["trials"][2]["slack"], "+inf");
}

TEST(Io, SpecsNameTheOffendingField) {
  try {
    group_spec_from_json(json{{"kind", "Zn"}, {"n", 3}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "group.kind");
  }
  try {
    measure_spec_from_json(json{{"kind", "ewens"}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "measure.theta");
  }
  const auto G = symmetric_group(3);
  const auto base = build_local_base(G, 2);
  MeasureSpec bad;
  bad.kind = "product";
  bad.factors = {{0.5, 0.5}, {1.0, 0.0}};
  try {
    build_product(bad, base);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "measure.factors[1]");
  }
  try {
    measure_from_json(json{{"weights", {0.5, 0.5}}}, 6, "nu1");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "nu1.weights");
  }
  GroupSpec gs;
  gs.kind = "generators";
  gs.n = 3;
  gs.generators = {{2, 1, 3}, {1, 3, 2}};
  EXPECT_EQ(build_group(gs).order(), 6u);
  const auto round = group_spec_from_json(group_spec_to_json(gs));
  EXPECT_EQ(round.generators, gs.generators);
}
