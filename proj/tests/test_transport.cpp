#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "permconc/distance.hpp"
#include "permconc/group.hpp"
#include "permconc/rng.hpp"
#include "permconc/transport.hpp"
#include "permconc/transport_lp.hpp"

using namespace permconc;

namespace {

Measure random_measure(Rng& rng, std::size_t n) { return Measure::normalized(rng.dirichlet(n)); }

void expect_marginals(const Coupling& c, const Measure& a, const Measure& b) {
  const auto r = c.row_marginal();
  const auto s = c.col_marginal();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(r[i], a[i], 1e-10);
  for (std::size_t j = 0; j < b.size(); ++j) EXPECT_NEAR(s[j], b[j], 1e-10);
  for (double v : c.matrix) EXPECT_GE(v, 0.0);
}

}  // namespace

TEST(TransportLP, MatchesVertexEnumeration) {
  Rng rng(Seed(11));
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 2 + trial % 4, c = 2 + (trial / 4) % 4;
    auto a = rng.dirichlet(r), b = rng.dirichlet(c);
    std::vector<double> cost(r * c);
    for (auto& v : cost) v = trial % 2 ? std::floor(rng.uniform() * 4) : rng.uniform() * 10;
    TransportSolver solver(a, b);
    const auto res = solver.solve(cost);
    const double ref = oracle::transport_by_vertices(a, b, cost);
    EXPECT_NEAR(res.primal, ref, 1e-9) << "trial " << trial;
    EXPECT_LE(res.primal - res.lower_bound, 1e-9);
  }
}

TEST(TransportLP, DegenerateUniformMarginals) {
  // Integer costs with equal masses cause many degenerate pivots.
  Rng rng(Seed(3));
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5;
    std::vector<double> a(n, 0.2), b(n, 0.2), cost(n * n);
    for (auto& v : cost) v = static_cast<double>(rng.below(3));
    TransportSolver solver(a, b);
    EXPECT_NEAR(solver.solve(cost).primal, oracle::transport_by_vertices(a, b, cost), 1e-12);
  }
}

TEST(TransportLP, WarmStartAndZeroMass) {
  std::vector<double> a{0.5, 0.0, 0.5}, b{0.25, 0.25, 0.5};
  TransportSolver solver(a, b);
  Rng rng(Seed(5));
  for (int t = 0; t < 10; ++t) {
    std::vector<double> cost(9);
    for (auto& v : cost) v = rng.uniform();
    const auto res = solver.solve(cost);
    const auto ref = oracle::transport_by_vertices({0.5, 0.5}, b, {cost[0], cost[1], cost[2], cost[6], cost[7], cost[8]});
    EXPECT_NEAR(res.primal, ref, 1e-12);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(solver.plan()[3 + j], 0.0);
  }
  EXPECT_THROW(TransportSolver({0.5, 0.5}, {1.0, 0.5}), std::invalid_argument);
}

TEST(W1, ClosedFormCases) {
  auto S3 = symmetric_group(3);
  auto D = group_distances(S3, Metric::hamming);
  const auto mu = uniform(6);
  EXPECT_NEAR(w1(Measure::dirac(6, 0), mu, D).value, 2.0, 1e-12);
  EXPECT_NEAR(w1(mu, mu, D).value, 0.0, 1e-12);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) EXPECT_NEAR(w1(Measure::dirac(6, a), Measure::dirac(6, b), D).value, D(a, b), 1e-12);
}

TEST(W1, SymmetricAndMarginalFeasibleOnS4) {
  auto S4 = symmetric_group(4);
  Rng rng(Seed(21));
  for (Metric m : {Metric::hamming, Metric::transposition}) {
    auto D = group_distances(S4, m);
    for (int t = 0; t < 20; ++t) {
      auto a = random_measure(rng, 24), b = random_measure(rng, 24);
      const auto ab = w1(a, b, D), ba = w1(b, a, D);
      EXPECT_NEAR(ab.value, ba.value, 1e-10);
      EXPECT_LE(ab.gap, 1e-9);
      expect_marginals(ab.coupling, a, b);
    }
  }
}

TEST(W1, RejectsOversizedCarrier) {
  SolverOptions opts;
  opts.carrier_cap = 5;
  auto D = group_distances(symmetric_group(3), Metric::hamming);
  EXPECT_THROW(w1(uniform(6), uniform(6), D, "", opts), CapExceeded);
}

TEST(WeakTransport, ForcedKernelCases) {
  auto S3 = symmetric_group(3);
  auto D = group_distances(S3, Metric::hamming);
  const auto mu = uniform(6);
  // ν1 Dirac forces p_σ = ν2.
  const auto r = t2_tilde(Measure::dirac(6, 0), mu, D);
  EXPECT_NEAR(r.value, 4.0, 1e-12);  // (mean distance 2)^2
  EXPECT_NEAR(t2_tilde(mu, mu, D).value, 0.0, 1e-12);

  auto P = group_points(S3);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b)
      EXPECT_NEAR(t2_paren(Measure::dirac(6, a), Measure::dirac(6, b), P).value, D(a, b), 1e-12);

  auto X11 = slice_points(1, 2);
  EXPECT_NEAR(t2_hat(Measure::dirac(2, 0), Measure::dirac(2, 1), X11).value, 2.0, 1e-12);
}

TEST(WeakTransport, AsymmetryWitness) {
  auto S3 = symmetric_group(3);
  auto D = group_distances(S3, Metric::hamming);
  const auto mu = uniform(6), delta = Measure::dirac(6, 0);
  const double forward = t2_tilde(delta, mu, D).value;   // (E d)^2 = 4
  const double backward = t2_tilde(mu, delta, D).value;  // E d^2 = 5
  EXPECT_NEAR(forward, 4.0, 1e-9);
  EXPECT_NEAR(backward, 5.0, 1e-9);
}

TEST(WeakTransport, GapMonotoneAndMarginalsOnS4) {
  auto S4 = symmetric_group(4);
  auto D = group_distances(S4, Metric::hamming);
  auto P = group_points(S4);
  Rng rng(Seed(8));
  SolverOptions opts;
  opts.record_trace = true;
  for (int t = 0; t < 10; ++t) {
    auto a = random_measure(rng, 24), b = random_measure(rng, 24);
    for (const auto& r : {t2_tilde(a, b, D, "hamming", opts), t2_paren(a, b, P, opts)}) {
      EXPECT_TRUE(r.converged);
      EXPECT_LE(r.gap, 1e-7);
      for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1] + 1e-13);
      expect_marginals(r.coupling, a, b);
    }
  }
}

TEST(WeakTransport, ComparisonChainOnS4) {
  auto S4 = symmetric_group(4);
  auto D = group_distances(S4, Metric::hamming);
  auto P = group_points(S4);
  Rng rng(Seed(99));
  for (int t = 0; t < 200; ++t) {
    auto a = random_measure(rng, 24), b = random_measure(rng, 24);
    const double W = w1(a, b, D).value;
    const auto Tt = t2_tilde(a, b, D);
    const auto Tp = t2_paren(a, b, P);
    EXPECT_LE(W * W, Tt.value + 1e-9);
    EXPECT_LE(Tt.value - Tt.gap, 4.0 * Tp.value + 1e-9);
  }
}

TEST(WeakTransport, SliceComparisonChain) {
  auto X = slice_points(2, 4);
  auto Dh = half_hamming_matrix(X);
  Rng rng(Seed(17));
  for (int t = 0; t < 100; ++t) {
    auto a = random_measure(rng, 6), b = random_measure(rng, 6);
    const double W = w1(a, b, Dh).value;
    const auto Tt = t2_tilde(a, b, Dh);
    const auto Th = t2_hat(a, b, X);
    EXPECT_LE(W * W, Tt.value + 1e-9);
    EXPECT_LE(Tt.value - Tt.gap, 1.0 * Th.value + 1e-9);  // n/4 = 1
  }
}

TEST(WeakTransport, MatchesGridOnTwoPoints) {
  auto S2 = symmetric_group(2);
  auto D = group_distances(S2, Metric::hamming);
  auto feats = distance_features(D);
  Rng rng(Seed(4));
  for (int t = 0; t < 20; ++t) {
    auto a = random_measure(rng, 2), b = random_measure(rng, 2);
    const auto r = t2_tilde(a, b, D);
    const double grid = oracle::coupling_grid_min(a.weights(), b.weights(), [&](const std::vector<double>& pi) {
      return barycentric_value(Coupling{2, 2, pi}, feats, 1);
    });
    EXPECT_NEAR(r.value, grid, r.gap + 5e-3);
    EXPECT_LE(r.value, grid + r.gap + 1e-9);
  }
}
