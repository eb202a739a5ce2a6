#include "permconc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "permconc/constants.hpp"
#include "permconc/dual_ops.hpp"
#include "permconc/points.hpp"
#include "permconc/rng.hpp"

namespace permconc {

void VerificationReport::finalize() {
  failures = 0;
  worst_slack = kInfinity;
  worst_trial = 0;
  min_ratio = kInfinity;
  for (const auto& t : trials) {
    if (t.slack < -(t.gap + tolerance)) ++failures;
    if (t.slack < worst_slack) {
      worst_slack = t.slack;
      worst_trial = t.index;
    }
    if (t.lhs > 1e-12 && t.rhs >= 0.0) min_ratio = std::min(min_ratio, t.rhs / t.lhs);
  }
  passed = failures == 0;
}

Instance make_instance(std::string label, GroupTable group, int ell, const ProductMeasure& product,
                       std::string measure_label) {
  auto base = build_local_base(group, ell);
  auto mu = pushforward_product(group, base, product);
  return Instance{std::move(label), std::move(group), std::move(base), product, std::move(mu), std::move(measure_label)};
}

Instance uniform_instance(std::string label, GroupTable group, int ell) {
  const auto base = build_local_base(group, ell);
  return make_instance(std::move(label), std::move(group), ell, uniform_product(base), "uniform");
}

Instance ewens_instance(int n, double theta) {
  auto G = symmetric_group(n);
  const auto base = build_local_base(G, 2);
  std::ostringstream label, m;
  label << 'S' << n;
  m << "ewens(" << theta << ')';
  return make_instance(label.str(), std::move(G), 2, ewens_product(base, theta), m.str());
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void check_instance(const Instance& inst) {
  if (inst.base.group_fingerprint() != inst.group.fingerprint()) {
    throw std::invalid_argument("instance: base was not built on this group");
  }
  if (inst.mu.size() != inst.group.order()) throw std::invalid_argument("instance: measure size differs from |G|");
}

VerificationReport start_report(const std::string& id, const Instance& inst, const std::string& metric,
                                const std::string& regime, const VerifyOptions& opt) {
  VerificationReport r;
  r.inequality_id = id;
  r.carrier = inst.label;
  r.group_fingerprint = inst.group.fingerprint();
  r.base_fingerprint = inst.base.fingerprint();
  r.measure = inst.measure_label;
  r.metric = metric;
  r.regime = regime;
  r.tolerance = opt.tolerance;
  return r;
}

/// Runs fn(i) for i < count on up to `threads` workers; results are stored by index.
std::vector<Trial> run_trials(std::size_t count, unsigned threads, const std::function<Trial(std::size_t)>& fn) {
  std::vector<Trial> out(count);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < count; i += stride) {
      out[i] = fn(i);
      out[i].index = i;
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }
  return out;
}

Trial make_trial(std::string witness, double lhs, double rhs, double gap) {
  Trial t;
  t.witness = std::move(witness);
  t.lhs = lhs;
  t.rhs = rhs;
  t.slack = std::isinf(rhs) && rhs > 0 ? kInfinity : rhs - lhs;
  t.gap = gap;
  return t;
}

double entropy_rhs(const Measure& nu1, const Measure& nu2, const Measure& mu) {
  const double h1 = relative_entropy(nu1, mu), h2 = relative_entropy(nu2, mu);
  const double s = std::sqrt(h1) + std::sqrt(h2);
  return s * s;
}

struct WitnessPair {
  std::string label;
  Measure nu1;
  Measure nu2;
};

/// Enumerates witness pairs lazily: (μ, μ), random pairs, all Dirac pairs, Dirac/μ pairs,
/// then tilts and mixtures of a Dirac with μ, each paired with μ in both orders.
class WitnessSource {
 public:
  WitnessSource(const Measure& mu, const DistanceMatrix* d, const VerifyOptions& opt) : mu_(mu), d_(d), opt_(opt) {
    const std::size_t n = mu.size();
    sizes_ = {1, opt.random_pairs, opt.dirac_pairs ? n * n : 0, 2 * n,
              opt.extremal_witnesses && d ? 2 * n * opt.tilt_lambdas.size() : 0,
              opt.extremal_witnesses ? 2 * n * opt.mixture_weights.size() : 0};
  }

  std::size_t size() const {
    std::size_t s = 0;
    for (auto v : sizes_) s += v;
    return s;
  }

  WitnessPair get(std::size_t i) const {
    const std::size_t n = mu_.size();
    std::size_t seg = 0;
    while (i >= sizes_[seg]) i -= sizes_[seg++];
    switch (seg) {
      case 0: return {"mu-mu", mu_, mu_};
      case 1: {
        auto rng = Rng::stream(Seed(opt_.seed), i);
        auto a = random_measure(rng, i % 2 == 1), b = random_measure(rng, i % 2 == 1);
        return {"random:" + std::to_string(i), std::move(a), std::move(b)};
      }
      case 2: {
        const std::size_t a = i / n, b = i % n;
        return {"dirac:" + std::to_string(a) + "," + std::to_string(b), Measure::dirac(n, a), Measure::dirac(n, b)};
      }
      case 3: {
        const std::size_t a = i / 2;
        if (i % 2 == 0) return {"dirac-mu:" + std::to_string(a), Measure::dirac(n, a), mu_};
        return {"mu-dirac:" + std::to_string(a), mu_, Measure::dirac(n, a)};
      }
      case 4: {
        const std::size_t L = opt_.tilt_lambdas.size();
        const std::size_t a = (i / 2) / L;
        const double lam = opt_.tilt_lambdas[(i / 2) % L];
        std::vector<double> w(n);
        for (std::size_t x = 0; x < n; ++x) w[x] = mu_[x] * std::exp(-lam * (*d_)(a, x));
        auto t = Measure::normalized(std::move(w));
        const std::string tag = std::to_string(a) + "," + fmt(lam);
        if (i % 2 == 0) return {"tilt-mu:" + tag, std::move(t), mu_};
        return {"mu-tilt:" + tag, mu_, std::move(t)};
      }
      default: {
        const std::size_t M = opt_.mixture_weights.size();
        const std::size_t a = (i / 2) / M;
        const double s = opt_.mixture_weights[(i / 2) % M];
        std::vector<double> w(n);
        for (std::size_t x = 0; x < n; ++x) w[x] = (1 - s) * mu_[x] + (x == a ? s : 0.0);
        auto m = Measure::normalized(std::move(w));
        const std::string tag = std::to_string(a) + "," + fmt(s);
        if (i % 2 == 0) return {"mix-mu:" + tag, std::move(m), mu_};
        return {"mu-mix:" + tag, mu_, std::move(m)};
      }
    }
  }

 private:
  /// Dirichlet(1) on the carrier, or on a random sub-support when `sparse`.
  Measure random_measure(Rng& rng, bool sparse) const {
    const std::size_t n = mu_.size();
    auto w = rng.dirichlet(n);
    if (sparse) {
      const std::size_t keep = 1 + rng.below(n);
      std::vector<std::size_t> order(n);
      for (std::size_t k = 0; k < n; ++k) order[k] = k;
      for (std::size_t k = 0; k + 1 < n; ++k) std::swap(order[k], order[k + rng.below(n - k)]);
      for (std::size_t k = keep; k < n; ++k) w[order[k]] = 0.0;
    }
    return Measure::normalized(std::move(w));
  }

  const Measure& mu_;
  const DistanceMatrix* d_;
  const VerifyOptions& opt_;
  std::vector<std::size_t> sizes_;
};

/// Test functions for the dual forms: random values, ±multiples of a distance to a point,
/// and multiples of subset indicators, at several scales.
std::vector<double> dual_function(std::size_t i, std::uint64_t seed, const DistanceMatrix& d) {
  static const double scales[] = {0.5, 1.0, 2.0, 4.0, 8.0};
  const std::size_t n = d.size();
  auto rng = Rng::stream(Seed(seed ^ 0x6475616cULL), i);
  const double s = scales[(i / 4) % 5];
  std::vector<double> phi(n);
  const std::size_t at = rng.below(n);
  switch (i % 4) {
    case 0:
      for (auto& v : phi) v = s * rng.uniform();
      break;
    case 1:
      for (std::size_t x = 0; x < n; ++x) phi[x] = s * d(at, x);
      break;
    case 2:
      for (auto& v : phi) v = rng.uniform() < 0.5 ? s : 0.0;
      break;
    default:
      for (std::size_t x = 0; x < n; ++x) phi[x] = -s * d(at, x);
      break;
  }
  return phi;
}

double log_mean_exp(const Measure& mu, const std::vector<double>& v, double scale) {
  double m = -kInfinity;
  for (std::size_t x = 0; x < v.size(); ++x)
    if (mu[x] > 0) m = std::max(m, scale * v[x]);
  double s = 0.0;
  for (std::size_t x = 0; x < v.size(); ++x)
    if (mu[x] > 0) s += mu[x] * std::exp(scale * v[x] - m);
  return m + std::log(s);
}

/// (1/α)log∫e^{αQφ}dμ + (1/(1−α))log∫e^{−(1−α)φ}dμ.
double dual_lhs(const Measure& mu, const std::vector<double>& q, const std::vector<double>& phi, double alpha) {
  return log_mean_exp(mu, q, alpha) / alpha + log_mean_exp(mu, phi, -(1 - alpha)) / (1 - alpha);
}

/// Trials of a dual inequality: one per (function, α); `op(φ, α, gap)` returns Qφ on the carrier.
std::vector<Trial> dual_trials(const Measure& mu, const DistanceMatrix& d, const VerifyOptions& opt,
                               const std::function<std::vector<double>(const std::vector<double>&, double, double&)>& op,
                               bool depends_on_alpha) {
  const std::size_t A = opt.alpha_grid.size();
  std::vector<Trial> out;
  out.reserve(opt.dual_functions * A);
  for (std::size_t f = 0; f < opt.dual_functions; ++f) {
    const auto phi = dual_function(f, opt.seed, d);
    double gap = 0.0;
    std::vector<double> q;
    for (std::size_t a = 0; a < A; ++a) {
      const double alpha = opt.alpha_grid[a];
      if (depends_on_alpha || q.empty()) q = op(phi, alpha, gap);
      out.push_back(make_trial("phi:" + std::to_string(f) + ",alpha=" + fmt(alpha), dual_lhs(mu, q, phi, alpha), 0.0, gap));
      out.back().index = out.size() - 1;
    }
  }
  return out;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

VerificationReport verify_tw1(const Instance& inst, Metric metric, const VerifyOptions& opt) {
  check_instance(inst);
  const auto regime = select_local_regime(inst.group, inst.base, inst.mu, metric);
  const double c = opt.c_override.value_or(regime.c);
  const double K = k_n(inst.group);
  const double coef = 2.0 / (c * c);
  const auto d = group_distances(inst.group, metric);
  auto r = start_report("tw1", inst, to_string(metric), regime.label, opt);
  r.constants = {{"c", c}, {"K_n", K}, {"coefficient", coef}};
  if (opt.c_override) {
    r.constants.emplace_back("c_table", regime.c);
    r.note = "c overridden";
  }
  WitnessSource src(inst.mu, &d, opt);
  r.trials = run_trials(src.size(), opt.threads, [&](std::size_t i) {
    const auto p = src.get(i);
    const auto w = w1(p.nu1, p.nu2, d, "", opt.solver);
    return make_trial(p.label, coef * w.value * w.value, K * entropy_rhs(p.nu1, p.nu2, inst.mu),
                      coef * 2.0 * w.value * w.gap);
  });
  r.finalize();
  return r;
}

std::vector<VerificationReport> verify_t_tilde(const Instance& inst, Metric metric, const VerifyOptions& opt) {
  check_instance(inst);
  const auto regime = select_local_regime(inst.group, inst.base, inst.mu, metric);
  const double c = opt.c_override.value_or(regime.c);
  const double K = k_n(inst.group);
  const double coef = 1.0 / (2.0 * c * c);
  const auto d = group_distances(inst.group, metric);
  std::vector<VerificationReport> out;

  auto r = start_report("t_tilde", inst, to_string(metric), regime.label, opt);
  r.constants = {{"c", c}, {"K_n", K}, {"coefficient", coef}};
  if (opt.c_override) r.note = "c overridden";
  WitnessSource src(inst.mu, &d, opt);
  r.trials = run_trials(src.size(), opt.threads, [&](std::size_t i) {
    const auto p = src.get(i);
    const auto t = t2_tilde(p.nu1, p.nu2, d, "", opt.solver);
    return make_trial(p.label, coef * t.value, K * entropy_rhs(p.nu1, p.nu2, inst.mu), coef * t.gap);
  });
  r.finalize();
  out.push_back(std::move(r));

  const std::size_t N = inst.group.order();
  auto dual = start_report("t_tilde_dual", inst, to_string(metric), regime.label, opt);
  dual.constants = {{"c", c}, {"t", K}};
  dual.trials = dual_trials(
      inst.mu, d, opt,
      [&](const std::vector<double>& phi, double, double& gap) {
        std::vector<double> q(N);
        for (std::size_t s = 0; s < N; ++s) q[s] = q_tilde(phi, d, s, K, c);
        gap = 0.0;
        return q;
      },
      false);
  dual.finalize();
  out.push_back(std::move(dual));

  auto improved = start_report("t_tilde_alpha_dual", inst, to_string(metric), regime.label, opt);
  improved.constants = {{"c", c}, {"t", K}};
  improved.trials = dual_trials(
      inst.mu, d, opt,
      [&](const std::vector<double>& phi, double alpha, double& gap) {
        std::vector<double> q(N);
        for (std::size_t s = 0; s < N; ++s) q[s] = q_tilde_alpha(phi, d, s, K, c, alpha);
        gap = 0.0;
        return q;
      },
      true);
  improved.finalize();
  out.push_back(std::move(improved));
  return out;
}

namespace {

SymmetricRegime require_symmetric_regime(const Instance& inst) {
  check_instance(inst);
  const auto regime = select_symmetric_regime(inst.group, inst.base, inst.mu);
  if (!regime) {
    throw HypothesisError(inst.label + " with " + inst.measure_label +
                          ": the law is not uniform on an ell-local group, and the group is not a normal subgroup "
                          "of S_n carrying an invariant law");
  }
  return *regime;
}

}  // namespace

std::vector<VerificationReport> verify_t_paren(const Instance& inst, const VerifyOptions& opt) {
  const auto regime = require_symmetric_regime(inst);
  const double c2 = regime.c_squared, c = std::sqrt(c2);
  const double coef = 1.0 / (2.0 * c2);
  const auto P = group_points(inst.group);
  const auto dH = group_distances(inst.group, Metric::hamming);
  std::vector<VerificationReport> out;

  auto r = start_report("t_paren", inst, "coordinates", regime.label, opt);
  r.constants = {{"c_squared", c2}, {"coefficient", coef}};
  WitnessSource src(inst.mu, &dH, opt);
  r.trials = run_trials(src.size(), opt.threads, [&](std::size_t i) {
    const auto p = src.get(i);
    const auto t = t2_paren(p.nu1, p.nu2, P, opt.solver);
    return make_trial(p.label, coef * t.value, entropy_rhs(p.nu1, p.nu2, inst.mu), coef * t.gap);
  });
  r.finalize();
  out.push_back(std::move(r));

  const std::size_t N = inst.group.order();
  auto dual = start_report("t_paren_dual", inst, "coordinates", regime.label, opt);
  dual.constants = {{"c_squared", c2}};
  dual.trials = dual_trials(
      inst.mu, dH, opt,
      [&](const std::vector<double>& phi, double, double& gap) {
        std::vector<double> q(N);
        gap = 0.0;
        for (std::size_t s = 0; s < N; ++s) {
          const auto res = q_paren(phi, P, s, c);
          q[s] = res.value;
          gap = std::max(gap, res.gap);
        }
        return q;
      },
      false);
  dual.finalize();
  out.push_back(std::move(dual));
  return out;
}

std::vector<VerificationReport> verify_talagrand(const Instance& inst, const VerifyOptions& opt) {
  const auto regime = require_symmetric_regime(inst);
  const double c2 = regime.c_squared;
  const auto P = group_points(inst.group);
  const std::size_t N = inst.group.order();

  // Family: every subset of size ≤ cap, G itself, then random subsets.
  std::vector<std::vector<std::size_t>> family;
  std::vector<std::size_t> comb;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!comb.empty()) family.push_back(comb);
    if (comb.size() == opt.subset_size_cap) return;
    for (std::size_t x = from; x < N; ++x) {
      comb.push_back(x);
      rec(x + 1);
      comb.pop_back();
    }
  };
  rec(0);
  family.push_back(iota_indices(N));
  for (std::size_t k = 0; k < opt.random_subsets; ++k) {
    auto rng = Rng::stream(Seed(opt.seed ^ 0x73756273ULL), k);
    std::vector<std::size_t> A;
    while (A.empty())
      for (std::size_t x = 0; x < N; ++x)
        if (rng.uniform() < 0.5) A.push_back(x);
    family.push_back(std::move(A));
  }

  struct Tab {
    std::vector<double> f;
    double gap = 0.0;
    double mass = 0.0;
  };
  std::vector<Tab> tabs(family.size());
  run_trials(family.size(), opt.threads, [&](std::size_t a) {
    auto& tab = tabs[a];
    tab.f.resize(N);
    for (std::size_t x : family[a]) tab.mass += inst.mu[x];
    for (std::size_t s = 0; s < N; ++s) {
      const auto res = talagrand_f(P, s, family[a]);
      tab.f[s] = res.value;
      tab.gap = std::max(tab.gap, std::max(0.0, -2.0 * res.optimality));
    }
    return Trial{};
  });

  auto label_of = [](const std::vector<std::size_t>& A) {
    std::string s = "A={";
    for (std::size_t k = 0; k < A.size(); ++k) s += (k ? "," : "") + std::to_string(A[k]);
    return s + "}";
  };

  std::vector<VerificationReport> out;
  auto r = start_report("talagrand", inst, "coordinates", regime.label, opt);
  r.constants = {{"c_squared", c2}, {"subset_size_cap", static_cast<double>(opt.subset_size_cap)}};
  for (std::size_t a = 0; a < family.size(); ++a) {
    const auto& tab = tabs[a];
    for (double alpha : opt.alpha_grid) {
      const double k = alpha / (2.0 * c2);
      const double rhs = tab.mass > 0 ? -(alpha / (1 - alpha)) * std::log(tab.mass) : kInfinity;
      r.trials.push_back(make_trial(label_of(family[a]) + ",alpha=" + fmt(alpha), log_mean_exp(inst.mu, tab.f, k), rhs,
                                    k * tab.gap));
      r.trials.back().index = r.trials.size() - 1;
    }
  }
  r.note = "lhs and rhs are logarithms of the two sides";
  r.finalize();
  out.push_back(std::move(r));

  auto tail = start_report("talagrand_tail", inst, "coordinates", regime.label, opt);
  tail.constants = {{"c_squared", c2}};
  for (std::size_t a = 0; a < family.size(); ++a) {
    if (family[a].size() != 1) continue;
    const auto& tab = tabs[a];
    std::vector<double> levels = tab.f;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (double alpha : opt.alpha_grid) {
      for (double t : levels) {
        double p = 0.0;
        for (std::size_t s = 0; s < N; ++s)
          if (tab.f[s] >= t) p += inst.mu[s];
        const double bound = std::exp(-alpha * t / (2.0 * c2)) / std::pow(tab.mass, alpha / (1 - alpha));
        tail.trials.push_back(make_trial(label_of(family[a]) + ",alpha=" + fmt(alpha) + ",t=" + fmt(t), p, bound, 0.0));
        tail.trials.back().index = tail.trials.size() - 1;
      }
    }
  }
  tail.finalize();
  out.push_back(std::move(tail));
  return out;
}

std::vector<VerificationReport> verify_ckp(const Measure& mu, const std::string& carrier, const VerifyOptions& opt) {
  std::vector<VerificationReport> out;
  auto base = [&](const std::string& id) {
    VerificationReport r;
    r.inequality_id = id;
    r.carrier = carrier;
    r.tolerance = opt.tolerance;
    return r;
  };
  const std::size_t N = mu.size();

  auto r = base("ckp");
  r.note = "total variation is the sum of absolute differences";
  WitnessSource src(mu, nullptr, opt);
  // Only ν1 enters; the pair source supplies random, Dirac and mixture measures.
  r.trials = run_trials(src.size(), opt.threads, [&](std::size_t i) {
    const auto p = src.get(i);
    const double tv = total_variation(p.nu1, mu);
    return make_trial(p.label, tv * tv, 2.0 * relative_entropy(p.nu1, mu), 0.0);
  });
  r.finalize();
  out.push_back(std::move(r));

  static const double cs[] = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
  auto pd = base("pinsker_dual");
  const std::size_t carriers = std::max<std::size_t>(opt.dual_functions, 1) * 4;
  for (std::size_t k = 0; k < carriers; ++k) {
    auto rng = Rng::stream(Seed(opt.seed ^ 0x70696e73ULL), k);
    auto w = rng.dirichlet(3);
    if (k % 3 == 2) w[rng.below(3)] = 0.0;  // two-point support
    const auto nu = Measure::normalized(w);
    std::vector<double> f(3);
    const double scale = 0.5 + 4.0 * rng.uniform();
    for (auto& v : f) v = scale * (rng.uniform() - 0.5);
    const double c = cs[k % 6];
    std::vector<double> rf(3);
    for (std::size_t x = 0; x < 3; ++x) rf[x] = r_c(f, c, x);
    for (double lam : opt.lambda_grid) {
      const double lhs = log_mean_exp(nu, rf, lam);
      const double rhs = lam * nu.integrate(f) + lam * lam * c * c / 8.0;
      pd.trials.push_back(make_trial("carrier:" + std::to_string(k) + ",c=" + fmt(c) + ",lambda=" + fmt(lam), lhs, rhs, 0.0));
      pd.trials.back().index = pd.trials.size() - 1;
    }
  }
  pd.note = "lhs and rhs are logarithms of the two sides";
  pd.finalize();
  out.push_back(std::move(pd));

  auto cg = base("complete_graph_dual");
  const auto ones = DistanceMatrix(N, [&] {
    std::vector<double> v(N * N, 1.0);
    for (std::size_t x = 0; x < N; ++x) v[x * N + x] = 0.0;
    return v;
  }());
  for (std::size_t k = 0; k < opt.dual_functions; ++k) {
    const auto f = dual_function(k, opt.seed, ones);
    std::vector<double> rt(N);
    for (std::size_t x = 0; x < N; ++x) rt[x] = r_tilde(f, x);
    for (double alpha : opt.alpha_grid) {
      std::vector<double> ra(N);
      for (std::size_t x = 0; x < N; ++x) ra[x] = r_tilde_alpha(f, x, alpha);
      const std::string tag = "f:" + std::to_string(k) + ",alpha=" + fmt(alpha);
      cg.trials.push_back(make_trial(tag + ",cost=c_alpha", dual_lhs(mu, ra, f, alpha), 0.0, 0.0));
      cg.trials.back().index = cg.trials.size() - 1;
      cg.trials.push_back(make_trial(tag + ",cost=quadratic", dual_lhs(mu, rt, f, alpha), 0.0, 0.0));
      cg.trials.back().index = cg.trials.size() - 1;
    }
  }
  cg.finalize();
  out.push_back(std::move(cg));
  return out;
}

VerificationReport verify_hoeffding_dual(const Instance& inst, Metric metric, const VerifyOptions& opt) {
  check_instance(inst);
  const auto regime = select_local_regime(inst.group, inst.base, inst.mu, metric);
  const double c = opt.c_override.value_or(regime.c);
  const double K = k_n(inst.group);
  const auto d = group_distances(inst.group, metric);
  const std::size_t N = inst.group.order();
  auto r = start_report("hoeffding_dual", inst, to_string(metric), regime.label, opt);
  r.constants = {{"c", c}, {"K_n", K}};
  r.note = "lhs and rhs are logarithms of the two sides";
  const std::size_t F = opt.lipschitz_functions + N;
  for (std::size_t k = 0; k < F; ++k) {
    std::vector<double> phi(N);
    std::string label;
    if (k < opt.lipschitz_functions) {
      // Smoothing any function by Q gives a 1-Lipschitz one.
      auto rng = Rng::stream(Seed(opt.seed ^ 0x686f6566ULL), k);
      const double scale = 0.5 * static_cast<double>(1 + k % 8);
      std::vector<double> psi(N);
      for (auto& v : psi) v = scale * rng.uniform();
      for (std::size_t s = 0; s < N; ++s) phi[s] = q_w1(psi, d, s);
      label = "smoothed:" + std::to_string(k);
    } else {
      const std::size_t at = k - opt.lipschitz_functions;
      for (std::size_t s = 0; s < N; ++s) phi[s] = d(at, s);
      label = "distance:" + std::to_string(at);
    }
    const double mean = inst.mu.integrate(phi);
    for (double lam : opt.lambda_grid) {
      r.trials.push_back(make_trial(label + ",lambda=" + fmt(lam), log_mean_exp(inst.mu, phi, lam),
                                    lam * mean + K * c * c * lam * lam / 8.0, 0.0));
      r.trials.back().index = r.trials.size() - 1;
    }
  }
  r.finalize();
  return r;
}

std::vector<VerificationReport> verify_slice(int k, int n, const VerifyOptions& opt) {
  if (k < 0 || k > n) throw std::invalid_argument("slice: k must lie in [0, n]");
  const auto X = slice_points(k, n);
  if (X.size() > opt.solver.carrier_cap) throw CapExceeded("slice: carrier exceeds the solver cap");
  const auto mu = uniform(X.size());
  const auto dh = half_hamming_matrix(X);
  const double C = std::min(k, n - k);
  std::ostringstream label;
  label << "X_{" << k << ',' << n - k << '}';

  auto base = [&](const std::string& id, const std::string& metric) {
    VerificationReport r;
    r.inequality_id = id;
    r.carrier = label.str();
    r.measure = "uniform";
    r.metric = metric;
    r.tolerance = opt.tolerance;
    return r;
  };
  auto a1 = base("slice_tw1", "half_hamming");
  auto a2 = base("slice_t_tilde", "half_hamming");
  auto b = base("slice_t_hat", "coordinates");
  auto chain = base("slice_chain", "half_hamming");
  a1.constants = {{"C", C}, {"coefficient", C > 0 ? 2.0 / C : kInfinity}};
  a2.constants = {{"C", C}, {"coefficient", C > 0 ? 1.0 / (2.0 * C) : kInfinity}};
  b.constants = {{"coefficient", 0.125}};
  chain.constants = {{"n_over_4", n / 4.0}};

  WitnessSource src(mu, &dh, opt);
  struct Costs {
    CostResult w, tt, th;
    double rhs = 0.0;
    std::string label;
  };
  std::vector<Costs> costs(src.size());
  run_trials(src.size(), opt.threads, [&](std::size_t i) {
    const auto p = src.get(i);
    auto& c = costs[i];
    c.w = w1(p.nu1, p.nu2, dh, "", opt.solver);
    c.tt = t2_tilde(p.nu1, p.nu2, dh, "", opt.solver);
    c.th = t2_hat(p.nu1, p.nu2, X, opt.solver);
    c.rhs = entropy_rhs(p.nu1, p.nu2, mu);
    c.label = p.label;
    return Trial{};
  });
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const auto& c = costs[i];
    // With C = 0 the slice is a single point and every cost vanishes.
    const double ca = C > 0 ? 2.0 / C : 0.0, cb = C > 0 ? 1.0 / (2.0 * C) : 0.0;
    a1.trials.push_back(make_trial(c.label, ca * c.w.value * c.w.value, c.rhs, ca * 2.0 * c.w.value * c.w.gap));
    a2.trials.push_back(make_trial(c.label, cb * c.tt.value, c.rhs, cb * c.tt.gap));
    b.trials.push_back(make_trial(c.label, 0.125 * c.th.value, c.rhs, 0.125 * c.th.gap));
    chain.trials.push_back(
        make_trial(c.label + ",w1^2<=t2tilde", c.w.value * c.w.value, c.tt.value, c.tt.gap + 2.0 * c.w.value * c.w.gap));
    chain.trials.push_back(
        make_trial(c.label + ",t2tilde<=n/4*t2hat", c.tt.value, n / 4.0 * c.th.value, c.tt.gap + n / 4.0 * c.th.gap));
  }
  for (auto* r : {&a1, &a2, &b}) {
    for (std::size_t i = 0; i < r->trials.size(); ++i) r->trials[i].index = i;
    r->finalize();
  }
  for (std::size_t i = 0; i < chain.trials.size(); ++i) chain.trials[i].index = i;
  chain.finalize();

  // Projection lemma: Q⌢(f∘P)(σ) ≥ Q̂f(P(σ)) on S_n with c² = 4.
  auto tartine = base("tartine", "coordinates");
  tartine.carrier = "S" + std::to_string(n) + "->" + label.str();
  tartine.constants = {{"c_squared", 4.0}};
  const auto G = symmetric_group(n);
  const auto GP = group_points(G);
  std::vector<std::size_t> proj(G.order());
  for (std::size_t s = 0; s < G.order(); ++s) proj[s] = X.index_of(slice_projection(G.element(s), k));
  for (std::size_t fi = 0; fi < opt.tartine_functions; ++fi) {
    auto rng = Rng::stream(Seed(opt.seed ^ 0x74617274ULL), fi);
    const double scale = 0.5 * static_cast<double>(1 + fi % 8);
    std::vector<double> f(X.size());
    for (auto& v : f) v = scale * rng.uniform();
    std::vector<QPResult> qhat(X.size());
    for (std::size_t x = 0; x < X.size(); ++x) qhat[x] = q_hat(f, X, x);
    std::vector<double> lifted(G.order());
    for (std::size_t s = 0; s < G.order(); ++s) lifted[s] = f[proj[s]];
    auto trials = run_trials(G.order(), opt.threads, [&](std::size_t s) {
      const auto qp = q_paren(lifted, GP, s, 2.0);
      const auto& qh = qhat[proj[s]];
      return make_trial("f:" + std::to_string(fi) + ",sigma=" + std::to_string(s), qh.value, qp.value, qh.gap + qp.gap);
    });
    for (auto& t : trials) {
      t.index = tartine.trials.size();
      tartine.trials.push_back(std::move(t));
    }
  }
  tartine.finalize();

  return {std::move(a1), std::move(a2), std::move(b), std::move(tartine), std::move(chain)};
}

VerificationReport verify_multinomial(const std::vector<int>& parts, const VerifyOptions& opt) {
  const auto X = multinomial_points(parts);
  if (X.size() > opt.solver.carrier_cap) throw CapExceeded("multinomial: carrier exceeds the solver cap");
  const auto mu = uniform(X.size());
  const auto dH = hamming_matrix(X);
  VerificationReport r;
  r.inequality_id = "multinomial_t_hat";
  std::string label = "X_{";
  for (std::size_t k = 0; k < parts.size(); ++k) label += (k ? "," : "") + std::to_string(parts[k]);
  r.carrier = label + "}";
  r.measure = "uniform";
  r.metric = "coordinates";
  r.tolerance = opt.tolerance;
  r.constants = {{"coefficient", 0.125}};
  WitnessSource src(mu, &dH, opt);
  r.trials = run_trials(src.size(), opt.threads, [&](std::size_t i) {
    const auto p = src.get(i);
    const auto t = t2_hat(p.nu1, p.nu2, X, opt.solver);
    return make_trial(p.label, 0.125 * t.value, entropy_rhs(p.nu1, p.nu2, mu), 0.125 * t.gap);
  });
  r.finalize();
  return r;
}

namespace {

VerificationReport inapplicable(const std::string& id, const Instance& inst, const VerifyOptions& opt, const std::string& why) {
  auto r = start_report(id, inst, "coordinates", "none", opt);
  r.applicable = false;
  r.note = why;
  return r;
}

void append(std::vector<VerificationReport>& out, std::vector<VerificationReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

}  // namespace

std::vector<VerificationReport> verify_instance(const Instance& inst, const VerifyOptions& opt) {
  std::vector<VerificationReport> out;
  for (Metric m : {Metric::hamming, Metric::transposition}) {
    out.push_back(verify_tw1(inst, m, opt));
    append(out, verify_t_tilde(inst, m, opt));
    out.push_back(verify_hoeffding_dual(inst, m, opt));
  }
  try {
    append(out, verify_t_paren(inst, opt));
  } catch (const HypothesisError& e) {
    out.push_back(inapplicable("t_paren", inst, opt, e.what()));
  }
  try {
    append(out, verify_talagrand(inst, opt));
  } catch (const HypothesisError& e) {
    out.push_back(inapplicable("talagrand", inst, opt, e.what()));
  }
  auto ckp = verify_ckp(inst.mu, inst.label, opt);
  for (auto& r : ckp) {
    r.measure = inst.measure_label;
    r.group_fingerprint = inst.group.fingerprint();
    r.base_fingerprint = inst.base.fingerprint();
  }
  append(out, std::move(ckp));
  return out;
}

std::vector<VerificationReport> verify_default_suite(const VerifyOptions& opt) {
  std::vector<Instance> instances;
  instances.push_back(uniform_instance("S3", symmetric_group(3), 2));
  instances.push_back(uniform_instance("S4", symmetric_group(4), 2));
  instances.push_back(uniform_instance("A4", alternating_group(4), 3));
  instances.push_back(ewens_instance(4, 0.5));
  instances.push_back(ewens_instance(4, 2.0));
  instances.push_back(uniform_instance("S2xS3", symmetric_product({2, 3}), 2));
  std::vector<VerificationReport> out;
  for (const auto& inst : instances) append(out, verify_instance(inst, opt));
  append(out, verify_slice(2, 4, opt));
  append(out, verify_slice(2, 5, opt));
  out.push_back(verify_multinomial({2, 1, 1}, opt));
  return out;
}

const std::vector<std::string>& inequality_ids() {
  static const std::vector<std::string> ids{"tw1",       "t_tilde", "t_paren", "talagrand", "ckp",
                                            "hoeffding", "slice",   "multinomial"};
  return ids;
}

}  // namespace permconc
