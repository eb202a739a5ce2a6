#include "permconc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace permconc {

namespace {

constexpr std::size_t kChunk = 4096;

void check_product(const LocalBase& base, const ProductMeasure& product) {
  if (static_cast<int>(product.factors.size()) != base.n() - 1) {
    throw std::invalid_argument("sample: expected one factor per chain level");
  }
  for (int j = 2; j <= base.n(); ++j) {
    const auto& f = product.factors[static_cast<std::size_t>(j - 2)];
    if (f.size() != base.orbit(j).size()) {
      throw std::invalid_argument("sample: factor " + std::to_string(j) + " does not match orbit O_" + std::to_string(j));
    }
    Measure check(f);
  }
}

void fill_chunk(const LocalBase& base, const ProductMeasure& product, Seed seed, std::size_t chunk,
                std::vector<Permutation>& out) {
  Rng rng = Rng::stream(seed, chunk);
  const std::size_t begin = chunk * kChunk, end = std::min(out.size(), begin + kChunk);
  Word word(static_cast<std::size_t>(std::max(0, base.n() - 1)));
  for (std::size_t s = begin; s < end; ++s) {
    for (int j = 2; j <= base.n(); ++j) {
      const auto& f = product.factors[static_cast<std::size_t>(j - 2)];
      word[static_cast<std::size_t>(j - 2)] = base.orbit(j)[rng.categorical(f)];
    }
    out[s] = u_map(base, word);
  }
}

double tail_at_least(const std::vector<double>& g, const std::vector<double>& w, double level) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] >= level - 1e-12) s += w[i];
  return std::min(1.0, s);
}

double tail_at_most(const std::vector<double>& g, const std::vector<double>& w, double level) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] <= level + 1e-12) s += w[i];
  return std::min(1.0, s);
}

}  // namespace

std::vector<Permutation> sample(const LocalBase& base, const ProductMeasure& product, Seed seed, std::size_t count,
                                unsigned threads) {
  check_product(base, product);
  std::vector<Permutation> out(count);
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, chunks))));
  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) fill_chunk(base, product, seed, c, out);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t c = t; c < chunks; c += threads) fill_chunk(base, product, seed, c, out);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::vector<std::size_t> sample_indices(const GroupTable& group, const LocalBase& base, const ProductMeasure& product,
                                        Seed seed, std::size_t count, unsigned threads) {
  const auto perms = sample(base, product, seed, count, threads);
  std::vector<std::size_t> out(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) out[i] = group.index_of(perms[i]);
  return out;
}

int l_cycle_statistic(const Permutation& sigma, int l) {
  if (l < 1 || l > sigma.size()) throw std::invalid_argument("l_cycle_statistic: l must lie in [1, n]");
  return cycles_of_length(sigma, l);
}

std::vector<double> l_cycle_weights(const Permutation& sigma, int l) {
  if (l < 1 || l > sigma.size()) throw std::invalid_argument("l_cycle_weights: l must lie in [1, n]");
  std::vector<double> a(static_cast<std::size_t>(sigma.size()), 0.0);
  for (const auto& cyc : sigma.cycles())
    if (static_cast<int>(cyc.size()) == l)
      for (int k : cyc) a[static_cast<std::size_t>(k - 1)] = 1.0;
  return a;
}

std::string to_string(StatisticKind k) {
  switch (k) {
    case StatisticKind::l_cycle_count: return "l_cycle_count";
    case StatisticKind::lipschitz_convex: return "lipschitz_convex";
    case StatisticKind::sup_linear_family: return "sup_linear_family";
  }
  return "unknown";
}

StatisticKind parse_statistic(const std::string& name) {
  for (auto k : {StatisticKind::l_cycle_count, StatisticKind::lipschitz_convex, StatisticKind::sup_linear_family})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown statistic '" + name + "'");
}

void StatisticSpec::validate(int n) const {
  const auto un = static_cast<std::size_t>(n);
  switch (kind) {
    case StatisticKind::l_cycle_count:
      if (l < 1 || l > n) throw std::invalid_argument("statistic field 'l' must lie in [1, n]");
      return;
    case StatisticKind::lipschitz_convex:
      if (x.size() != un) throw std::invalid_argument("statistic field 'x' must have n entries");
      for (double v : x)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("statistic field 'x' must lie in [0,1]^n");
      if (slopes.empty() || slopes.size() != intercepts.size()) {
        throw std::invalid_argument("statistic fields 'slopes' and 'intercepts' must be nonempty and of equal length");
      }
      for (const auto& a : slopes) {
        if (a.size() != un) throw std::invalid_argument("statistic field 'slopes' rows must have n entries");
        double s = 0.0;
        for (double v : a) s += v * v;
        if (s > 1.0 + 1e-12) throw std::invalid_argument("statistic field 'slopes' rows must have norm at most 1");
      }
      return;
    case StatisticKind::sup_linear_family:
      if (family.empty()) throw std::invalid_argument("statistic field 'family' must be nonempty");
      for (const auto& a : family) {
        if (a.size() != un) throw std::invalid_argument("statistic field 'family' matrices must be n x n");
        for (const auto& row : a) {
          if (row.size() != un) throw std::invalid_argument("statistic field 'family' matrices must be n x n");
          for (double v : row)
            if (!(v >= 0.0)) throw std::invalid_argument("statistic field 'family' entries must be nonnegative");
        }
      }
      return;
  }
}

StatisticTable tabulate(const StatisticSpec& spec, const GroupTable& group) {
  const int n = group.n();
  spec.validate(n);
  const auto un = static_cast<std::size_t>(n);
  StatisticTable t;
  t.g.resize(group.order());
  t.alpha.resize(group.order());
  t.alpha_sq.resize(group.order());
  t.h.resize(group.order());
  if (spec.kind == StatisticKind::l_cycle_count) t.m_bound = spec.l;
  if (spec.kind == StatisticKind::sup_linear_family) {
    double m = 0.0;
    for (const auto& a : spec.family)
      for (const auto& row : a)
        for (double v : row) m = std::max(m, v);
    t.m_bound = m;
  }
  for (std::size_t s = 0; s < group.order(); ++s) {
    const Permutation& sigma = group.element(s);
    std::vector<double> a(un, 0.0);
    double g = 0.0, h = 0.0;
    switch (spec.kind) {
      case StatisticKind::l_cycle_count:
        g = l_cycle_statistic(sigma, spec.l);
        a = l_cycle_weights(sigma, spec.l);
        break;
      case StatisticKind::lipschitz_convex: {
        std::size_t best = 0;
        g = -kInfinity;
        for (std::size_t p = 0; p < spec.slopes.size(); ++p) {
          double v = spec.intercepts[p];
          for (std::size_t k = 0; k < un; ++k) v += spec.slopes[p][k] * spec.x[static_cast<std::size_t>(sigma(static_cast<int>(k) + 1) - 1)];
          if (v > g) {
            g = v;
            best = p;
          }
        }
        for (std::size_t k = 0; k < un; ++k) a[k] = std::abs(spec.slopes[best][k]);
        break;
      }
      case StatisticKind::sup_linear_family: {
        std::size_t best = 0;
        g = -kInfinity;
        for (std::size_t p = 0; p < spec.family.size(); ++p) {
          double v = 0.0, q = 0.0;
          for (std::size_t k = 0; k < un; ++k) {
            const double e = spec.family[p][k][static_cast<std::size_t>(sigma(static_cast<int>(k) + 1) - 1)];
            v += e;
            q += e * e;
          }
          if (v > g) {
            g = v;
            best = p;
          }
          h = std::max(h, q);
        }
        for (std::size_t k = 0; k < un; ++k) a[k] = spec.family[best][k][static_cast<std::size_t>(sigma(static_cast<int>(k) + 1) - 1)];
        break;
      }
    }
    double sq = 0.0;
    for (double v : a) sq += v * v;
    if (spec.kind != StatisticKind::sup_linear_family) h = sq;
    t.g[s] = g;
    t.alpha[s] = std::move(a);
    t.alpha_sq[s] = sq;
    t.h[s] = h;
  }
  return t;
}

double configuration_violation(const GroupTable& group, const StatisticTable& table) {
  double worst = -kInfinity;
  const int n = group.n();
  for (std::size_t t = 0; t < group.order(); ++t) {
    const Permutation& tau = group.element(t);
    for (std::size_t s = 0; s < group.order(); ++s) {
      const Permutation& sigma = group.element(s);
      double rhs = 0.0;
      for (int k = 1; k <= n; ++k)
        if (tau(k) != sigma(k)) rhs += table.alpha[t][static_cast<std::size_t>(k - 1)];
      worst = std::max(worst, table.g[t] - table.g[s] - rhs);
    }
  }
  return worst;
}

std::vector<double> linear_grid(double hi, std::size_t points) {
  std::vector<double> u(points);
  for (std::size_t i = 0; i < points; ++i) u[i] = points == 1 ? 0.0 : hi * static_cast<double>(i) / static_cast<double>(points - 1);
  return u;
}

DeviationReport run_deviation_experiment(const DeviationExperiment& exp, const GroupTable& group, const LocalBase& base,
                                         const ProductMeasure& product) {
  if (!(exp.c_squared > 0.0)) throw std::invalid_argument("deviation experiment: c_squared must be positive");
  if (exp.sample_count < 1) throw std::invalid_argument("deviation experiment: sample_count must be at least 1");
  const StatisticTable table = tabulate(exp.statistic, group);
  DeviationReport rep;
  rep.statistic = to_string(exp.statistic.kind);
  rep.c_squared = exp.c_squared;
  rep.seed = exp.seed;
  rep.m_bound = table.m_bound;
  rep.configuration_violation = configuration_violation(group, table);

  // Weights of the law used for tails: exact pushforward, or empirical frequencies.
  std::vector<double> w;
  rep.exact = group.order() <= exp.exact_cap;
  if (rep.exact) {
    w = pushforward_product(group, base, product).weights();
  } else {
    rep.samples = exp.sample_count;
    w.assign(group.order(), 0.0);
    for (std::size_t i : sample_indices(group, base, product, Seed(exp.seed), exp.sample_count))
      w[i] += 1.0 / static_cast<double>(exp.sample_count);
  }
  const std::size_t N = group.order();
  for (std::size_t s = 0; s < N; ++s) {
    rep.mean += w[s] * table.g[s];
    rep.mean_alpha_sq += w[s] * table.alpha_sq[s];
    rep.mean_h += w[s] * table.h[s];
    rep.sup_alpha_sq = std::max(rep.sup_alpha_sq, table.alpha_sq[s]);
  }
  if (!rep.exact) {
    double var = 0.0;
    for (std::size_t s = 0; s < N; ++s) var += w[s] * (table.g[s] - rep.mean) * (table.g[s] - rep.mean);
    rep.mean_stderr = std::sqrt(var / static_cast<double>(exp.sample_count));
  }
  // Lower median: the smallest level m with μ(g ≤ m) ≥ 1/2.
  {
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return table.g[a] < table.g[b]; });
    double acc = 0.0;
    for (std::size_t i : order) {
      acc += w[i];
      if (acc >= 0.5 - 1e-12) {
        rep.median = table.g[i];
        break;
      }
    }
  }

  const double c2 = exp.c_squared;
  const double c = std::sqrt(c2);
  const double sqrt_log2 = std::sqrt(std::log(2.0));
  auto gauss = [](double u, double denom) { return denom > 0.0 ? std::exp(-u * u / denom) : (u > 0.0 ? 0.0 : 1.0); };
  rep.worst_margin = kInfinity;
  double lv_excess = -kInfinity;
  auto track = [&](double bound, double emp) { rep.worst_margin = std::min(rep.worst_margin, bound - emp); };
  for (double u : exp.u_grid) {
    if (u < 0.0) throw std::invalid_argument("deviation experiment: u grid must be nonnegative");
    DeviationRow r;
    r.u = u;
    r.empirical_upper_tail = tail_at_least(table.g, w, rep.mean + u);
    r.empirical_lower_tail = tail_at_most(table.g, w, rep.mean - u);
    r.empirical_median_upper = tail_at_least(table.g, w, rep.median + u);
    r.empirical_median_lower = tail_at_most(table.g, w, rep.median - u);
    {
      double s = 0.0;
      for (std::size_t i = 0; i < N; ++i)
        if (std::abs(table.g[i] - rep.mean) >= u - 1e-12) s += w[i];
      r.empirical_two_sided = std::min(1.0, s);
    }
    r.bound_upper_sup = gauss(u, 2.0 * c2 * rep.sup_alpha_sq);
    r.bound_upper = r.bound_upper_sup;
    if (table.m_bound) {
      r.bound_upper_m = gauss(u, 2.0 * c2 * *table.m_bound * (rep.mean + u));
      r.bound_upper = std::min(r.bound_upper, *r.bound_upper_m);
    }
    if (exp.statistic.kind == StatisticKind::sup_linear_family) {
      r.bound_upper_bernstein = 2.0 * gauss(u, 2.0 * c2 * (rep.mean_h + *table.m_bound * u));
      r.bound_upper = std::min(r.bound_upper, *r.bound_upper_bernstein);
    }
    r.bound_lower = gauss(u, 2.0 * c2 * rep.mean_alpha_sq);
    // Optimizing e^{-αx²}·2^{α/(1-α)} over α ∈ (0,1) gives ½e^{-w(x)} only for x ≥ √log2;
    // below that the infimum is the trivial bound 1.
    const double s = std::sqrt(rep.sup_alpha_sq);
    const double x = s > 0.0 ? u / (std::sqrt(2.0) * c * s) : (u > 0.0 ? kInfinity : 0.0);
    r.bound_median_formula = std::isinf(x) ? 0.0 : 0.5 * std::exp(-x * (x - 2.0 * sqrt_log2));
    r.bound_median = x >= sqrt_log2 ? r.bound_median_formula : 1.0;
    if (r.bound_median_formula < std::max(r.empirical_median_upper, r.empirical_median_lower)) ++rep.median_formula_violations;
    r.bound_two_sided = 2.0 * r.bound_upper_sup;

    track(r.bound_upper_sup, r.empirical_upper_tail);
    if (r.bound_upper_m) track(*r.bound_upper_m, r.empirical_upper_tail);
    if (r.bound_upper_bernstein) track(*r.bound_upper_bernstein, r.empirical_upper_tail);
    track(r.bound_lower, r.empirical_lower_tail);
    track(r.bound_median, r.empirical_median_upper);
    track(r.bound_median, r.empirical_median_lower);
    track(r.bound_two_sided, r.empirical_two_sided);

    for (double lam : exp.lambda_grid) {
      double prob = 0.0;
      for (std::size_t i = 0; i < N; ++i)
        if (table.g[i] >= rep.mean + u + lam * c2 * table.alpha_sq[i] / 2.0 - 1e-12) prob += w[i];
      lv_excess = std::max(lv_excess, prob - std::exp(-lam * u));
    }
    rep.rows.push_back(r);
  }
  if (lv_excess > -kInfinity) {
    rep.lambda_v_excess = lv_excess;
    rep.worst_margin = std::min(rep.worst_margin, -lv_excess);
  }
  return rep;
}

std::string deviation_csv(const DeviationReport& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "u,empirical_upper_tail,bound_upper,empirical_lower_tail,bound_lower,bound_median,empirical_median_upper\n";
  for (const auto& r : report.rows) {
    os << r.u << ',' << r.empirical_upper_tail << ',' << r.bound_upper << ',' << r.empirical_lower_tail << ','
       << r.bound_lower << ',' << r.bound_median << ',' << r.empirical_median_upper << '\n';
  }
  return os.str();
}

}  // namespace permconc
