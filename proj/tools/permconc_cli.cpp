#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "permconc/constants.hpp"
#include "permconc/dual_ops.hpp"
#include "permconc/io.hpp"
#include "permconc/points.hpp"
#include "permconc/sampling.hpp"
#include "permconc/verify.hpp"

using namespace permconc;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Common {
  std::string group = "Sn";
  int n = 0;
  std::string blocks;
  std::string group_file;
  int ell = 0;
  std::string measure = "uniform";
  double theta = 1.0;
  std::string measure_file;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string output;
  bool group_given = false;
};

void add_group_options(CLI::App* app, Common& c) {
  app->add_option("--group", c.group, "Sn, An, product or file")->check(CLI::IsMember({"Sn", "An", "product", "file"}));
  app->add_option("--n", c.n, "Number of points");
  app->add_option("--blocks", c.blocks, "Block sizes of a product group, e.g. 2,3");
  app->add_option("--group-file", c.group_file, "Group spec JSON");
  app->add_option("--ell", c.ell, "Locality of the base (default 3 for An, else 2)");
}

void add_measure_options(CLI::App* app, Common& c) {
  app->add_option("--measure", c.measure, "uniform, ewens or file")->check(CLI::IsMember({"uniform", "ewens", "file"}));
  app->add_option("--theta", c.theta, "Ewens parameter");
  app->add_option("--measure-file", c.measure_file, "Measure spec JSON (product factors)");
}

void add_output(CLI::App* app, Common& c) { app->add_option("-o,--output", c.output, "Write output here instead of stdout"); }

void add_seed(CLI::App* app, Common& c) { app->add_option("--seed", c.seed, "Master seed (required)"); }

void add_threads(CLI::App* app, Common& c) { app->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u)); }

std::vector<int> parse_int_list(const std::string& s, const std::string& field) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError(field, "expected a comma-separated list of integers");
    }
  }
  if (out.empty()) throw ConfigError(field, "expected a comma-separated list of integers");
  return out;
}

GroupSpec group_spec(const Common& c) {
  GroupSpec s;
  if (c.group == "file") {
    if (c.group_file.empty()) throw ConfigError("group-file", "required with --group file");
    s = group_spec_from_json(read_json_file(c.group_file, "group-file"));
  } else if (c.group == "product") {
    s.kind = "product";
    if (c.blocks.empty()) throw ConfigError("blocks", "required with --group product");
    s.blocks = parse_int_list(c.blocks, "blocks");
  } else {
    s.kind = c.group;
    if (c.n < 1) throw ConfigError("n", "required and must be ≥ 1");
    s.n = c.n;
  }
  if (c.ell != 0) s.ell = c.ell;
  return s;
}

MeasureSpec measure_spec(const Common& c) {
  if (c.measure == "file") {
    if (c.measure_file.empty()) throw ConfigError("measure-file", "required with --measure file");
    return measure_spec_from_json(read_json_file(c.measure_file, "measure-file"));
  }
  MeasureSpec m;
  m.kind = c.measure;
  if (m.kind == "ewens") {
    if (!(c.theta > 0) || !std::isfinite(c.theta)) throw ConfigError("theta", "must be positive and finite");
    m.theta = c.theta;
  }
  return m;
}

std::string group_label(const GroupSpec& s) {
  if (s.kind == "product") {
    std::string l;
    for (std::size_t k = 0; k < s.blocks.size(); ++k) l += (k ? "x" : "") + ("S" + std::to_string(s.blocks[k]));
    return l;
  }
  if (s.kind == "Sn") return "S" + std::to_string(s.n);
  if (s.kind == "An") return "A" + std::to_string(s.n);
  return "G(n=" + std::to_string(s.n) + ")";
}

Instance load_instance(const Common& c) {
  const auto gs = group_spec(c);
  const auto ms = measure_spec(c);
  auto G = build_group(gs);
  LocalBase base;
  try {
    base = build_local_base(G, gs.base_ell());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("ell", e.what());
  }
  return make_instance(group_label(gs), std::move(G), gs.base_ell(), build_product(ms, base), measure_label(ms));
}

std::uint64_t require_seed(const Common& c) {
  if (!c.seed) throw ConfigError("seed", "required for stochastic commands");
  return *c.seed;
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
  } else {
    write_text_file(c.output, text);
  }
}

void emit_json(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

std::vector<std::vector<int>> element_images(const GroupTable& G) {
  std::vector<std::vector<int>> out;
  for (const auto& e : G.elements()) out.push_back(e.images());
  return out;
}

/// Parses "id;2,1,3;..." into ordinals.
std::vector<std::size_t> parse_set(const GroupTable& G, const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok == "id") {
      out.push_back(G.index_of(Permutation::identity(G.n())));
      continue;
    }
    const auto images = parse_int_list(tok, "set");
    const auto idx = G.find(images);
    if (!idx) throw ConfigError("set", "'" + tok + "' is not an element of the group");
    out.push_back(*idx);
  }
  if (out.empty()) throw ConfigError("set", "must name at least one element");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Metric metric_option(const std::string& name) {
  try {
    return parse_metric(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("metric", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permconc: transport-entropy inequalities on permutation groups"};
  app.require_subcommand(1);
  Common c;
  std::function<int()> action;

  // group
  auto* group = app.add_subcommand("group", "Build or inspect a permutation group");
  group->require_subcommand(1);
  auto* group_build = group->add_subcommand("build", "Group, orbits and local base as JSON");
  bool no_elements = false;
  add_group_options(group_build, c);
  add_output(group_build, c);
  group_build->add_flag("--no-elements", no_elements, "Omit the element list");
  group_build->callback([&] {
    action = [&] {
      const auto gs = group_spec(c);
      const auto G = build_group(gs);
      const auto base = build_local_base(G, gs.base_ell());
      auto j = group_to_json(G, base, !no_elements);
      j["spec"] = group_spec_to_json(gs);
      emit_json(c, j);
      return kOk;
    };
  });
  auto* group_inspect = group->add_subcommand("inspect", "Human-readable summary");
  add_group_options(group_inspect, c);
  add_output(group_inspect, c);
  group_inspect->callback([&] {
    action = [&] {
      const auto gs = group_spec(c);
      const auto G = build_group(gs);
      const int ell = gs.base_ell();
      const auto base = build_local_base(G, ell);
      std::ostringstream os;
      os << "group: " << group_label(gs) << " on " << G.n() << " points\n";
      os << "|G|=" << G.order() << "\n";
      os << "fingerprint: " << G.fingerprint() << "\n";
      os << "K_n=" << G.nontrivial_levels() << "\n";
      const auto loc = minimal_locality(G);
      os << "minimal locality: " << (loc ? std::to_string(*loc) : std::string("none")) << "\n";
      os << "orbits:\n";
      for (int j = 2; j <= G.n(); ++j) {
        os << "  O_" << j << " = {";
        const auto& o = base.orbit(j);
        for (std::size_t k = 0; k < o.size(); ++k) os << (k ? ", " : "") << o[k];
        os << "}\n";
      }
      os << "ell-local base at ell=" << ell << " (" << (is_ell_local(G, ell) ? "" : "not ") << ell << "-local):\n";
      for (int j = 2; j <= G.n(); ++j)
        for (int i : base.orbit(j)) os << "  t_{" << i << "," << j << "} = " << base.factor(i, j).to_string() << "\n";
      emit(c, os.str());
      return kOk;
    };
  });

  // measure
  auto* measure = app.add_subcommand("measure", "Measures of the product class");
  measure->require_subcommand(1);
  std::string nu_file, nu2_file;
  auto* measure_build = measure->add_subcommand("build", "Push a product measure forward to the group");
  add_group_options(measure_build, c);
  add_measure_options(measure_build, c);
  add_output(measure_build, c);
  measure_build->callback([&] {
    action = [&] {
      const auto inst = load_instance(c);
      const auto images = element_images(inst.group);
      json j;
      j["group"] = group_spec_to_json(group_spec(c));
      j["measure_spec"] = measure_spec_to_json(measure_spec(c));
      j["group_fingerprint"] = inst.group.fingerprint();
      j["base_fingerprint"] = inst.base.fingerprint();
      j["factors"] = inst.product.factors;
      j["measure"] = measure_to_json(inst.mu, &images);
      emit_json(c, j);
      return kOk;
    };
  });
  auto* measure_entropy = measure->add_subcommand("entropy", "H(nu|mu) for nu read from a file");
  add_group_options(measure_entropy, c);
  add_measure_options(measure_entropy, c);
  add_output(measure_entropy, c);
  measure_entropy->add_option("--nu", nu_file, "Measure JSON on the group")->required();
  measure_entropy->callback([&] {
    action = [&] {
      const auto inst = load_instance(c);
      const auto nu = measure_from_json(read_json_file(nu_file, "nu"), inst.group.order(), "nu");
      emit_json(c, json{{"relative_entropy", number(relative_entropy(nu, inst.mu))}});
      return kOk;
    };
  });
  auto* measure_tv = measure->add_subcommand("tv", "Total variation (sum of absolute differences)");
  add_group_options(measure_tv, c);
  add_measure_options(measure_tv, c);
  add_output(measure_tv, c);
  measure_tv->add_option("--nu", nu_file, "Measure JSON on the group")->required();
  measure_tv->add_option("--nu2", nu2_file, "Second measure (default: the group measure)");
  measure_tv->callback([&] {
    action = [&] {
      const auto inst = load_instance(c);
      const auto nu = measure_from_json(read_json_file(nu_file, "nu"), inst.group.order(), "nu");
      const auto other =
          nu2_file.empty() ? inst.mu : measure_from_json(read_json_file(nu2_file, "nu2"), inst.group.order(), "nu2");
      emit_json(c, json{{"total_variation", total_variation(nu, other)}, {"convention", "sum of absolute differences"}});
      return kOk;
    };
  });

  // transport
  auto* transport = app.add_subcommand("transport", "Transport costs between two measures");
  transport->require_subcommand(1);
  std::string metric_name = "hamming";
  int slice_k = -1;
  std::string parts;
  bool emit_coupling = false;
  SolverOptions solver;
  auto transport_cmd = [&](const std::string& name, const std::string& help) {
    auto* sub = transport->add_subcommand(name, help);
    add_group_options(sub, c);
    add_output(sub, c);
    sub->add_option("--nu1", nu_file, "First measure JSON")->required();
    sub->add_option("--nu2", nu2_file, "Second measure JSON")->required();
    sub->add_flag("--emit-coupling", emit_coupling, "Include the optimal coupling");
    sub->add_option("--gap-target", solver.gap_target, "Certified gap target");
    sub->add_option("--max-iterations", solver.max_iterations, "Iteration cap");
    return sub;
  };
  auto* t_w1 = transport_cmd("w1", "W1 by network simplex");
  t_w1->add_option("--metric", metric_name, "hamming, transposition or half_hamming (slices)");
  t_w1->add_option("--k", slice_k, "Use the slice X_{k,n-k} instead of the group");
  auto* t_tt = transport_cmd("t2tilde", "Barycentric cost with a distance");
  t_tt->add_option("--metric", metric_name, "hamming, transposition or half_hamming (slices)");
  t_tt->add_option("--k", slice_k, "Use the slice X_{k,n-k} instead of the group");
  auto* t_tp = transport_cmd("t2paren", "Coordinatewise barycentric cost on the group");
  auto* t_th = transport_cmd("t2hat", "Coordinatewise barycentric cost on a slice or multinomial carrier");
  t_th->add_option("--k", slice_k, "Slice X_{k,n-k}");
  t_th->add_option("--parts", parts, "Multinomial block sizes, e.g. 2,1,1");

  auto run_transport = [&](const std::string& which) {
    const bool on_slice = slice_k >= 0 || !parts.empty();
    PointSet X;
    DistanceMatrix d;
    if (on_slice) {
      if (!parts.empty()) {
        X = multinomial_points(parse_int_list(parts, "parts"));
      } else {
        if (c.n < 1 || slice_k > c.n) throw ConfigError("k", "needs --n with 0 ≤ k ≤ n");
        X = slice_points(slice_k, c.n);
      }
      if (which == "w1" || which == "t2tilde") {
        const Metric m = metric_option(metric_name);
        d = m == Metric::half_hamming ? half_hamming_matrix(X) : hamming_matrix(X);
      }
    } else {
      if (which == "t2hat") throw ConfigError("k", "t2hat needs --k (with --n) or --parts");
      const auto gs = group_spec(c);
      const auto G = build_group(gs);
      X = group_points(G);
      if (which == "w1" || which == "t2tilde") d = cached_group_distances(G, metric_option(metric_name));
    }
    const auto nu1 = measure_from_json(read_json_file(nu_file, "nu1"), X.size(), "nu1");
    const auto nu2 = measure_from_json(read_json_file(nu2_file, "nu2"), X.size(), "nu2");
    CostResult r;
    if (which == "w1") {
      r = w1(nu1, nu2, d, metric_name, solver);
    } else if (which == "t2tilde") {
      r = t2_tilde(nu1, nu2, d, metric_name, solver);
    } else if (which == "t2paren") {
      r = t2_paren(nu1, nu2, X, solver);
    } else {
      r = t2_hat(nu1, nu2, X, solver);
    }
    auto j = cost_to_json(r, emit_coupling);
    j["cost"] = which;
    j["carrier_size"] = X.size();
    emit_json(c, j);
    return kOk;
  };
  t_w1->callback([&] { action = [&] { return run_transport("w1"); }; });
  t_tt->callback([&] { action = [&] { return run_transport("t2tilde"); }; });
  t_tp->callback([&] { action = [&] { return run_transport("t2paren"); }; });
  t_th->callback([&] { action = [&] { return run_transport("t2hat"); }; });

  // dual
  auto* dual = app.add_subcommand("dual", "Infimum-convolution operators");
  dual->require_subcommand(1);
  std::string op_name = "Q", phi_file, set_spec;
  InfConvSpec op_spec;
  auto* dual_eval = dual->add_subcommand("eval", "Evaluate an operator on a function of the group (or slice)");
  add_group_options(dual_eval, c);
  add_output(dual_eval, c);
  dual_eval->add_option("--operator", op_name, "Q, Q_tilde_t, Q_tilde_alpha, Q_paren, Q_j, Q_hat, R_c, R_tilde, R_tilde_alpha");
  dual_eval->add_option("--phi", phi_file, "JSON array of function values")->required();
  dual_eval->add_option("--t", op_spec.t, "t");
  dual_eval->add_option("--c", op_spec.c, "c");
  dual_eval->add_option("--alpha", op_spec.alpha, "alpha");
  dual_eval->add_option("--j", op_spec.j, "Coordinate of Q_j");
  dual_eval->add_option("--metric", metric_name, "Distance for Q, Q_tilde_t, Q_tilde_alpha");
  dual_eval->add_option("--k", slice_k, "Evaluate on the slice X_{k,n-k} (Q_hat)");
  dual_eval->callback([&] {
    action = [&] {
      try {
        op_spec.kind = parse_operator(op_name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("operator", e.what());
      }
      PointSet X;
      DistanceMatrix d;
      if (slice_k >= 0) {
        if (c.n < 1 || slice_k > c.n) throw ConfigError("k", "needs --n with 0 ≤ k ≤ n");
        X = slice_points(slice_k, c.n);
        d = half_hamming_matrix(X);
      } else {
        if (op_spec.kind == OperatorKind::Q_hat) throw ConfigError("k", "Q_hat needs a slice (--k with --n)");
        const auto G = build_group(group_spec(c));
        X = group_points(G);
        d = cached_group_distances(G, metric_option(metric_name));
      }
      try {
        op_spec.validate(X.dim());
      } catch (const std::invalid_argument& e) {
        throw ConfigError("operator", e.what());
      }
      const auto j = read_json_file(phi_file, "phi");
      const json& arr = j.is_object() && j.contains("values") ? j.at("values") : j;
      std::vector<double> phi;
      if (!arr.is_array()) throw ConfigError("phi", "expected an array of numbers");
      for (const auto& v : arr) phi.push_back(parse_number(v, "phi"));
      if (phi.size() != X.size()) throw ConfigError("phi", "has " + std::to_string(phi.size()) + " values, carrier has " + std::to_string(X.size()));
      const auto values = evaluate_operator(op_spec, phi, d, X);
      json out{{"operator", to_string(op_spec.kind)}, {"t", op_spec.t}, {"c", op_spec.c}, {"alpha", op_spec.alpha}};
      json vals = json::array();
      for (double v : values) vals.push_back(number(v));
      out["values"] = vals;
      out["points"] = X.points();
      emit_json(c, out);
      return kOk;
    };
  });
  auto* dual_tal = dual->add_subcommand("talagrand-f", "f(sigma, A) for every sigma");
  add_group_options(dual_tal, c);
  add_output(dual_tal, c);
  dual_tal->add_option("--set", set_spec, "Elements of A: 'id' or image lists, separated by ';'")->required();
  dual_tal->callback([&] {
    action = [&] {
      const auto G = build_group(group_spec(c));
      const auto A = parse_set(G, set_spec);
      const auto P = group_points(G);
      json rows = json::array();
      for (std::size_t s = 0; s < G.order(); ++s) {
        const auto r = talagrand_f(P, s, A);
        rows.push_back({{"sigma", G.element(s).images()}, {"f", r.value}, {"optimality", r.optimality}});
      }
      json a = json::array();
      for (auto x : A) a.push_back(G.element(x).images());
      emit_json(c, json{{"A", a}, {"values", rows}});
      return kOk;
    };
  });

  // sample
  auto* samp = app.add_subcommand("sample", "Sampling through the product representation");
  samp->require_subcommand(1);
  std::size_t count = 10;
  auto* draw = samp->add_subcommand("draw", "Draw permutations");
  add_group_options(draw, c);
  add_measure_options(draw, c);
  add_seed(draw, c);
  add_threads(draw, c);
  add_output(draw, c);
  draw->add_option("--count", count, "Number of draws");
  draw->callback([&] {
    action = [&] {
      const auto seed = require_seed(c);
      const auto inst = load_instance(c);
      const auto draws = sample(inst.base, inst.product, Seed(seed), count, c.threads);
      json arr = json::array();
      for (const auto& s : draws) arr.push_back(s.images());
      emit_json(c, json{{"seed", seed}, {"count", count}, {"samples", arr}});
      return kOk;
    };
  });
  auto* dev = samp->add_subcommand("deviation", "Deviation tails of a configuration function against the bounds");
  add_group_options(dev, c);
  add_measure_options(dev, c);
  add_seed(dev, c);
  add_output(dev, c);
  std::string statistic = "l_cycle_count", statistic_file, csv_path;
  int l = 2;
  double u_max = 3.0;
  std::size_t points = 50, samples = 100000;
  std::optional<double> c_squared;
  dev->add_option("--statistic", statistic, "l_cycle_count (other kinds through --statistic-file)");
  dev->add_option("--l", l, "Cycle length");
  dev->add_option("--statistic-file", statistic_file, "Statistic spec JSON");
  dev->add_option("--u-max", u_max, "Largest deviation on the grid");
  dev->add_option("--points", points, "Grid points");
  dev->add_option("--samples", samples, "Monte Carlo draws when the group is too large to enumerate");
  dev->add_option("--c-squared", c_squared, "Override c(l)^2 (default: the regime of the instance)");
  dev->add_option("--csv", csv_path, "Also write the CSV table here");
  dev->callback([&] {
    action = [&] {
      const auto seed = require_seed(c);
      const auto inst = load_instance(c);
      DeviationExperiment exp;
      if (!statistic_file.empty()) {
        exp.statistic = statistic_from_json(read_json_file(statistic_file, "statistic-file"));
      } else {
        try {
          exp.statistic.kind = parse_statistic(statistic);
        } catch (const std::invalid_argument& e) {
          throw ConfigError("statistic", e.what());
        }
        if (exp.statistic.kind != StatisticKind::l_cycle_count) throw ConfigError("statistic-file", "required for " + statistic);
        exp.statistic.l = l;
      }
      try {
        exp.statistic.validate(inst.group.n());
      } catch (const std::invalid_argument& e) {
        throw ConfigError("statistic", e.what());
      }
      if (!(u_max > 0) || points < 2) throw ConfigError("u-max", "needs u-max > 0 and at least 2 points");
      exp.u_grid = linear_grid(u_max, points);
      exp.seed = seed;
      exp.sample_count = samples;
      std::string regime = "override";
      if (c_squared) {
        exp.c_squared = *c_squared;
      } else {
        const auto r = select_symmetric_regime(inst.group, inst.base, inst.mu);
        if (!r) throw HypothesisError("c-squared: no constant regime applies to this instance; pass --c-squared");
        exp.c_squared = r->c_squared;
        regime = r->label;
      }
      const auto rep = run_deviation_experiment(exp, inst.group, inst.base, inst.product);
      auto j = deviation_to_json(rep);
      j["regime"] = regime;
      j["carrier"] = inst.label;
      j["measure"] = inst.measure_label;
      if (!csv_path.empty()) write_text_file(csv_path, deviation_csv(rep));
      emit_json(c, j);
      return rep.worst_margin >= 0.0 ? kOk : kFailed;
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Check the inequalities and report slacks");
  std::string ineq;
  std::size_t pairs = 500, max_trials = 5;
  bool all_trials = false;
  std::optional<double> c_override;
  std::string ver_metric;
  ver->add_option("inequality", ineq, "all, tw1, t_tilde, t_paren, talagrand, ckp, hoeffding, slice, multinomial")->required();
  add_group_options(ver, c);
  add_measure_options(ver, c);
  add_seed(ver, c);
  add_threads(ver, c);
  add_output(ver, c);
  ver->add_option("--pairs", pairs, "Random witness pairs per check");
  ver->add_option("--c-override", c_override, "Replace c(l) in the W1 / T~2 / Hoeffding checks");
  ver->add_option("--metric", ver_metric, "hamming or transposition (default: both)");
  ver->add_option("--k", slice_k, "Slice X_{k,n-k} for 'slice'");
  ver->add_option("--parts", parts, "Block sizes for 'multinomial'");
  ver->add_option("--max-trials", max_trials, "Trials listed per report, smallest slack first");
  ver->add_flag("--all-trials", all_trials, "List every trial");
  ver->callback([&] {
    c.group_given = ver->count("--group") > 0 || ver->count("--group-file") > 0 || ver->count("--n") > 0 ||
                    ver->count("--blocks") > 0;
    action = [&] {
      VerifyOptions opt;
      opt.seed = require_seed(c);
      opt.random_pairs = pairs;
      opt.threads = c.threads;
      opt.c_override = c_override;
      json config{{"command", "verify " + ineq}, {"seed", opt.seed}, {"pairs", pairs}};
      if (c_override) config["c_override"] = *c_override;
      std::vector<Metric> metrics{Metric::hamming, Metric::transposition};
      if (!ver_metric.empty()) {
        metrics = {metric_option(ver_metric)};
        config["metric"] = ver_metric;
      }
      std::vector<VerificationReport> reports;
      auto append = [&](std::vector<VerificationReport> more) {
        for (auto& r : more) reports.push_back(std::move(r));
      };
      const bool known = std::find(inequality_ids().begin(), inequality_ids().end(), ineq) != inequality_ids().end();
      if (ineq != "all" && !known) throw ConfigError("inequality", "unknown id '" + ineq + "'");

      if (ineq == "slice") {
        if (c.n < 1 || slice_k < 0 || slice_k > c.n) throw ConfigError("k", "slice needs --n and 0 ≤ k ≤ n");
        config["slice"] = {{"k", slice_k}, {"n", c.n}};
        append(verify_slice(slice_k, c.n, opt));
      } else if (ineq == "multinomial") {
        const auto p = parts.empty() ? std::vector<int>{2, 1, 1} : parse_int_list(parts, "parts");
        config["parts"] = p;
        reports.push_back(verify_multinomial(p, opt));
      } else if (ineq == "all" && !c.group_given) {
        config["suite"] = "default";
        reports = verify_default_suite(opt);
      } else {
        const auto inst = load_instance(c);
        config["group"] = group_spec_to_json(group_spec(c));
        config["measure"] = measure_spec_to_json(measure_spec(c));
        if (ineq == "all") {
          if (!ver_metric.empty()) throw ConfigError("metric", "'verify all' always runs both metrics");
          reports = verify_instance(inst, opt);
        } else if (ineq == "tw1") {
          for (Metric m : metrics) reports.push_back(verify_tw1(inst, m, opt));
        } else if (ineq == "t_tilde") {
          for (Metric m : metrics) append(verify_t_tilde(inst, m, opt));
        } else if (ineq == "hoeffding") {
          for (Metric m : metrics) reports.push_back(verify_hoeffding_dual(inst, m, opt));
        } else if (ineq == "t_paren") {
          append(verify_t_paren(inst, opt));
        } else if (ineq == "talagrand") {
          append(verify_talagrand(inst, opt));
        } else if (ineq == "ckp") {
          append(verify_ckp(inst.mu, inst.label, opt));
        }
      }
      const auto j = suite_to_json(reports, config, all_trials ? 0 : max_trials);
      emit_json(c, j);
      return j["summary"]["passed"].get<bool>() ? kOk : kFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "error: cap: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
