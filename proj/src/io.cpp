#include "permconc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace permconc {

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

double parse_number(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  throw ConfigError(field, "expected a number");
}

namespace {

template <class T>
T get_field(const json& j, const std::string& key, const std::string& field) {
  if (!j.contains(key)) throw ConfigError(field, "missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(field, "has the wrong type");
  }
}

}  // namespace

int GroupSpec::base_ell() const {
  if (ell) return *ell;
  return kind == "An" ? 3 : 2;
}

GroupSpec group_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("group", "expected an object");
  GroupSpec s;
  s.kind = get_field<std::string>(j, "kind", "group.kind");
  if (s.kind == "Sn" || s.kind == "An") {
    s.n = get_field<int>(j, "n", "group.n");
  } else if (s.kind == "product") {
    s.blocks = get_field<std::vector<int>>(j, "blocks", "group.blocks");
  } else if (s.kind == "generators") {
    s.n = get_field<int>(j, "n", "group.n");
    s.generators = get_field<std::vector<std::vector<int>>>(j, "generators", "group.generators");
  } else {
    throw ConfigError("group.kind", "unknown group kind '" + s.kind + "' (Sn, An, product, generators)");
  }
  if (j.contains("ell")) s.ell = get_field<int>(j, "ell", "group.ell");
  return s;
}

json group_spec_to_json(const GroupSpec& s) {
  json j{{"kind", s.kind}};
  if (s.kind == "product") {
    j["blocks"] = s.blocks;
  } else {
    j["n"] = s.n;
  }
  if (s.kind == "generators") j["generators"] = s.generators;
  if (s.ell) j["ell"] = *s.ell;
  return j;
}

GroupTable build_group(const GroupSpec& s) {
  if ((s.kind == "Sn" || s.kind == "An" || s.kind == "generators") && s.n < 1) throw ConfigError("group.n", "must be ≥ 1");
  if (s.kind == "An" && s.n < 2) throw ConfigError("group.n", "A_n needs n ≥ 2");
  if (s.ell && *s.ell < 2) throw ConfigError("group.ell", "must be ≥ 2");
  GroupTable G;
  if (s.kind == "Sn") {
    G = symmetric_group(s.n);
  } else if (s.kind == "An") {
    G = alternating_group(s.n);
  } else if (s.kind == "product") {
    if (s.blocks.empty()) throw ConfigError("group.blocks", "must be nonempty");
    for (int b : s.blocks)
      if (b < 1) throw ConfigError("group.blocks", "block sizes must be positive");
    G = symmetric_product(s.blocks);
  } else if (s.kind == "generators") {
    std::vector<Permutation> gens;
    for (std::size_t k = 0; k < s.generators.size(); ++k) {
      const std::string field = "group.generators[" + std::to_string(k) + "]";
      if (static_cast<int>(s.generators[k].size()) != s.n) throw ConfigError(field, "length differs from n");
      try {
        gens.emplace_back(s.generators[k]);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
      }
    }
    G = enumerate_group(s.n, std::move(gens));
  } else {
    throw ConfigError("group.kind", "unknown group kind '" + s.kind + "'");
  }
  if (s.ell) G.set_ell(*s.ell);
  return G;
}

json group_to_json(const GroupTable& G, const LocalBase& base, bool with_elements) {
  json j;
  j["n"] = G.n();
  j["order"] = G.order();
  j["ell"] = base.ell();
  j["is_ell_local"] = is_ell_local(G, base.ell());
  j["K_n"] = G.nontrivial_levels();
  j["group_fingerprint"] = G.fingerprint();
  j["base_fingerprint"] = base.fingerprint();
  json orbits = json::array(), factors = json::array();
  for (int jj = 2; jj <= base.n(); ++jj) {
    orbits.push_back({{"j", jj}, {"orbit", base.orbit(jj)}});
    for (int i : base.orbit(jj)) factors.push_back({{"i", i}, {"j", jj}, {"t", base.factor(i, jj).images()}});
  }
  j["orbits"] = orbits;
  j["base"] = factors;
  j["generators"] = json::array();
  for (const auto& g : G.generators()) j["generators"].push_back(g.images());
  if (with_elements) {
    j["elements"] = json::array();
    for (const auto& e : G.elements()) j["elements"].push_back(e.images());
  }
  return j;
}

MeasureSpec measure_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("measure", "expected an object");
  MeasureSpec s;
  s.kind = get_field<std::string>(j, "kind", "measure.kind");
  if (s.kind == "ewens") {
    s.theta = get_field<double>(j, "theta", "measure.theta");
  } else if (s.kind == "product") {
    s.factors = get_field<std::vector<std::vector<double>>>(j, "factors", "measure.factors");
  } else if (s.kind != "uniform") {
    throw ConfigError("measure.kind", "unknown measure kind '" + s.kind + "' (uniform, ewens, product)");
  }
  return s;
}

json measure_spec_to_json(const MeasureSpec& s) {
  json j{{"kind", s.kind}};
  if (s.kind == "ewens") j["theta"] = s.theta;
  if (s.kind == "product") j["factors"] = s.factors;
  return j;
}

ProductMeasure build_product(const MeasureSpec& s, const LocalBase& base) {
  if (s.kind == "uniform") return uniform_product(base);
  if (s.kind == "ewens") {
    if (!(s.theta > 0) || !std::isfinite(s.theta)) throw ConfigError("measure.theta", "must be positive and finite");
    try {
      return ewens_product(base, s.theta);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("measure.kind", std::string("ewens needs the symmetric group: ") + e.what());
    }
  }
  if (s.kind == "product") {
    if (s.factors.size() != static_cast<std::size_t>(std::max(0, base.n() - 1))) {
      throw ConfigError("measure.factors", "expected one factor per level j = 2..n");
    }
    for (std::size_t k = 0; k < s.factors.size(); ++k) {
      const std::string field = "measure.factors[" + std::to_string(k) + "]";
      const int jj = static_cast<int>(k) + 2;
      if (s.factors[k].size() != base.orbit(jj).size()) throw ConfigError(field, "length differs from |O_j|");
      double total = 0.0;
      for (double w : s.factors[k]) {
        if (!(w >= 0) || !std::isfinite(w)) throw ConfigError(field, "weights must be finite and nonnegative");
        total += w;
      }
      if (std::abs(total - 1.0) > 1e-12) throw ConfigError(field, "weights must sum to 1");
    }
    return ProductMeasure{s.factors};
  }
  throw ConfigError("measure.kind", "unknown measure kind '" + s.kind + "'");
}

std::string measure_label(const MeasureSpec& s) {
  if (s.kind == "ewens") {
    std::ostringstream os;
    os << "ewens(" << s.theta << ')';
    return os.str();
  }
  return s.kind;
}

json measure_to_json(const Measure& mu, const std::vector<std::vector<int>>* points) {
  json j;
  j["carrier_size"] = mu.size();
  j["weights"] = mu.weights();
  if (points) j["points"] = *points;
  return j;
}

Measure measure_from_json(const json& j, std::size_t expected_size, const std::string& field) {
  const json* w = &j;
  if (j.is_object()) {
    if (!j.contains("weights")) throw ConfigError(field + ".weights", "missing");
    w = &j.at("weights");
  }
  if (!w->is_array()) throw ConfigError(field + ".weights", "expected an array of numbers");
  std::vector<double> v;
  for (const auto& x : *w) {
    if (!x.is_number()) throw ConfigError(field + ".weights", "expected an array of numbers");
    v.push_back(x.get<double>());
  }
  if (v.size() != expected_size) {
    throw ConfigError(field + ".weights", "has " + std::to_string(v.size()) + " entries, carrier has " +
                                              std::to_string(expected_size));
  }
  try {
    return Measure(std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field + ".weights", e.what());
  }
}

json cost_to_json(const CostResult& r, bool with_coupling) {
  json j{{"value", number(r.value)},
         {"gap", number(r.gap)},
         {"iterations", r.iterations},
         {"converged", r.converged},
         {"metric", r.metric}};
  if (with_coupling) {
    json rows = json::array();
    for (std::size_t x = 0; x < r.coupling.rows; ++x) {
      json row = json::array();
      for (std::size_t y = 0; y < r.coupling.cols; ++y) row.push_back(r.coupling(x, y));
      rows.push_back(row);
    }
    j["coupling"] = rows;
  }
  return j;
}

json report_to_json(const VerificationReport& r, std::size_t max_trials) {
  json j;
  j["inequality_id"] = r.inequality_id;
  j["carrier"] = r.carrier;
  j["group_fingerprint"] = r.group_fingerprint;
  j["base_fingerprint"] = r.base_fingerprint;
  j["measure"] = r.measure;
  j["metric"] = r.metric;
  j["regime"] = r.regime;
  json consts = json::array();
  for (const auto& [k, v] : r.constants) consts.push_back({{"name", k}, {"value", number(v)}});
  j["constants"] = consts;
  j["tolerance"] = r.tolerance;
  j["applicable"] = r.applicable;
  j["passed"] = r.passed;
  j["trial_count"] = r.trials.size();
  j["failures"] = r.failures;
  j["worst_slack"] = number(r.worst_slack);
  j["worst_trial"] = r.worst_trial;
  j["min_ratio"] = number(r.min_ratio);
  if (!r.note.empty()) j["note"] = r.note;

  std::vector<const Trial*> order;
  for (const auto& t : r.trials) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](const Trial* a, const Trial* b) {
    if (a->slack != b->slack) return a->slack < b->slack;
    return a->index < b->index;
  });
  if (max_trials > 0 && order.size() > max_trials) order.resize(max_trials);
  json trials = json::array();
  for (const Trial* t : order) {
    trials.push_back({{"index", t->index},
                      {"witness", t->witness},
                      {"lhs", number(t->lhs)},
                      {"rhs", number(t->rhs)},
                      {"slack", number(t->slack)},
                      {"gap", number(t->gap)}});
  }
  j["trials"] = trials;
  return j;
}

json suite_to_json(const std::vector<VerificationReport>& reports, const json& config, std::size_t max_trials) {
  std::size_t failed = 0, inapplicable = 0, trials = 0, failing_trials = 0;
  json list = json::array();
  for (const auto& r : reports) {
    if (!r.applicable) ++inapplicable;
    if (!r.passed) ++failed;
    trials += r.trials.size();
    failing_trials += r.failures;
    list.push_back(report_to_json(r, max_trials));
  }
  json j;
  j["config"] = config;
  j["summary"] = {{"reports", reports.size()},
                  {"failed_reports", failed},
                  {"inapplicable_reports", inapplicable},
                  {"trials", trials},
                  {"failing_trials", failing_trials},
                  {"passed", failed == 0}};
  j["reports"] = list;
  return j;
}

json deviation_to_json(const DeviationReport& r) {
  json j;
  j["statistic"] = r.statistic;
  j["c_squared"] = r.c_squared;
  j["exact"] = r.exact;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["mean"] = r.mean;
  j["mean_stderr"] = r.mean_stderr;
  j["median"] = r.median;
  j["sup_alpha_sq"] = r.sup_alpha_sq;
  j["mean_alpha_sq"] = r.mean_alpha_sq;
  j["mean_h"] = r.mean_h;
  j["m_bound"] = r.m_bound ? number(*r.m_bound) : json(nullptr);
  j["configuration_violation"] = number(r.configuration_violation);
  j["lambda_v_excess"] = number(r.lambda_v_excess);
  j["median_formula_violations"] = r.median_formula_violations;
  j["worst_margin"] = number(r.worst_margin);
  j["dominated"] = r.worst_margin >= 0.0;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json x{{"u", row.u},
           {"empirical_upper_tail", row.empirical_upper_tail},
           {"empirical_lower_tail", row.empirical_lower_tail},
           {"empirical_median_upper", row.empirical_median_upper},
           {"empirical_median_lower", row.empirical_median_lower},
           {"empirical_two_sided", row.empirical_two_sided},
           {"bound_upper_sup", number(row.bound_upper_sup)},
           {"bound_upper", number(row.bound_upper)},
           {"bound_lower", number(row.bound_lower)},
           {"bound_median", number(row.bound_median)},
           {"bound_median_formula", number(row.bound_median_formula)},
           {"bound_two_sided", number(row.bound_two_sided)}};
    x["bound_upper_m"] = row.bound_upper_m ? number(*row.bound_upper_m) : json(nullptr);
    x["bound_upper_bernstein"] = row.bound_upper_bernstein ? number(*row.bound_upper_bernstein) : json(nullptr);
    rows.push_back(x);
  }
  j["rows"] = rows;
  return j;
}

StatisticSpec statistic_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("statistic", "expected an object");
  StatisticSpec s;
  try {
    s.kind = parse_statistic(get_field<std::string>(j, "kind", "statistic.kind"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("statistic.kind", e.what());
  }
  if (j.contains("l")) s.l = get_field<int>(j, "l", "statistic.l");
  if (j.contains("x")) s.x = get_field<std::vector<double>>(j, "x", "statistic.x");
  if (j.contains("slopes")) s.slopes = get_field<std::vector<std::vector<double>>>(j, "slopes", "statistic.slopes");
  if (j.contains("intercepts")) s.intercepts = get_field<std::vector<double>>(j, "intercepts", "statistic.intercepts");
  if (j.contains("family")) {
    s.family = get_field<std::vector<std::vector<std::vector<double>>>>(j, "family", "statistic.family");
  }
  return s;
}

DistanceMatrix cached_group_distances(const GroupTable& group, Metric metric) {
  const char* dir = std::getenv("PERMCONC_CACHE_DIR");
  if (!dir || !*dir) return group_distances(group, metric);
  namespace fs = std::filesystem;
  const std::string ell = group.ell() ? std::to_string(*group.ell()) : "none";
  const fs::path path = fs::path(dir) / ("distances-" + group.fingerprint() + "-" + to_string(metric) + "-l" + ell + ".json");
  std::error_code ec;
  if (fs::exists(path, ec)) {
    std::ifstream in(path);
    try {
      const auto j = json::parse(in);
      auto values = j.at("values").get<std::vector<double>>();
      if (j.at("size").get<std::size_t>() == group.order() && values.size() == group.order() * group.order()) {
        return DistanceMatrix(group.order(), std::move(values));
      }
    } catch (const json::exception&) {
      // Unreadable cache entries are recomputed and overwritten.
    }
  }
  auto d = group_distances(group, metric);
  fs::create_directories(dir, ec);
  std::ofstream out(path);
  if (out) out << json{{"size", d.size()}, {"metric", to_string(metric)}, {"values", d.values()}}.dump();
  return d;
}

json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError(field, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(field, std::string("invalid JSON in '") + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("output", "cannot write '" + path + "'");
  out << text;
}

}  // namespace permconc
