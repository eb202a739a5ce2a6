#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "permconc/constants.hpp"
#include "permconc/dual_ops.hpp"
#include "permconc/io.hpp"
#include "permconc/points.hpp"
#include "permconc/sampling.hpp"
#include "permconc/transport.hpp"
#include "permconc/verify.hpp"

namespace py = pybind11;
using namespace permconc;

namespace {

// Specs cross the boundary as JSON text so the CLI's validation and messages apply unchanged.
struct PyGroup {
  GroupSpec spec;
  GroupTable table;
  LocalBase base;

  explicit PyGroup(const std::string& spec_json)
      : spec(group_spec_from_json(json::parse(spec_json))),
        table(build_group(spec)),
        base(build_local_base(table, spec.base_ell())) {}

  DistanceMatrix distances(const std::string& metric) const {
    auto G = table;
    G.set_ell(spec.base_ell());
    return cached_group_distances(G, parse_metric(metric));
  }
};

std::vector<std::vector<int>> images(const std::vector<Permutation>& ps) {
  std::vector<std::vector<int>> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(p.images());
  return out;
}

DistanceMatrix square(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> v;
  v.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("distance: matrix must be square");
    v.insert(v.end(), r.begin(), r.end());
  }
  return DistanceMatrix(n, std::move(v));
}

std::vector<std::vector<double>> rows_of(const DistanceMatrix& d) {
  std::vector<std::vector<double>> out(d.size(), std::vector<double>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) out[i][j] = d(i, j);
  return out;
}

std::string cost_json(const CostResult& r, bool with_coupling) { return cost_to_json(r, with_coupling).dump(); }

std::string verify_json(const std::vector<VerificationReport>& reports, std::uint64_t seed, std::size_t max_trials) {
  return suite_to_json(reports, json{{"seed", seed}}, max_trials).dump();
}

VerifyOptions options(std::uint64_t seed, std::size_t pairs, unsigned threads) {
  VerifyOptions o;
  o.seed = seed;
  o.random_pairs = pairs;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of permconc";

  py::class_<PyGroup>(m, "Group")
      .def(py::init<const std::string&>(), py::arg("spec_json"))
      .def_property_readonly("n", [](const PyGroup& g) { return g.table.n(); })
      .def_property_readonly("order", [](const PyGroup& g) { return g.table.order(); })
      .def_property_readonly("ell", [](const PyGroup& g) { return g.base.ell(); })
      .def_property_readonly("fingerprint", [](const PyGroup& g) { return g.table.fingerprint(); })
      .def_property_readonly("nontrivial_levels", [](const PyGroup& g) { return g.table.nontrivial_levels(); })
      .def("elements", [](const PyGroup& g) { return images(g.table.elements()); })
      .def("describe_json", [](const PyGroup& g) { return group_to_json(g.table, g.base, false).dump(); })
      .def("u_map", [](const PyGroup& g, const Word& w) { return u_map(g.base, w).images(); }, py::arg("word"))
      .def("u_inverse", [](const PyGroup& g, const std::vector<int>& p) { return u_inverse(g.base, Permutation(p)); },
           py::arg("perm"))
      .def("index_of", [](const PyGroup& g, const std::vector<int>& p) { return g.table.index_of(Permutation(p)); })
      .def("distances", [](const PyGroup& g, const std::string& metric) { return rows_of(g.distances(metric)); },
           py::arg("metric") = "hamming")
      .def(
          "measure",
          [](const PyGroup& g, const std::string& spec_json) {
            const auto spec = measure_spec_from_json(json::parse(spec_json));
            return pushforward_product(g.table, g.base, build_product(spec, g.base)).weights();
          },
          py::arg("spec_json"))
      .def(
          "sample",
          [](const PyGroup& g, const std::string& spec_json, std::uint64_t seed, std::size_t count, unsigned threads) {
            const auto spec = measure_spec_from_json(json::parse(spec_json));
            return images(sample(g.base, build_product(spec, g.base), Seed(seed), count, threads));
          },
          py::arg("spec_json"), py::arg("seed"), py::arg("count"), py::arg("threads") = 1)
      .def(
          "talagrand_f",
          [](const PyGroup& g, std::size_t sigma, const std::vector<std::size_t>& A) {
            const auto r = talagrand_f(group_points(g.table), sigma, A);
            return py::make_tuple(r.value, r.optimality);
          },
          py::arg("sigma"), py::arg("subset"))
      .def(
          "q_paren",
          [](const PyGroup& g, const std::vector<double>& phi, std::size_t sigma, double c) {
            const auto r = q_paren(phi, group_points(g.table), sigma, c);
            return py::make_tuple(r.value, r.gap);
          },
          py::arg("phi"), py::arg("sigma"), py::arg("c"))
      .def(
          "t2_paren",
          [](const PyGroup& g, const std::vector<double>& nu1, const std::vector<double>& nu2, bool coupling) {
            return cost_json(t2_paren(Measure(nu1), Measure(nu2), group_points(g.table)), coupling);
          },
          py::arg("nu1"), py::arg("nu2"), py::arg("with_coupling") = false)
      .def(
          "verify",
          [](const PyGroup& g, const std::string& measure_json, std::uint64_t seed, std::size_t pairs, unsigned threads,
             std::size_t max_trials) {
            const auto spec = measure_spec_from_json(json::parse(measure_json));
            auto G = g.table;
            const auto inst = make_instance("group", std::move(G), g.spec.base_ell(), build_product(spec, g.base),
                                            measure_label(spec));
            return verify_json(verify_instance(inst, options(seed, pairs, threads)), seed, max_trials);
          },
          py::arg("measure_json"), py::arg("seed"), py::arg("pairs") = 500, py::arg("threads") = 1,
          py::arg("max_trials") = 5);

  m.def("relative_entropy", [](const std::vector<double>& nu, const std::vector<double>& mu) {
    return relative_entropy(Measure(nu), Measure(mu));
  });
  m.def("total_variation", [](const std::vector<double>& mu, const std::vector<double>& nu) {
    return total_variation(Measure(mu), Measure(nu));
  });
  m.def(
      "w1",
      [](const std::vector<double>& nu1, const std::vector<double>& nu2, const std::vector<std::vector<double>>& d,
         bool coupling) { return cost_json(w1(Measure(nu1), Measure(nu2), square(d)), coupling); },
      py::arg("nu1"), py::arg("nu2"), py::arg("distances"), py::arg("with_coupling") = false);
  m.def(
      "t2_tilde",
      [](const std::vector<double>& nu1, const std::vector<double>& nu2, const std::vector<std::vector<double>>& d,
         bool coupling) { return cost_json(t2_tilde(Measure(nu1), Measure(nu2), square(d)), coupling); },
      py::arg("nu1"), py::arg("nu2"), py::arg("distances"), py::arg("with_coupling") = false);
  m.def(
      "t2_hat",
      [](const std::vector<double>& nu1, const std::vector<double>& nu2, int k, int n, bool coupling) {
        return cost_json(t2_hat(Measure(nu1), Measure(nu2), slice_points(k, n)), coupling);
      },
      py::arg("nu1"), py::arg("nu2"), py::arg("k"), py::arg("n"), py::arg("with_coupling") = false);
  m.def(
      "slice_points", [](int k, int n) {
        const auto X = slice_points(k, n);
        std::vector<std::vector<int>> out;
        for (std::size_t i = 0; i < X.size(); ++i) out.push_back(X[i]);
        return out;
      },
      py::arg("k"), py::arg("n"));
  m.def(
      "q_tilde",
      [](const std::vector<double>& phi, const std::vector<std::vector<double>>& d, std::size_t sigma, double t, double c) {
        return q_tilde(phi, square(d), sigma, t, c);
      },
      py::arg("phi"), py::arg("distances"), py::arg("sigma"), py::arg("t"), py::arg("c"));
  m.def(
      "verify_default_suite",
      [](std::uint64_t seed, std::size_t pairs, unsigned threads, std::size_t max_trials) {
        return verify_json(verify_default_suite(options(seed, pairs, threads)), seed, max_trials);
      },
      py::arg("seed"), py::arg("pairs") = 500, py::arg("threads") = 1, py::arg("max_trials") = 5);
}
