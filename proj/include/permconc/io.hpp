#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "permconc/distance.hpp"
#include "permconc/group.hpp"
#include "permconc/local_base.hpp"
#include "permconc/measure.hpp"
#include "permconc/sampling.hpp"
#include "permconc/transport.hpp"
#include "permconc/verify.hpp"

namespace permconc {

using json = nlohmann::json;

/// Malformed configuration or input file; the message starts with the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Finite values as numbers, infinities as "+inf" / "-inf", NaN as "nan".
json number(double x);
/// Inverse of number().
double parse_number(const json& j, const std::string& field);

struct GroupSpec {
  /// "Sn", "An", "product" or "generators".
  std::string kind = "Sn";
  int n = 0;
  std::vector<int> blocks;
  std::vector<std::vector<int>> generators;
  /// Locality used for the base; defaults to 3 for An and 2 otherwise.
  std::optional<int> ell;

  int base_ell() const;
};

GroupSpec group_spec_from_json(const json& j);
json group_spec_to_json(const GroupSpec& spec);
GroupTable build_group(const GroupSpec& spec);

/// n, order, ell, fingerprints, orbits, base factors and (optionally) all elements.
json group_to_json(const GroupTable& group, const LocalBase& base, bool with_elements);

struct MeasureSpec {
  /// "uniform", "ewens" or "product".
  std::string kind = "uniform";
  double theta = 1.0;
  std::vector<std::vector<double>> factors;
};

MeasureSpec measure_spec_from_json(const json& j);
json measure_spec_to_json(const MeasureSpec& spec);
ProductMeasure build_product(const MeasureSpec& spec, const LocalBase& base);
std::string measure_label(const MeasureSpec& spec);

/// {"carrier_size", "weights", optional "points"}.
json measure_to_json(const Measure& mu, const std::vector<std::vector<int>>* points = nullptr);
/// Reads {"weights": [...]} (or a bare array) and checks the carrier size.
Measure measure_from_json(const json& j, std::size_t expected_size, const std::string& field);

json cost_to_json(const CostResult& r, bool with_coupling);

/// One report; trials restricted to the `max_trials` smallest slacks (0 keeps all),
/// listed by increasing slack, ties by index.
json report_to_json(const VerificationReport& r, std::size_t max_trials);
/// {"config", "summary", "reports"}; no timestamps.
json suite_to_json(const std::vector<VerificationReport>& reports, const json& config, std::size_t max_trials);

json deviation_to_json(const DeviationReport& r);
StatisticSpec statistic_from_json(const json& j);

/// group_distances, memoized as JSON under $PERMCONC_CACHE_DIR when that variable is set.
DistanceMatrix cached_group_distances(const GroupTable& group, Metric metric);

json read_json_file(const std::string& path, const std::string& field);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace permconc
