#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twolane/mkdv.hpp"
#include "twolane/model.hpp"
#include "twolane/simulator.hpp"

namespace twolane {

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  bool operator==(const GridSpec&) const = default;
};

/// min, min + step, ... up to max (inclusive within rounding).
std::vector<double> expand(const GridSpec& grid);

struct MeasureOptions {
  double profile_time = 950.0;
  double window_start = 900.0;
  double window_end = 1000.0;

  bool operator==(const MeasureOptions&) const = default;
};

struct SolitonOptions {
  long n_min = 0;
  long n_max = 99;
  std::vector<double> times{0.0};

  bool operator==(const SolitonOptions&) const = default;
};

struct NamedParams {
  std::string name;
  ModelParams params;

  bool operator==(const NamedParams&) const = default;
};

/// Everything one CLI invocation needs.
struct RunManifest {
  ModelParams model;
  // Extra parameter sets compared by stability-map; each starts from [model].
  std::vector<NamedParams> param_sets;
  RingConfig ring;
  SimOptions sim;
  MeasureOptions measure;
  CoefficientSensitivity coefficients = CoefficientSensitivity::critical;
  GridSpec h_grid{0.0, 14.0, 0.05};
  GridSpec a_grid{0.05, 4.0, 0.05};
  SolitonOptions soliton;
  std::string output_dir = "out";

  bool operator==(const RunManifest&) const = default;
};

struct ConfigIssue {
  int line = 0;  // 0 when the problem is not tied to one line
  std::string field;
  std::string reason;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Parses the sectioned key = value format. Collects every problem it finds
/// and throws one ConfigError listing them.
RunManifest parse_config(std::string_view text);

RunManifest load_config(const std::string& path);

/// Inverse of parse_config: parse_config(serialize_config(m)) == m.
std::string serialize_config(const RunManifest& manifest);

}  // namespace twolane
