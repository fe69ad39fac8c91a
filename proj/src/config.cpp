#include "twolane/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace twolane {

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& i : issues) {
    os << "\n  ";
    if (i.line > 0) os << "line " << i.line << ": ";
    if (!i.field.empty()) os << i.field << ": ";
    os << i.reason;
  }
  return os.str();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_double(std::string_view s, double& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool to_long(std::string_view s, long& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

using ModelField = double ModelParams::*;

const std::map<std::string, ModelField, std::less<>>& model_fields() {
  static const std::map<std::string, ModelField, std::less<>> fields{
      {"alpha", &ModelParams::alpha},     {"p", &ModelParams::p},
      {"q", &ModelParams::q},             {"lambda1", &ModelParams::lambda1},
      {"lambda2", &ModelParams::lambda2}, {"v_max", &ModelParams::v_max},
      {"h_c", &ModelParams::h_c},         {"l_v", &ModelParams::l_v},
      {"d", &ModelParams::d},
  };
  return fields;
}

constexpr const char* kModelKeyOrder[] = {"alpha",   "p",     "q",   "lambda1", "lambda2",
                                          "v_max",   "h_c",   "l_v", "d"};

class Parser {
 public:
  RunManifest parse(std::string_view text);

 private:
  void issue(int line, std::string field, std::string reason) {
    issues_.push_back({line, std::move(field), std::move(reason)});
  }
  void handle(std::string_view section, std::string_view key, std::string_view value, int line);
  double number(std::string_view field, std::string_view value, int line);
  long integer(std::string_view field, std::string_view value, int line);
  void check_ranges();
  int line_of(const std::string& field) const {
    auto it = lines_.find(field);
    return it == lines_.end() ? 0 : it->second;
  }

  RunManifest m_;
  std::vector<ConfigIssue> issues_;
  std::map<std::string, int> lines_;  // "section.key" -> line
  std::map<std::string, std::vector<std::pair<ModelField, double>>> overrides_;
  std::vector<std::string> set_order_;
  std::array<std::vector<HeadwayDelta>, kLaneCount> deltas_;
};

double Parser::number(std::string_view field, std::string_view value, int line) {
  double x = 0.0;
  if (!to_double(value, x)) {
    issue(line, std::string(field), "expected a finite number, got '" + std::string(value) + "'");
  }
  return x;
}

long Parser::integer(std::string_view field, std::string_view value, int line) {
  long x = 0;
  if (!to_long(value, x)) {
    issue(line, std::string(field), "expected an integer, got '" + std::string(value) + "'");
  }
  return x;
}

void Parser::handle(std::string_view section, std::string_view key, std::string_view value,
                    int line) {
  const std::string field = std::string(section) + "." + std::string(key);
  const bool repeatable = key == "perturb";
  if (!repeatable && lines_.count(field)) {
    issue(line, field, "duplicate key (first set on line " + std::to_string(lines_[field]) + ")");
    return;
  }
  lines_[field] = line;
  auto unknown = [&] { issue(line, field, "unknown key"); };

  if (section == "model" || section.rfind("model.", 0) == 0) {
    auto it = model_fields().find(key);
    if (it == model_fields().end()) return unknown();
    const double x = number(field, value, line);
    if (section == "model") {
      m_.model.*(it->second) = x;
    } else {
      overrides_[std::string(section.substr(6))].emplace_back(it->second, x);
    }
  } else if (section == "ring") {
    if (key != "n_vehicles") return unknown();
    const long n = integer(field, value, line);
    if (n < 2) issue(line, field, "must be at least 2");
    m_.ring.n_vehicles = n < 0 ? 0 : static_cast<std::size_t>(n);
  } else if (section == "lane1" || section == "lane2") {
    const std::size_t k = section == "lane1" ? 0 : 1;
    if (key == "baseline_headway") {
      m_.ring.lanes[k].baseline_headway = number(field, value, line);
    } else if (key == "perturb") {
      const auto words = split_words(value);
      if (words.size() != 3) {
        issue(line, field, "expected 'first last delta'");
        return;
      }
      const long first = integer(field, words[0], line);
      const long last = integer(field, words[1], line);
      const double delta = number(field, words[2], line);
      if (first < 0 || last < first) {
        issue(line, field, "index range must satisfy 0 <= first <= last");
        return;
      }
      deltas_[k].push_back({static_cast<std::size_t>(first), static_cast<std::size_t>(last), delta});
    } else {
      unknown();
    }
  } else if (section == "sim") {
    try {
      if (key == "dt") m_.sim.dt = number(field, value, line);
      else if (key == "duration") m_.sim.duration = number(field, value, line);
      else if (key == "sample_every") m_.sim.sample_every = number(field, value, line);
      else if (key == "record_from") m_.sim.record_from = number(field, value, line);
      else if (key == "scheme") m_.sim.scheme = parse_scheme(value);
      else if (key == "mode") m_.sim.mode = parse_neighbor_mode(value);
      else if (key == "gate") m_.sim.gate = parse_gate_reading(value);
      else unknown();
    } catch (const std::invalid_argument& e) {
      issue(line, field, e.what());
    }
  } else if (section == "measure") {
    if (key == "profile_time") m_.measure.profile_time = number(field, value, line);
    else if (key == "window_start") m_.measure.window_start = number(field, value, line);
    else if (key == "window_end") m_.measure.window_end = number(field, value, line);
    else unknown();
  } else if (section == "mkdv") {
    if (key != "sensitivity") return unknown();
    if (value == "critical") m_.coefficients = CoefficientSensitivity::critical;
    else if (value == "raw") m_.coefficients = CoefficientSensitivity::raw;
    else issue(line, field, "expected critical|raw");
  } else if (section == "stability_map") {
    if (key == "h_min") m_.h_grid.min = number(field, value, line);
    else if (key == "h_max") m_.h_grid.max = number(field, value, line);
    else if (key == "h_step") m_.h_grid.step = number(field, value, line);
    else if (key == "a_min") m_.a_grid.min = number(field, value, line);
    else if (key == "a_max") m_.a_grid.max = number(field, value, line);
    else if (key == "a_step") m_.a_grid.step = number(field, value, line);
    else unknown();
  } else if (section == "soliton") {
    if (key == "n_min") m_.soliton.n_min = integer(field, value, line);
    else if (key == "n_max") m_.soliton.n_max = integer(field, value, line);
    else if (key == "times") {
      m_.soliton.times.clear();
      for (auto w : split_words(value)) m_.soliton.times.push_back(number(field, w, line));
      if (m_.soliton.times.empty()) issue(line, field, "at least one time required");
    } else {
      unknown();
    }
  } else if (section == "output") {
    if (key != "dir") return unknown();
    m_.output_dir = std::string(value);
    if (m_.output_dir.empty()) issue(line, field, "must not be empty");
  }
}

void Parser::check_ranges() {
  auto check_model = [&](const ModelParams& p, const std::string& section) {
    auto bad = [&](const char* key, const char* reason) {
      const std::string field = section + "." + key;
      int line = line_of(field);
      if (line == 0) line = line_of(std::string("model.") + key);
      issue(line, field, reason);
    };
    if (!(p.alpha > 0.0)) bad("alpha", "must be positive");
    if (!(p.p >= 0.0)) bad("p", "must be non-negative");
    if (!(p.q >= 0.0)) bad("q", "must be non-negative");
    if (!(p.lambda1 >= 0.0)) bad("lambda1", "must be non-negative");
    if (!(p.lambda2 >= 0.0)) bad("lambda2", "must be non-negative");
    if (!(p.v_max > 0.0)) bad("v_max", "must be positive");
    if (!(p.h_c > 0.0)) bad("h_c", "must be positive");
    if (!(p.l_v > 0.0)) bad("l_v", "must be positive");
    if (!(p.d > p.l_v)) bad("d", "must exceed l_v");
  };
  check_model(m_.model, "model");
  for (const auto& s : m_.param_sets) check_model(s.params, "model." + s.name);

  for (std::size_t k = 0; k < kLaneCount; ++k) {
    const std::string section = k == 0 ? "lane1" : "lane2";
    const auto& lane = m_.ring.lanes[k];
    if (!(lane.baseline_headway > 0.0)) {
      issue(line_of(section + ".baseline_headway"), section + ".baseline_headway",
            "must be positive");
    }
    for (const auto& d : lane.deltas) {
      if (m_.ring.n_vehicles >= 2 && d.last >= m_.ring.n_vehicles) {
        issue(line_of(section + ".perturb"), section + ".perturb",
              "vehicle index beyond n_vehicles - 1");
      }
    }
    if (m_.ring.n_vehicles >= 2 && lane.baseline_headway > 0.0) {
      const auto h = initial_headways(lane, m_.ring.n_vehicles);
      for (double x : h) {
        if (!(x > 0.0)) {
          issue(line_of(section + ".perturb"), section + ".perturb",
                "perturbed initial headway must stay positive");
          break;
        }
      }
    }
  }

  try {
    validate(m_.sim);
  } catch (const std::invalid_argument& e) {
    issue(line_of("sim.dt"), "sim", e.what());
  }
  if (!(m_.measure.window_end >= m_.measure.window_start)) {
    issue(line_of("measure.window_end"), "measure.window_end", "must not precede window_start");
  }
  auto check_grid = [&](const GridSpec& g, const char* prefix) {
    const std::string field = std::string("stability_map.") + prefix;
    if (!(g.step > 0.0)) issue(line_of(field + "_step"), field + "_step", "must be positive");
    if (!(g.max >= g.min)) issue(line_of(field + "_max"), field + "_max", "must not be below min");
  };
  check_grid(m_.h_grid, "h");
  check_grid(m_.a_grid, "a");
  if (!(m_.a_grid.min > 0.0)) issue(line_of("stability_map.a_min"), "stability_map.a_min", "must be positive");
  if (m_.soliton.n_max < m_.soliton.n_min) {
    issue(line_of("soliton.n_max"), "soliton.n_max", "must not be below n_min");
  }
}

RunManifest Parser::parse(std::string_view text) {
  m_ = RunManifest{};
  std::string section;
  std::set<std::string> seen_sections;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        issue(line_no, "", "unterminated section header");
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static const std::set<std::string, std::less<>> known{
          "model", "ring",          "lane1",   "lane2", "sim",
          "measure", "mkdv", "stability_map", "soliton", "output"};
      const bool named_set = section.rfind("model.", 0) == 0 && section.size() > 6;
      if (!known.count(section) && !named_set) {
        issue(line_no, section, "unknown section");
      }
      if (!seen_sections.insert(section).second) issue(line_no, section, "duplicate section");
      if (named_set) {
        set_order_.push_back(section.substr(6));
        overrides_[section.substr(6)];
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issue(line_no, "", "expected 'key = value'");
      continue;
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (section.empty()) {
      issue(line_no, std::string(key), "key outside of any section");
      continue;
    }
    if (key.empty() || value.empty()) {
      issue(line_no, section + "." + std::string(key), "empty key or value");
      continue;
    }
    handle(section, key, value, line_no);
  }

  for (const char* key : {"alpha", "p", "q", "lambda1", "lambda2", "v_max", "h_c", "d"}) {
    if (!lines_.count(std::string("model.") + key)) {
      issue(0, std::string("model.") + key, "missing required field");
    }
  }
  if (!lines_.count("ring.n_vehicles")) issue(0, "ring.n_vehicles", "missing required field");
  for (const char* lane : {"lane1", "lane2"}) {
    if (!lines_.count(std::string(lane) + ".baseline_headway")) {
      issue(0, std::string(lane) + ".baseline_headway", "missing required field");
    }
  }

  for (std::size_t k = 0; k < kLaneCount; ++k) m_.ring.lanes[k].deltas = deltas_[k];
  for (const auto& name : set_order_) {
    NamedParams set{name, m_.model};
    for (const auto& [field, value] : overrides_[name]) set.params.*field = value;
    m_.param_sets.push_back(std::move(set));
  }

  if (issues_.empty()) check_ranges();
  if (!issues_.empty()) throw ConfigError(issues_);
  return m_;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::vector<double> expand(const GridSpec& grid) {
  if (!(grid.step > 0.0) || !(grid.max >= grid.min)) {
    throw std::invalid_argument("grid needs step > 0 and max >= min");
  }
  const auto n = static_cast<long>(std::floor((grid.max - grid.min) / grid.step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) out.push_back(grid.min + static_cast<double>(i) * grid.step);
  return out;
}

RunManifest parse_config(std::string_view text) { return Parser{}.parse(text); }

RunManifest load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunManifest& m) {
  std::ostringstream os;
  auto model_block = [&](const ModelParams& p) {
    for (const char* key : kModelKeyOrder) {
      os << key << " = " << fmt(p.*(model_fields().at(key))) << "\n";
    }
  };
  os << "[model]\n";
  model_block(m.model);
  for (const auto& set : m.param_sets) {
    os << "\n[model." << set.name << "]\n";
    model_block(set.params);
  }
  os << "\n[ring]\nn_vehicles = " << m.ring.n_vehicles << "\n";
  for (std::size_t k = 0; k < kLaneCount; ++k) {
    const auto& lane = m.ring.lanes[k];
    os << "\n[lane" << k + 1 << "]\nbaseline_headway = " << fmt(lane.baseline_headway) << "\n";
    for (const auto& d : lane.deltas) {
      os << "perturb = " << d.first << " " << d.last << " " << fmt(d.delta) << "\n";
    }
  }
  os << "\n[sim]\n"
     << "dt = " << fmt(m.sim.dt) << "\n"
     << "scheme = " << to_string(m.sim.scheme) << "\n"
     << "duration = " << fmt(m.sim.duration) << "\n"
     << "sample_every = " << fmt(m.sim.sample_every) << "\n"
     << "record_from = " << fmt(m.sim.record_from) << "\n"
     << "mode = " << to_string(m.sim.mode) << "\n"
     << "gate = " << to_string(m.sim.gate) << "\n";
  os << "\n[measure]\n"
     << "profile_time = " << fmt(m.measure.profile_time) << "\n"
     << "window_start = " << fmt(m.measure.window_start) << "\n"
     << "window_end = " << fmt(m.measure.window_end) << "\n";
  os << "\n[mkdv]\nsensitivity = "
     << (m.coefficients == CoefficientSensitivity::critical ? "critical" : "raw") << "\n";
  os << "\n[stability_map]\n"
     << "h_min = " << fmt(m.h_grid.min) << "\nh_max = " << fmt(m.h_grid.max)
     << "\nh_step = " << fmt(m.h_grid.step) << "\n"
     << "a_min = " << fmt(m.a_grid.min) << "\na_max = " << fmt(m.a_grid.max)
     << "\na_step = " << fmt(m.a_grid.step) << "\n";
  os << "\n[soliton]\nn_min = " << m.soliton.n_min << "\nn_max = " << m.soliton.n_max
     << "\ntimes =";
  for (double t : m.soliton.times) os << " " << fmt(t);
  os << "\n\n[output]\ndir = " << m.output_dir << "\n";
  return os.str();
}

}  // namespace twolane
