#include "coagkit/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "coagkit/errors.hpp"
#include "coagkit/result_table.hpp"

namespace coagkit {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": " + value);
  }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size() || v <= 0) throw std::invalid_argument(value);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("bad count for " + key + ": " + value);
  }
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += ResultTable::format_double(v[i]);
  }
  return out;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

Study study_from_name(const std::string& name) {
  if (name == "validate") return Study::Validate;
  if (name == "self_converge" || name == "self-converge") {
    return Study::SelfConverge;
  }
  if (name == "moments") return Study::Moments;
  if (name == "cost") return Study::Cost;
  if (name == "xmax_sweep" || name == "xmax-sweep") return Study::XmaxSweep;
  throw ConfigError("unknown study: " + name);
}

std::string study_name(Study study) {
  switch (study) {
    case Study::Validate: return "validate";
    case Study::SelfConverge: return "self_converge";
    case Study::Moments: return "moments";
    case Study::Cost: return "cost";
    case Study::XmaxSweep: return "xmax_sweep";
  }
  return "";
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  bool saw_study = false;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      throw ConfigError("empty value for key " + key);
    }

    if (key == "study") {
      cfg.study = study_from_name(value);
      saw_study = true;
    } else if (key == "kernel") {
      cfg.kernel = value;
    } else if (key == "scheme") {
      cfg.scheme = value;
    } else if (key == "x_min") {
      cfg.x_min = parse_double(key, value);
    } else if (key == "x_max") {
      cfg.x_max_list.clear();
      for (const auto& item : split_list(value)) {
        cfg.x_max_list.push_back(parse_double(key, item));
      }
    } else if (key == "n_list") {
      cfg.n_list.clear();
      for (const auto& item : split_list(value)) {
        cfg.n_list.push_back(parse_size(key, item));
      }
    } else if (key == "dx_list") {
      cfg.dx_list.clear();
      for (const auto& item : split_list(value)) {
        cfg.dx_list.push_back(parse_double(key, item));
      }
    } else if (key == "t_span") {
      const auto parts = split_list(value);
      if (parts.size() != 2) throw ConfigError("t_span needs two values");
      cfg.t0 = parse_double(key, parts[0]);
      cfg.t_end = parse_double(key, parts[1]);
    } else if (key == "sample_times") {
      cfg.sample_times.clear();
      for (const auto& item : split_list(value)) {
        cfg.sample_times.push_back(parse_double(key, item));
      }
    } else if (key == "dt") {
      cfg.dt = parse_double(key, value);
    } else if (key == "flfm_time") {
      cfg.flfm_time = value;
    } else if (key == "rel_tol") {
      cfg.rel_tol = parse_double(key, value);
    } else if (key == "abs_tol") {
      cfg.abs_tol = parse_double(key, value);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  if (!saw_study) throw ConfigError("config is missing the study key");
  resolve_config(cfg);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void resolve_config(ExperimentConfig& cfg) {
  if (cfg.kernel != "constant" && cfg.kernel != "multiplicative") {
    throw ConfigError("kernel must be constant or multiplicative");
  }
  if (cfg.scheme != "fem" && cfg.scheme != "flfm" && cfg.scheme != "both") {
    throw ConfigError("scheme must be fem, flfm, or both");
  }
  if (cfg.flfm_time != "adaptive" && cfg.flfm_time != "fixed") {
    throw ConfigError("flfm_time must be adaptive or fixed");
  }
  const bool constant = cfg.kernel == "constant";
  if (cfg.x_min < 0.0) cfg.x_min = constant ? 1e-3 : 0.75;
  if (cfg.x_max_list.empty()) cfg.x_max_list = {constant ? 50.0 : 80.0};
  if (cfg.n_list.empty()) cfg.n_list = {100, 200, 400};
  if (cfg.t0 < 0.0 || cfg.t_end < 0.0) {
    if (cfg.study == Study::Moments || cfg.study == Study::Cost) {
      cfg.t0 = 0.0;
      cfg.t_end = 3.0;
    } else {
      cfg.t0 = 1.0;
      cfg.t_end = 3.0;
    }
  }
  if (cfg.sample_times.empty()) {
    if (cfg.study == Study::Validate || cfg.study == Study::Moments) {
      // t0, t0 + 0.1, ..., t_end
      const int steps = static_cast<int>(std::round((cfg.t_end - cfg.t0) / 0.1));
      for (int k = 0; k <= steps; ++k) {
        cfg.sample_times.push_back(cfg.t0 + 0.1 * k);
      }
      cfg.sample_times.back() = cfg.t_end;
    } else {
      cfg.sample_times = {cfg.t_end};
    }
  }

  if (!(cfg.t_end > cfg.t0)) throw ConfigError("t_span must have t0 < t_end");
  if (cfg.study == Study::Moments && cfg.t0 != 0.0) {
    throw ConfigError("moment studies initialize at t = 0");
  }
  if (!(cfg.x_min >= 0.0) || !std::isfinite(cfg.x_min)) {
    throw ConfigError("x_min must be finite and non-negative");
  }
  for (double xm : cfg.x_max_list) {
    if (!(xm > cfg.x_min) || !std::isfinite(xm)) {
      throw ConfigError("every x_max must be finite and exceed x_min");
    }
  }
  if (cfg.study != Study::XmaxSweep && cfg.x_max_list.size() != 1) {
    throw ConfigError("only the xmax_sweep study accepts several x_max");
  }
  if (!std::is_sorted(cfg.n_list.begin(), cfg.n_list.end()) ||
      std::adjacent_find(cfg.n_list.begin(), cfg.n_list.end()) !=
          cfg.n_list.end()) {
    throw ConfigError("n_list must be strictly ascending");
  }
  for (std::size_t n : cfg.n_list) {
    if (n < 3) throw ConfigError("every n must be at least 3");
  }
  for (double dx : cfg.dx_list) {
    if (!(dx > 0.0)) throw ConfigError("dx_list entries must be positive");
  }
  if (!cfg.dx_list.empty() && cfg.study != Study::XmaxSweep) {
    throw ConfigError("dx_list applies only to the xmax_sweep study");
  }
  if (cfg.study == Study::SelfConverge) {
    const std::size_t fine = cfg.n_list.back() - 1;
    for (std::size_t n : cfg.n_list) {
      if (fine % (n - 1) != 0) {
        throw ConfigError("self_converge requires every grid to nest into "
                          "the finest one");
      }
    }
    if (cfg.n_list.size() < 2) {
      throw ConfigError("self_converge needs at least two grids");
    }
  }
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }
  if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
  for (std::size_t i = 0; i + 1 < cfg.sample_times.size(); ++i) {
    if (!(cfg.sample_times[i] < cfg.sample_times[i + 1])) {
      throw ConfigError("sample_times must be strictly increasing");
    }
  }
  if (!cfg.sample_times.empty() &&
      (cfg.sample_times.front() < cfg.t0 ||
       cfg.sample_times.back() > cfg.t_end)) {
    throw ConfigError("sample_times must lie within t_span");
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(
    const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("study", study_name(cfg.study));
  out.emplace_back("kernel", cfg.kernel);
  out.emplace_back("scheme", cfg.scheme);
  out.emplace_back("x_min", ResultTable::format_double(cfg.x_min));
  out.emplace_back("x_max", join_doubles(cfg.x_max_list));
  out.emplace_back("n_list", join_sizes(cfg.n_list));
  if (!cfg.dx_list.empty()) {
    out.emplace_back("dx_list", join_doubles(cfg.dx_list));
  }
  out.emplace_back("t_span", ResultTable::format_double(cfg.t0) + "," +
                                 ResultTable::format_double(cfg.t_end));
  out.emplace_back("sample_times", join_doubles(cfg.sample_times));
  out.emplace_back("dt", ResultTable::format_double(cfg.dt));
  out.emplace_back("flfm_time", cfg.flfm_time);
  out.emplace_back("rel_tol", ResultTable::format_double(cfg.rel_tol));
  out.emplace_back("abs_tol", ResultTable::format_double(cfg.abs_tol));
  out.emplace_back("output_dir", cfg.output_dir);
  return out;
}

}  // namespace coagkit
