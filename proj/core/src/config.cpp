#include "viscostring/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "viscostring/errors.hpp"
#include "viscostring/export.hpp"

namespace viscostring {
namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_factor(const std::string& raw) {
  const std::string s = lower(trim(raw));
  if (s == "pi") return std::numbers::pi;
  if (s.empty()) throw std::invalid_argument("empty number");
  // "2pi" shorthand.
  if (s.size() > 2 && s.ends_with("pi")) {
    return parse_factor(s.substr(0, s.size() - 2)) * std::numbers::pi;
  }
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("not a number: '" + raw + "'");
  }
  return value;
}

long long parse_integer(const std::string& raw) {
  const std::string s = trim(raw);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not an integer: '" + raw + "'");
  }
  return value;
}

std::uint64_t parse_seed(const std::string& raw) {
  const std::string s = trim(raw);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("seed must be a nonnegative integer: '" + raw + "'");
  }
  return value;
}

std::vector<double> parse_list(const std::string& raw) {
  std::vector<double> out;
  if (trim(raw).empty()) return out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_real(v[i]);
  }
  return out;
}

ControlShape control_shape_from_string(const std::string& name) {
  const std::string key = lower(trim(name));
  if (key == "zero") return ControlShape::Zero;
  if (key == "cosine") return ControlShape::Cosine;
  if (key == "bump") return ControlShape::Bump;
  if (key == "random") return ControlShape::Random;
  throw std::invalid_argument("unknown control shape '" + name + "'");
}

}  // namespace

std::string to_string(Task task) {
  switch (task) {
    case Task::Simulate:
      return "simulate";
    case Task::Steer:
      return "steer";
    case Task::Pair:
      return "pair";
    case Task::Diagnose:
      return "diagnose";
    case Task::Verify:
      return "verify";
  }
  return "unknown";
}

Task task_from_string(const std::string& name) {
  const std::string key = lower(trim(name));
  if (key == "simulate") return Task::Simulate;
  if (key == "steer") return Task::Steer;
  if (key == "pair") return Task::Pair;
  if (key == "diagnose") return Task::Diagnose;
  if (key == "verify") return Task::Verify;
  throw ConfigError("unknown task '" + name + "'");
}

std::string to_string(ControlShape shape) {
  switch (shape) {
    case ControlShape::Zero:
      return "zero";
    case ControlShape::Cosine:
      return "cosine";
    case ControlShape::Bump:
      return "bump";
    case ControlShape::Random:
      return "random";
  }
  return "unknown";
}

double parse_real(const std::string& text) {
  // factor (('*' | '/') factor)*
  double value = 1.0;
  char op = '*';
  std::string token;
  auto apply = [&] {
    const double f = parse_factor(token);
    value = op == '*' ? value * f : value / f;
    token.clear();
  };
  for (char ch : text) {
    if (ch == '*' || ch == '/') {
      apply();
      op = ch;
    } else {
      token.push_back(ch);
    }
  }
  apply();
  return value;
}

MemoryKernel ExperimentConfig::kernel() const {
  return MemoryKernel::from_coefficients(kernel_family, kernel_coefficients);
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  bool family_set = false;
  bool coefficients_set = false;
  std::string block;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated block header");
      block = lower(trim(line.substr(1, line.size() - 2)));
      static const char* kBlocks[] = {"kernel", "grid",    "modes", "task",
                                      "targets", "control", "output"};
      if (std::find(std::begin(kBlocks), std::end(kBlocks), block) == std::end(kBlocks)) {
        throw ConfigError(where + "unknown block [" + block + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    if (block.empty()) throw ConfigError(where + "key outside of any block");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qualified = block + "." + key;
    try {
      if (qualified == "kernel.family") {
        cfg.kernel_family = kernel_family_from_string(value);
        family_set = true;
      } else if (qualified == "kernel.coefficients") {
        cfg.kernel_coefficients = parse_list(value);
        coefficients_set = true;
      } else if (qualified == "grid.horizon" || qualified == "grid.t") {
        cfg.horizon = parse_real(value);
      } else if (qualified == "grid.steps") {
        cfg.steps = static_cast<int>(parse_integer(value));
      } else if (qualified == "modes.n_max") {
        cfg.n_max = static_cast<int>(parse_integer(value));
      } else if (qualified == "modes.n_f") {
        cfg.n_f = static_cast<int>(parse_integer(value));
      } else if (qualified == "task.name") {
        cfg.task = task_from_string(value);
      } else if (qualified == "task.seed") {
        cfg.seed = parse_seed(value);
      } else if (qualified == "targets.xi") {
        cfg.targets.xi = parse_list(value);
      } else if (qualified == "targets.eta") {
        cfg.targets.eta = parse_list(value);
      } else if (qualified == "targets.c") {
        cfg.targets.c = parse_list(value);
      } else if (qualified == "targets.d") {
        cfg.targets.d = parse_list(value);
      } else if (qualified == "targets.random") {
        if (lower(value) != "unit") throw std::invalid_argument("random must be 'unit'");
        cfg.targets.random_unit = true;
      } else if (qualified == "targets.count") {
        cfg.targets.count = static_cast<int>(parse_integer(value));
      } else if (qualified == "targets.seed") {
        cfg.targets.seed = parse_seed(value);
      } else if (qualified == "control.shape") {
        cfg.control.shape = control_shape_from_string(value);
      } else if (qualified == "control.amplitude") {
        cfg.control.amplitude = parse_real(value);
      } else if (qualified == "control.frequency") {
        cfg.control.frequency = parse_real(value);
      } else if (qualified == "control.seed") {
        cfg.control.seed = parse_seed(value);
      } else if (qualified == "output.dir") {
        cfg.output_dir = value;
      } else {
        throw ConfigError(where + "unknown key '" + qualified + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(where + qualified + ": " + e.what());
    }
  }
  if (family_set && !coefficients_set) {
    cfg.kernel_coefficients.clear();
  }
  if (!(cfg.horizon > 0.0)) throw ConfigError("grid.horizon must be positive");
  if (cfg.steps <= 0) throw ConfigError("grid.steps must be positive");
  if (cfg.n_max <= 0) throw ConfigError("modes.n_max must be positive");
  if (cfg.n_f <= 0 || cfg.n_f > 16) throw ConfigError("modes.n_f must be in 1..16");
  try {
    (void)cfg.kernel();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("kernel: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[kernel]\n"
      << "family = " << to_string(c.kernel_family) << "\n"
      << "coefficients = " << format_list(c.kernel_coefficients) << "\n\n"
      << "[grid]\n"
      << "horizon = " << format_real(c.horizon) << "\n"
      << "steps = " << c.steps << "\n\n"
      << "[modes]\n"
      << "n_max = " << c.n_max << "\n"
      << "n_f = " << c.n_f << "\n\n"
      << "[task]\n";
  if (c.task) out << "name = " << to_string(*c.task) << "\n";
  out << "seed = " << c.seed << "\n\n[targets]\n";
  if (!c.targets.xi.empty()) out << "xi = " << format_list(c.targets.xi) << "\n";
  if (!c.targets.eta.empty()) out << "eta = " << format_list(c.targets.eta) << "\n";
  if (!c.targets.c.empty()) out << "c = " << format_list(c.targets.c) << "\n";
  if (!c.targets.d.empty()) out << "d = " << format_list(c.targets.d) << "\n";
  if (c.targets.random_unit) out << "random = unit\n";
  if (c.targets.count > 0) out << "count = " << c.targets.count << "\n";
  if (c.targets.seed) out << "seed = " << *c.targets.seed << "\n";
  out << "\n[control]\n"
      << "shape = " << to_string(c.control.shape) << "\n"
      << "amplitude = " << format_real(c.control.amplitude) << "\n"
      << "frequency = " << format_real(c.control.frequency) << "\n";
  if (c.control.seed) out << "seed = " << *c.control.seed << "\n";
  out << "\n[output]\n"
      << "dir = " << c.output_dir << "\n";
  return out.str();
}

}  // namespace viscostring
