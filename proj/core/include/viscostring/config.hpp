#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "viscostring/kernels.hpp"

namespace viscostring {

enum class Task { Simulate, Steer, Pair, Diagnose, Verify };
std::string to_string(Task task);
Task task_from_string(const std::string& name);

enum class ControlShape { Zero, Cosine, Bump, Random };
std::string to_string(ControlShape shape);

struct ControlSpec {
  ControlShape shape = ControlShape::Zero;
  double amplitude = 1.0;
  double frequency = 1.0;
  /// Random shape only; falls back to the run seed when unset.
  std::optional<std::uint64_t> seed;
};

struct TargetSpec {
  /// Explicit velocity/stress targets (steer) or deformation/stress (pair).
  std::vector<double> xi;
  std::vector<double> eta;
  std::vector<double> c;
  std::vector<double> d;
  /// Seeded random unit target of size `count` instead of xi/eta.
  bool random_unit = false;
  int count = 0;
  std::optional<std::uint64_t> seed;
};

/// One experiment. The text form is a flat list of [block] headers followed
/// by `key = value` lines; '#' starts a comment. Lists are comma separated
/// and reals accept `pi` products such as `2*pi` or `pi/2`.
///
///   [kernel]   family = zero | exponential_sum | polynomial
///              coefficients = a1, b1, a2, b2 ...   (or c0, c1, ...)
///   [grid]     horizon = 2*pi        steps = 4096
///   [modes]    n_max = 32            n_f = 4
///   [task]     name = simulate|steer|pair|diagnose|verify   seed = 0
///   [targets]  xi = ...  eta = ...  c = ...  d = ...  random = unit
///              count = 8  seed = 7
///   [control]  shape = zero|cosine|bump|random  amplitude = 1
///              frequency = 1  seed = 3
///   [output]   dir = out
struct ExperimentConfig {
  KernelFamily kernel_family = KernelFamily::ExponentialSum;
  std::vector<double> kernel_coefficients{0.4, 1.0};
  double horizon = 6.283185307179586;
  int steps = 4096;
  int n_max = 32;
  int n_f = 4;
  std::optional<Task> task;
  std::uint64_t seed = 0;
  TargetSpec targets;
  ControlSpec control;
  std::string output_dir = "out";

  MemoryKernel kernel() const;
};

/// Throws ConfigError with the offending line number.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical text; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ExperimentConfig& config);

/// Parses a real with optional pi factors ("2*pi", "pi/2", "1e-3").
double parse_real(const std::string& text);

}  // namespace viscostring
