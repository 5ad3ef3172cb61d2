#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include "viscostring/config.hpp"
#include "viscostring/moments.hpp"
#include "viscostring/spectral.hpp"

namespace viscostring {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitExceptionalIndex = 3,
  kExitNearSingularGram = 4,
  kExitElasticDegeneracy = 5,
};

/// Maps a library exception to the process exit status.
int exit_code_for(const std::exception& error);

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr int kFieldPoints = 201;

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  /// Artifact file names relative to the output directory.
  std::vector<std::string> files;
};

/// Boundary control described by a [control] block on `grid`.
ControlSignal make_control(const ControlSpec& spec, const TimeGrid& grid,
                           std::uint64_t fallback_seed);

/// Steering target padded with zeros to `n_max` entries.
MomentTarget make_target(const ExperimentConfig& config, int n_max);

/// Runs one task and writes manifest.json, timing.json and the task CSVs
/// into `out_dir` (created if missing). Never throws for library failures;
/// they are reported through the exit code and the manifest.
RunResult run(Task task, const ExperimentConfig& config, const std::string& out_dir);

}  // namespace viscostring
