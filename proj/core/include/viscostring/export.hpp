#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "viscostring/spectral.hpp"
#include "viscostring/verify.hpp"
#include "viscostring/volterra.hpp"

namespace viscostring {

/// Shortest form that round-trips a double ("%.17g").
std::string format_real(double value);

/// Comma-separated file with a header row. Throws Error naming the path on
/// any I/O failure.
class CsvWriter {
 public:
  CsvWriter(std::string path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  void row(std::span<const double> values);
  /// Flushes and reports write failures.
  void close();
  const std::string& path() const { return path_; }

 private:
  void write_line(const std::vector<std::string>& cells);
  std::string path_;
  std::size_t columns_;
  std::ofstream out_;
};

/// Long format: n, kind, k, t, re, im. One row per sample.
void write_trajectories_csv(const std::string& path, std::span<const ModeTrajectory> modes,
                            const TimeGrid& grid);

/// t, f (physical), f_renamed.
void write_control_csv(const std::string& path, const ControlSignal& control, double alpha);

/// Raw and unit-normalized coefficient sequences, one row per mode.
void write_coefficients_csv(const std::string& path, const SpectralState& state);

/// Physical fields on `points` equispaced x values covering [0, pi].
void write_fields_csv(const std::string& path, const SpectralState& state, int points = 201);

/// n, deviation, scaled.
void write_report_csv(const std::string& path, const AsymptoticReport& report);

void write_text_file(const std::string& path, const std::string& text);

std::string to_string(ModeKind kind);

}  // namespace viscostring
