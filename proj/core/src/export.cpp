#include "viscostring/export.hpp"

#include <cstdio>
#include <numbers>

#include "viscostring/errors.hpp"

namespace viscostring {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::LittleZ:
      return "z";
    case ModeKind::BigZ:
      return "Z";
    case ModeKind::Derivative:
      return "dz";
  }
  return "unknown";
}

CsvWriter::CsvWriter(std::string path, const std::vector<std::string>& header)
    : path_(std::move(path)), columns_(header.size()), out_(path_) {
  if (!out_) throw Error("cannot open " + path_ + " for writing");
  write_line(header);
}

void CsvWriter::write_line(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw Error("write failed for " + path_);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw Error("row width " + std::to_string(cells.size()) + " does not match header of " +
                path_);
  }
  write_line(cells);
}

void CsvWriter::row(std::span<const double> values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_real(v));
  row(cells);
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw Error("write failed for " + path_);
  out_.close();
}

void write_trajectories_csv(const std::string& path, std::span<const ModeTrajectory> modes,
                            const TimeGrid& grid) {
  CsvWriter csv(path, {"n", "kind", "k", "t", "re", "im"});
  for (const auto& mode : modes) {
    const std::string n = std::to_string(mode.n);
    const std::string kind = to_string(mode.kind);
    for (std::size_t k = 0; k < mode.samples.size(); ++k) {
      csv.row({n, kind, std::to_string(k), format_real(grid.time(static_cast<int>(k))),
               format_real(mode.samples[k].real()), format_real(mode.samples[k].imag())});
    }
  }
  csv.close();
}

void write_control_csv(const std::string& path, const ControlSignal& control, double alpha) {
  const std::vector<double> renamed = control.renamed(alpha);
  CsvWriter csv(path, {"t", "f", "f_renamed"});
  for (std::size_t k = 0; k < control.samples.size(); ++k) {
    const double row[] = {control.grid.time(static_cast<int>(k)), control.samples[k],
                          renamed[k]};
    csv.row(row);
  }
  csv.close();
}

void write_coefficients_csv(const std::string& path, const SpectralState& state) {
  const NormalizedCoefficients unit = normalized_coefficients(state);
  CsvWriter csv(path, {"n", "deformation", "velocity", "stress", "integrated_stress",
                       "deformation_unit", "velocity_unit", "stress_unit"});
  for (int i = 0; i < state.n_max(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    csv.row({std::to_string(i + 1), format_real(state.deformation[k]),
             format_real(state.velocity[k]), format_real(state.stress[k]),
             format_real(state.integrated_stress[k]), format_real(unit.deformation[k]),
             format_real(unit.velocity[k]), format_real(unit.stress[k])});
  }
  csv.close();
}

void write_fields_csv(const std::string& path, const SpectralState& state, int points) {
  if (points < 2) throw std::invalid_argument("write_fields_csv: need at least 2 points");
  std::vector<double> x(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    x[static_cast<std::size_t>(i)] = std::numbers::pi * i / (points - 1);
  }
  const auto u = reconstruct_field(state, FieldKind::Deformation, x);
  const auto v = reconstruct_field(state, FieldKind::Velocity, x);
  const auto s = reconstruct_field(state, FieldKind::Stress, x);
  CsvWriter csv(path, {"x", "deformation", "velocity", "stress"});
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double row[] = {x[i], u[i], v[i], s[i]};
    csv.row(row);
  }
  csv.close();
}

void write_report_csv(const std::string& path, const AsymptoticReport& report) {
  CsvWriter csv(path, {"n", "deviation", "scaled"});
  for (std::size_t i = 0; i < report.indices.size(); ++i) {
    csv.row({std::to_string(report.indices[i]), format_real(report.deviation[i]),
             format_real(report.scaled[i])});
  }
  csv.close();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error("write failed for " + path);
}

}  // namespace viscostring
