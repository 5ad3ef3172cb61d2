#include "viscostring/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "json.hpp"
#include "viscostring/errors.hpp"
#include "viscostring/export.hpp"
#include "viscostring/verify.hpp"

namespace viscostring {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kRandomHarmonics = 8;
constexpr int kResolventChecks = 4;

Json complex_array(std::span<const Complex> values) {
  Json out = Json::array();
  for (const Complex& v : values) out.push_back({v.real(), v.imag()});
  return out;
}

Json optional_seed(const std::optional<std::uint64_t>& seed) {
  return seed ? Json(*seed) : Json(nullptr);
}

Json config_json(const ExperimentConfig& c) {
  return Json{
      {"kernel", {{"family", to_string(c.kernel_family)},
                  {"coefficients", c.kernel_coefficients}}},
      {"grid", {{"horizon", c.horizon}, {"steps", c.steps}}},
      {"modes", {{"n_max", c.n_max}, {"n_f", c.n_f}}},
      {"seed", c.seed},
      {"targets", {{"xi", c.targets.xi},
                   {"eta", c.targets.eta},
                   {"c", c.targets.c},
                   {"d", c.targets.d},
                   {"random_unit", c.targets.random_unit},
                   {"count", c.targets.count},
                   {"seed", optional_seed(c.targets.seed)}}},
      {"control", {{"shape", to_string(c.control.shape)},
                   {"amplitude", c.control.amplitude},
                   {"frequency", c.control.frequency},
                   {"seed", optional_seed(c.control.seed)}}},
  };
}

Json report_json(const AsymptoticReport& r) {
  return Json{{"label", r.label},
              {"verdict", to_string(r.verdict)},
              {"lower_max", r.lower_max},
              {"upper_max", r.upper_max},
              {"indices", r.indices},
              {"scaled", r.scaled}};
}

Json synthesis_json(const SynthesisReport& s) {
  return Json{{"indices", s.indices},
              {"targets", complex_array(s.targets)},
              {"achieved", complex_array(s.achieved)},
              {"residuals", complex_array(s.residuals)},
              {"max_relative_residual", s.max_relative_residual},
              {"control_l2_norm", s.control_l2_norm},
              {"renamed_l2_norm", s.renamed_l2_norm},
              {"energy", s.energy},
              {"lambda_min", s.lambda_min},
              {"lambda_max", s.lambda_max},
              {"condition", s.condition},
              {"imaginary_ratio", s.imaginary_ratio},
              {"short_horizon", s.short_horizon}};
}

Json norms_json(const CoefficientNorms& n) {
  return Json{{"l2_deformation", n.l2_deformation},
              {"hminus1_velocity", n.hminus1_velocity},
              {"hminus1_stress", n.hminus1_stress}};
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const ResolutionError*>(&e)) return "ResolutionError";
  if (dynamic_cast<const ExceptionalIndexError*>(&e)) return "ExceptionalIndex";
  if (dynamic_cast<const NearSingularGramError*>(&e)) return "NearSingularGram";
  if (dynamic_cast<const ElasticDegeneracyError*>(&e)) return "ElasticDegeneracy";
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "InvalidArgument";
  return "Error";
}

std::vector<double> padded(const std::vector<double>& v, int n, const std::string& name) {
  if (static_cast<int>(v.size()) > n) {
    throw ConfigError("targets." + name + " has " + std::to_string(v.size()) +
                      " entries but only " + std::to_string(n) + " modes are available");
  }
  std::vector<double> out(v);
  out.resize(static_cast<std::size_t>(n), 0.0);
  return out;
}

struct Context {
  const ExperimentConfig& config;
  const DerivedKernelSet& kernels;
  fs::path dir;
  Json results = Json::object();
  std::vector<std::string> files;

  std::string file(const std::string& name) {
    files.push_back(name);
    return (dir / name).string();
  }
};

void write_synthesis_csv(const std::string& path, const SynthesisReport& s) {
  CsvWriter csv(path, {"index", "target_re", "target_im", "achieved_re", "achieved_im",
                       "residual_re", "residual_im", "coefficient_re", "coefficient_im"});
  for (std::size_t i = 0; i < s.indices.size(); ++i) {
    const Complex coeff = i < s.coefficients.size() ? s.coefficients[i] : Complex{};
    csv.row({std::to_string(s.indices[i]), format_real(s.targets[i].real()),
             format_real(s.targets[i].imag()), format_real(s.achieved[i].real()),
             format_real(s.achieved[i].imag()), format_real(s.residuals[i].real()),
             format_real(s.residuals[i].imag()), format_real(coeff.real()),
             format_real(coeff.imag())});
  }
  csv.close();
}

void run_simulate(Context& ctx) {
  const TimeGrid& grid = ctx.kernels.grid;
  const ControlSignal control = make_control(ctx.config.control, grid, ctx.config.seed);
  const auto family = solve_little_z_family(ctx.kernels, {1, ctx.config.n_max});
  const SpectralState state = simulate_coefficients(control, family, ctx.kernels);
  write_control_csv(ctx.file("control.csv"), control, ctx.kernels.alpha);
  write_coefficients_csv(ctx.file("coefficients.csv"), state);
  write_fields_csv(ctx.file("fields.csv"), state, kFieldPoints);
  write_trajectories_csv(ctx.file("trajectories.csv"), family, grid);
  ctx.results["control_l2_norm"] = control.l2_norm();
  ctx.results["norms"] = norms_json(coefficient_norms(state));
}

void run_steer(Context& ctx) {
  const TimeGrid& grid = ctx.kernels.grid;
  const MomentTarget target = make_target(ctx.config, ctx.config.n_max);
  const ModeFamily family = build_family(ctx.kernels, ctx.config.n_max);
  const GramSystem system = gram(family.big_z, grid);
  const RoundTripResult rt = closed_loop_roundtrip(ctx.kernels, family, system, target);
  write_control_csv(ctx.file("control.csv"), rt.synthesis.control, ctx.kernels.alpha);
  write_synthesis_csv(ctx.file("synthesis.csv"), rt.synthesis);
  write_coefficients_csv(ctx.file("coefficients.csv"), rt.state);
  write_fields_csv(ctx.file("fields.csv"), rt.state, kFieldPoints);
  ctx.results["cross_check_deviation"] = family.cross_check_deviation;
  ctx.results["synthesis"] = synthesis_json(rt.synthesis);
  ctx.results["roundtrip_relative_error"] = rt.relative_error;
  ctx.results["norms"] = norms_json(coefficient_norms(rt.state));
}

void run_pair(Context& ctx) {
  const auto& t = ctx.config.targets;
  if (t.c.empty() && t.d.empty()) throw ConfigError("pair task needs targets.c and targets.d");
  const auto c = padded(t.c, ctx.config.n_f, "c");
  const auto d = padded(t.d, ctx.config.n_f, "d");
  const SynthesisReport report = finite_pair_control(ctx.kernels, c, d);
  write_control_csv(ctx.file("control.csv"), report.control, ctx.kernels.alpha);
  write_synthesis_csv(ctx.file("synthesis.csv"), report);
  ctx.results["synthesis"] = synthesis_json(report);
}

void run_diagnose(Context& ctx) {
  const TimeGrid& grid = ctx.kernels.grid;
  const int n_max = ctx.config.n_max;
  const ModeFamily family = build_family(ctx.kernels, n_max);
  std::vector<int> sizes;
  for (int m : {4, 8, 16, 32}) {
    if (m < n_max) sizes.push_back(m);
  }
  sizes.push_back(n_max);
  Json bounds = Json::array();
  CsvWriter frame(ctx.file("frame_bounds.csv"), {"n_max", "lambda_min", "lambda_max"});
  for (int m : sizes) {
    const FrameBoundsRow row = normalized_gram_extremes(family.big_z, grid, m);
    frame.row({std::to_string(row.n_max), format_real(row.lambda_min),
               format_real(row.lambda_max)});
    bounds.push_back(
        {{"n_max", row.n_max}, {"lambda_min", row.lambda_min}, {"lambda_max", row.lambda_max}});
  }
  frame.close();
  const ClosenessReport close = quadratic_closeness(family.big_z, ctx.kernels);
  CsvWriter csv(ctx.file("closeness.csv"),
                {"index", "distance_sq", "scaled", "partial_sum", "tail"});
  for (std::size_t i = 0; i < close.indices.size(); ++i) {
    csv.row({std::to_string(close.indices[i]), format_real(close.distance_sq[i]),
             format_real(close.scaled[i]), format_real(close.partial_sums[i]),
             format_real(close.tail[i])});
  }
  csv.close();
  write_trajectories_csv(ctx.file("trajectories.csv"), family.big_z, grid);
  ctx.results["cross_check_deviation"] = family.cross_check_deviation;
  ctx.results["frame_bounds"] = bounds;
  ctx.results["closeness_sum"] = close.partial_sums.empty() ? 0.0 : close.partial_sums.back();
  ctx.results["closeness_max_scaled"] =
      close.scaled.empty() ? 0.0 : *std::max_element(close.scaled.begin(), close.scaled.end());
}

void run_verify(Context& ctx) {
  const TimeGrid& grid = ctx.kernels.grid;
  const int n_max = ctx.config.n_max;
  const auto family = solve_little_z_family(ctx.kernels, {1, n_max});
  const AsymptoticReport zn = check_zn_asymptotics(ctx.kernels, family);
  const AsymptoticReport dzn = check_zn_derivative_asymptotics(ctx.kernels, family);
  const AsymptoticReport conv = check_convolution_lemma(
      ctx.kernels, family, ctx.kernels.stress_kernel, ctx.kernels.stress_kernel.front());
  write_report_csv(ctx.file("asymptotics_zn.csv"), zn);
  write_report_csv(ctx.file("asymptotics_dzn.csv"), dzn);
  write_report_csv(ctx.file("asymptotics_convolution.csv"), conv);

  Json resolvent = Json::array();
  for (int n = 1; n <= std::min(n_max, kResolventChecks); ++n) {
    resolvent.push_back({{"n", n},
                         {"residual", check_resolvent_identity(
                                          ctx.kernels, family[static_cast<std::size_t>(n - 1)])}});
  }

  const ControlSignal control = make_control(ctx.config.control, grid, ctx.config.seed);
  const SpectralState state = simulate_coefficients(control, family, ctx.kernels);
  const AsymptoticReport gap = check_stress_deformation_gap(state, grid);
  write_report_csv(ctx.file("stress_gap.csv"), gap);

  ctx.results["zn"] = report_json(zn);
  ctx.results["zn_derivative"] = report_json(dzn);
  ctx.results["convolution"] = report_json(conv);
  ctx.results["resolvent"] = resolvent;
  ctx.results["stress_gap"] = report_json(gap);

  const auto& t = ctx.config.targets;
  if (t.random_unit || !t.xi.empty() || !t.eta.empty()) {
    const RoundTripResult rt = closed_loop_roundtrip(ctx.kernels, make_target(ctx.config, n_max));
    ctx.results["roundtrip_relative_error"] = rt.relative_error;
    ctx.results["roundtrip_lambda_min"] = rt.synthesis.lambda_min;
  }
}

}  // namespace

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error)) return kExitConfig;
  if (dynamic_cast<const ResolutionError*>(&error)) return kExitConfig;
  if (dynamic_cast<const std::invalid_argument*>(&error)) return kExitConfig;
  if (dynamic_cast<const ExceptionalIndexError*>(&error)) return kExitExceptionalIndex;
  if (dynamic_cast<const NearSingularGramError*>(&error)) return kExitNearSingularGram;
  if (dynamic_cast<const ElasticDegeneracyError*>(&error)) return kExitElasticDegeneracy;
  return kExitFailure;
}

ControlSignal make_control(const ControlSpec& spec, const TimeGrid& grid,
                           std::uint64_t fallback_seed) {
  const double horizon = grid.step() * (static_cast<double>(grid.size()) - 1.0);
  std::vector<double> f(grid.size(), 0.0);
  switch (spec.shape) {
    case ControlShape::Zero:
      break;
    case ControlShape::Cosine:
      for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = spec.amplitude * std::cos(spec.frequency * grid.time(static_cast<int>(k)));
      }
      break;
    case ControlShape::Bump:
      for (std::size_t k = 0; k < f.size(); ++k) {
        const double s = 2.0 * grid.time(static_cast<int>(k)) / horizon - 1.0;
        if (std::abs(s) < 1.0) f[k] = spec.amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
      }
      break;
    case ControlShape::Random: {
      SplitMix64 rng(spec.seed.value_or(fallback_seed));
      double cosines[kRandomHarmonics];
      double sines[kRandomHarmonics];
      for (int j = 0; j < kRandomHarmonics; ++j) {
        cosines[j] = 2.0 * rng.uniform() - 1.0;
        sines[j] = 2.0 * rng.uniform() - 1.0;
      }
      const double omega = 2.0 * std::numbers::pi / horizon;
      for (std::size_t k = 0; k < f.size(); ++k) {
        const double t = grid.time(static_cast<int>(k));
        double v = 0.0;
        for (int j = 0; j < kRandomHarmonics; ++j) {
          const double w = (j + 1) * omega * t;
          v += (cosines[j] * std::cos(w) + sines[j] * std::sin(w)) / (j + 1);
        }
        f[k] = spec.amplitude * v;
      }
      break;
    }
  }
  return ControlSignal(grid, std::move(f));
}

MomentTarget make_target(const ExperimentConfig& config, int n_max) {
  const TargetSpec& t = config.targets;
  if (t.random_unit) {
    const int count = t.count > 0 ? t.count : n_max;
    if (count > n_max) {
      throw ConfigError("targets.count exceeds the available " + std::to_string(n_max) +
                        " modes");
    }
    const MomentTarget raw = MomentTarget::random_unit(count, t.seed.value_or(config.seed));
    return MomentTarget(padded(raw.xi, n_max, "count"), padded(raw.eta, n_max, "count"));
  }
  if (t.xi.empty() && t.eta.empty()) {
    throw ConfigError("steering needs targets.xi and targets.eta or random = unit");
  }
  return MomentTarget(padded(t.xi, n_max, "xi"), padded(t.eta, n_max, "eta"));
}

RunResult run(Task task, const ExperimentConfig& config, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  Json manifest;
  manifest["schema_version"] = kManifestSchemaVersion;
  manifest["task"] = to_string(task);
  manifest["config"] = config_json(config);
  manifest["config_text"] = to_config_text(config);
  manifest["renaming"] = "f_renamed(t) = exp(2 alpha t) f(t)";
  const fs::path dir(out_dir);
  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir + ": " + ec.message());
    if (config.task && *config.task != task) {
      throw ConfigError("config names task '" + to_string(*config.task) + "' but '" +
                        to_string(task) + "' was requested");
    }
    const TimeGrid grid(config.horizon, config.steps);
    const MemoryKernel kernel = config.kernel();
    const int n_modes = task == Task::Pair ? config.n_f : config.n_max;
    grid.require_resolution(n_modes);
    const ExceptionalCheck check = exceptional_index_check(kernel, n_modes);
    const DerivedKernelSet kernels = derive_kernels(kernel, grid);
    manifest["derived"] = {
        {"alpha", kernels.alpha},
        {"non_real_beta", check.non_real_beta},
        {"step", grid.step()},
        {"physical_scale",
         (2.0 / std::numbers::pi) * std::exp(-2.0 * kernels.alpha * config.horizon)},
        {"n0_at_zero", kernels.n0_at_zero},
    };
    Context ctx{config, kernels, dir};
    switch (task) {
      case Task::Simulate:
        run_simulate(ctx);
        break;
      case Task::Steer:
        run_steer(ctx);
        break;
      case Task::Pair:
        run_pair(ctx);
        break;
      case Task::Diagnose:
        run_diagnose(ctx);
        break;
      case Task::Verify:
        run_verify(ctx);
        break;
    }
    manifest["results"] = std::move(ctx.results);
    result.files = std::move(ctx.files);
    manifest["status"] = "ok";
  } catch (const std::exception& e) {
    result.exit_code = exit_code_for(e);
    result.message = e.what();
    manifest["status"] = "error";
    manifest["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
  }
  manifest["exit_code"] = result.exit_code;
  manifest["files"] = result.files;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    const Json timing{{"task", to_string(task)}, {"wall_seconds", seconds}};
    write_text_file((dir / "timing.json").string(), timing.dump(2) + "\n");
  } catch (const std::exception& e) {
    if (result.exit_code == kExitOk) {
      result.exit_code = kExitFailure;
      result.message = e.what();
    }
  }
  return result;
}

}  // namespace viscostring
