#include "viscostring/errors.hpp"

#include <cstdio>

namespace viscostring {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

ResolutionError::ResolutionError(double step, int n_max)
    : Error("resolution rule violated: h * n_max = " +
            format_double(step * n_max) + " > 0.1 (h = " + format_double(step) +
            ", n_max = " + std::to_string(n_max) + ")"),
      step_(step),
      n_max_(n_max) {}

ExceptionalIndexError::ExceptionalIndexError(int index, double alpha,
                                             bool non_real)
    : Error(non_real ? "beta_" + std::to_string(index) +
                           " is not real (alpha = " + format_double(alpha) + ")"
                     : "exceptional index " + std::to_string(index) +
                           ": alpha^2 = n^2 (alpha = " + format_double(alpha) +
                           ")"),
      index_(index),
      alpha_(alpha),
      non_real_(non_real) {}

NearSingularGramError::NearSingularGramError(double lambda_min,
                                             double lambda_max)
    : Error("near-singular Gram matrix: lambda_min = " +
            format_double(lambda_min) +
            ", lambda_max = " + format_double(lambda_max)),
      lambda_min_(lambda_min),
      lambda_max_(lambda_max) {}

ElasticDegeneracyError::ElasticDegeneracyError(int first_index)
    : Error("elastic kernel: stress target differs from deformation target "
            "at n = " + std::to_string(first_index) +
            "; stress is determined by deformation when M = 0"),
      first_index_(first_index) {}

}  // namespace viscostring
