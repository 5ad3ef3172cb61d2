#pragma once

#include <stdexcept>
#include <string>

namespace viscostring {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse for the requested mode range (h * n_max > 0.1).
class ResolutionError : public Error {
 public:
  ResolutionError(double step, int n_max);
  double step() const { return step_; }
  int n_max() const { return n_max_; }

 private:
  double step_;
  int n_max_;
};

/// beta_n = sqrt(n^2 - alpha^2) vanishes (or is non-real where a real value
/// is required) for the reported index.
class ExceptionalIndexError : public Error {
 public:
  ExceptionalIndexError(int index, double alpha, bool non_real = false);
  int index() const { return index_; }
  double alpha() const { return alpha_; }
  bool non_real() const { return non_real_; }

 private:
  int index_;
  double alpha_;
  bool non_real_;
};

/// The Gram matrix of the moment family lost positive definiteness at this
/// truncation and horizon.
class NearSingularGramError : public Error {
 public:
  NearSingularGramError(double lambda_min, double lambda_max);
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }

 private:
  double lambda_min_;
  double lambda_max_;
};

/// Purely elastic kernel with deformation and stress targets that differ.
class ElasticDegeneracyError : public Error {
 public:
  explicit ElasticDegeneracyError(int first_index);
  int first_index() const { return first_index_; }

 private:
  int first_index_;
};

}  // namespace viscostring
