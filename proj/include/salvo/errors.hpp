#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace salvo {

/// A config or graph violated one or more invariants. Every violation is kept.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sine-rule argument fell outside [-1, 1]: the supplied ranges and baseline
/// cannot belong to one planar triangle.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state became NaN or infinite during integration.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(double t, const std::string& what);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A range hit or fell below the intercept threshold where 1/R terms are
/// evaluated.
class SingularGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace salvo
