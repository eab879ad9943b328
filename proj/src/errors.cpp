#include "salvo/errors.hpp"

#include <sstream>

namespace salvo {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::ostringstream os;
  os << "invalid configuration (" << problems.size() << " problem"
     << (problems.size() == 1 ? "" : "s") << ")";
  for (const auto& p : problems) os << "\n  - " << p;
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

NumericalFailure::NumericalFailure(double t, const std::string& what)
    : std::runtime_error(what + " at t = " + std::to_string(t)), time_(t) {}

}  // namespace salvo
