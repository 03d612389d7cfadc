#ifndef REM_ERRORS_HPP
#define REM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rem {

struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DiscriminantNegative : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnsupportedAlpha : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotStableRegime : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotCovered : std::domain_error {
  using std::domain_error::domain_error;
};

struct RegimeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateTail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rem

#endif
