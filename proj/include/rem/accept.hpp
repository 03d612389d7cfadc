#ifndef REM_ACCEPT_HPP
#define REM_ACCEPT_HPP

#include <cstdint>
#include <string>
#include <vector>

// Verification suites: each acceptance criterion runs at fixed desk-scale
// settings and reports one pass/fail verdict with the measured numbers.

namespace rem {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Suite names accepted by run_verify_suite (includes "all").
const std::vector<std::string>& verify_suites();

// Throws InvalidParams on an unknown suite name.
std::vector<CriterionResult> run_verify_suite(const std::string& suite,
                                              std::uint64_t seed,
                                              unsigned workers);

}  // namespace rem

#endif
