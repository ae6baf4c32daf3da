#ifndef DIRAC_FIELDS_VERIFY_HPP
#define DIRAC_FIELDS_VERIFY_HPP

// Property suites behind `dirac-fields verify`. Every randomized draw comes
// from one std::mt19937_64 seeded by the caller.

#include <cstdint>
#include <string>
#include <vector>

namespace dirac_fields {

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// sbp, pairing, dirac, lemma38, lemma46, energy, maxwell, equivalence.
const std::vector<std::string>& verify_suite_names();

/// Runs the named suites in the order given (all of them if empty). Throws
/// std::invalid_argument for an unknown name.
std::vector<CheckResult> run_verify(const std::vector<std::string>& suites, std::uint64_t seed);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_VERIFY_HPP
