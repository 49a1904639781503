#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deconv::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

//! |observed - expected| <= tolerance, packaged with the check name.
CheckResult check_constant(const std::string& name, double observed, double expected,
                           double tolerance);

//! The full battery: analytic bandwidth/AMISE constants, the stepsize-constant
//! argmin, the Fourier-oracle equivalence grid, the error-free reductions,
//! the antiderivative consistency, and the recursive/batch reduction
//! identity.
std::vector<CheckResult> run_all();

//! Prints one line per check; returns 0 when everything passed, 1 otherwise.
int report(const std::vector<CheckResult>& results, std::ostream& os);

} // namespace deconv::verify
