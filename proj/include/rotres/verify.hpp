// Verification suites behind `rotres verify`.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rotres/report.hpp"

namespace rotres {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int trials = -1;  // suite default when negative
  int N = 8;
};

/// cancellations, small-divisor, pell, trilinear, propagator.
const std::vector<std::string>& verify_suites();

/// Throws InvalidInput for an unknown suite.
std::vector<VerifyReport> run_verify_suite(const std::string& suite, const VerifyOptions& opt);

}  // namespace rotres
