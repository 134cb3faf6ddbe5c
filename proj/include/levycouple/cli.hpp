#pragma once

#include <string>

namespace lc {

// Entry point of the levycouple tool. Exit codes: 0 ok, 1 verification failure,
// 2 configuration error, 3 numerical or resource failure.
int run_cli(int argc, char** argv);

// beta,upper_exponent,lower_exponent for beta = 1 + k/steps, k = 0..steps
std::string figure1_csv(int steps);

}  // namespace lc
