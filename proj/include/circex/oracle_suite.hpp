// SPDX-License-Identifier: Apache-2.0
//
// Property and oracle checks over the numerical core: fast vs direct DFT,
// Parseval, conjugate symmetry, inversion, the truncation identity, the
// min/max product formula, Bonferroni brackets and the Rayleigh/Fréchet
// and Gaussian-pair/Exponential transforms.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace circex {

struct OracleOptions {
    std::uint64_t seed = 7;
    bool full = false;
    /// Debug only: conjugates the fast transform's output so the DFT checks must fail.
    bool inject_dft_fault = false;
};

struct OracleCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<OracleCheck> run_oracle_suite(const OracleOptions& options);

} // namespace circex
