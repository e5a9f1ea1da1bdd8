// SPDX-License-Identifier: Apache-2.0
//
// Arbitrary-length complex DFT. Lengths whose prime factors are all small
// run through a recursive mixed-radix Cooley-Tukey; lengths with a large
// prime factor go through Bluestein's chirp-z reduction to a power-of-two
// convolution. Both paths are O(n log n).
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace circex {

/// Sign of the exponent: Positive computes sum_j x_j exp(+2 pi i k j / n).
enum class FftSign { Negative = -1, Positive = +1 };

class FftPlan {
public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(FftPlan&&) noexcept;
    FftPlan& operator=(FftPlan&&) noexcept;
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    std::size_t size() const noexcept { return n_; }
    bool uses_bluestein() const noexcept;

    /// Unnormalized transform, out[k] = sum_j in[j] exp(sign 2 pi i k j / n).
    /// `in` and `out` must both have length size() and must not alias.
    void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
                 FftSign sign) const;

private:
    struct Impl;
    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

} // namespace circex
