// SPDX-License-Identifier: Apache-2.0
//
// A circulant matrix is fixed by its first row xi_0..xi_{n-1}; its
// eigenvalues are lambda_k = sum_j xi_j exp(2 pi i k j / n), and since the
// matrix is normal its singular values are |lambda_k|.
#pragma once

#include "circex/fft.hpp"
#include "circex/laws.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace circex {

struct SequenceProvenance {
    std::string distribution;
    std::uint64_t seed = 0;
    std::int64_t replication = -1;
};

/// First row of a circulant matrix. Length >= 3, finite entries.
class GeneratingSequence {
public:
    GeneratingSequence() = default;
    /// Throws InvalidArgument on length < 3 or a non-finite entry.
    explicit GeneratingSequence(std::vector<double> entries, SequenceProvenance provenance = {});

    std::size_t size() const noexcept { return entries_.size(); }
    std::span<const double> entries() const noexcept { return entries_; }
    double operator[](std::size_t j) const { return entries_[j]; }
    const SequenceProvenance& provenance() const noexcept { return provenance_; }

private:
    std::vector<double> entries_;
    SequenceProvenance provenance_;
};

struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;
    std::vector<double> moduli;

    std::size_t size() const noexcept { return eigenvalues.size(); }
};

/// sigma_min, sigma_max and kappa of one realization. `kappa` and
/// `norm_kappa` are empty when sigma_min == 0.
struct ExtremalStats {
    std::int64_t n = 0;
    int power = 1;
    bool include_zero_index = true;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    std::optional<double> kappa;
    double norm_min = 0.0;
    double norm_max = 0.0;
    std::optional<double> norm_kappa;
};

/// Spectrum via the fast transform. Any n >= 3.
Spectrum spectrum(const GeneratingSequence& seq);

/// Direct O(n^2) evaluation; refuses n > kNaiveSpectrumLimit.
inline constexpr std::size_t kNaiveSpectrumLimit = 4096;
Spectrum spectrum_naive(const GeneratingSequence& seq);

/// Inverse transform back to the first row. Rejects spectra that are not
/// conjugate-symmetric to within 1e-6 (relative to the largest modulus).
GeneratingSequence reconstruct(const Spectrum& spec);

ExtremalStats extremal_stats(const Spectrum& spec, const NormalizingConstants& consts,
                             bool include_zero_index = true);

/// Stats of C^p from those of C; exact because circulants are normal.
ExtremalStats power_stats(const ExtremalStats& stats, int p);

/// Reusable transform for repeated spectra of one length. Not thread-safe;
/// give each worker its own.
class SpectrumEngine {
public:
    explicit SpectrumEngine(std::size_t n);

    std::size_t size() const noexcept { return plan_.size(); }
    /// Fills `out` (resized as needed) with the spectrum of `entries`.
    void compute(std::span<const double> entries, Spectrum& out);

private:
    FftPlan plan_;
    std::vector<std::complex<double>> buffer_;
};

} // namespace circex
