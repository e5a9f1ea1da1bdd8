// SPDX-License-Identifier: Apache-2.0
#include "circex/circulant.hpp"

#include "circex/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace circex {

using cd = std::complex<double>;

GeneratingSequence::GeneratingSequence(std::vector<double> entries, SequenceProvenance provenance)
    : entries_(std::move(entries)), provenance_(std::move(provenance))
{
    if (entries_.size() < 3)
        throw InvalidArgument("generating sequence needs n >= 3, got " +
                              std::to_string(entries_.size()));
    for (std::size_t j = 0; j < entries_.size(); ++j)
        if (!std::isfinite(entries_[j]))
            throw InvalidArgument("generating sequence entry " + std::to_string(j) +
                                  " is not finite");
}

SpectrumEngine::SpectrumEngine(std::size_t n) : plan_(n), buffer_(n) {}

void SpectrumEngine::compute(std::span<const double> entries, Spectrum& out)
{
    const std::size_t n = plan_.size();
    if (entries.size() != n)
        throw InvalidArgument("spectrum engine built for n = " + std::to_string(n) +
                              ", got sequence of length " + std::to_string(entries.size()));
    for (std::size_t j = 0; j < n; ++j)
        buffer_[j] = cd(entries[j], 0.0);
    out.eigenvalues.resize(n);
    out.moduli.resize(n);
    plan_.execute(buffer_, out.eigenvalues, FftSign::Positive);
    for (std::size_t k = 0; k < n; ++k)
        out.moduli[k] = std::abs(out.eigenvalues[k]);
}

Spectrum spectrum(const GeneratingSequence& seq)
{
    if (seq.size() < 3)
        throw InvalidArgument("spectrum needs n >= 3");
    SpectrumEngine engine(seq.size());
    Spectrum out;
    engine.compute(seq.entries(), out);
    return out;
}

Spectrum spectrum_naive(const GeneratingSequence& seq)
{
    const std::size_t n = seq.size();
    if (n < 3)
        throw InvalidArgument("spectrum needs n >= 3");
    if (n > kNaiveSpectrumLimit)
        throw InvalidArgument("naive spectrum limited to n <= " +
                              std::to_string(kNaiveSpectrumLimit) + ", got " + std::to_string(n));

    using ld = long double;
    const ld step = 2.0L * std::numbers::pi_v<ld> / static_cast<ld>(n);
    std::vector<ld> c(n), s(n);
    for (std::size_t m = 0; m < n; ++m) {
        c[m] = std::cos(step * static_cast<ld>(m));
        s[m] = std::sin(step * static_cast<ld>(m));
    }

    Spectrum out;
    out.eigenvalues.resize(n);
    out.moduli.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        ld re = 0.0L, im = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = (k * j) % n;
            re += static_cast<ld>(seq[j]) * c[idx];
            im += static_cast<ld>(seq[j]) * s[idx];
        }
        out.eigenvalues[k] = cd(static_cast<double>(re), static_cast<double>(im));
        out.moduli[k] = std::abs(out.eigenvalues[k]);
    }
    return out;
}

GeneratingSequence reconstruct(const Spectrum& spec)
{
    const std::size_t n = spec.size();
    if (n < 3)
        throw InvalidArgument("spectrum needs n >= 3");

    double scale = 1.0;
    for (const auto& l : spec.eigenvalues)
        scale = std::max(scale, std::abs(l));
    const double tol = 1e-6 * scale;
    if (std::abs(spec.eigenvalues[0].imag()) > tol)
        throw InvalidArgument("spectrum is not conjugate-symmetric at k = 0");
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(spec.eigenvalues[k] - std::conj(spec.eigenvalues[n - k])) > tol)
            throw InvalidArgument("spectrum is not conjugate-symmetric at k = " +
                                  std::to_string(k));

    FftPlan plan(n);
    std::vector<cd> rows(n);
    plan.execute(spec.eigenvalues, rows, FftSign::Negative);
    std::vector<double> entries(n);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j)
        entries[j] = rows[j].real() * inv;
    return GeneratingSequence(std::move(entries));
}

namespace {

void fill_normalized(ExtremalStats& s, const NormalizingConstants& c)
{
    s.norm_min = s.sigma_min;
    s.norm_max = (s.sigma_max - c.A_p) / c.B_p;
    if (s.kappa)
        s.norm_kappa = *s.kappa / std::pow(c.kappa_scale, c.p);
    else
        s.norm_kappa.reset();
}

} // namespace

ExtremalStats extremal_stats(const Spectrum& spec, const NormalizingConstants& consts,
                             bool include_zero_index)
{
    if (static_cast<std::int64_t>(spec.size()) != consts.n)
        throw InvalidArgument("normalizing constants for n = " + std::to_string(consts.n) +
                              " applied to spectrum of length " + std::to_string(spec.size()));
    const std::size_t first = include_zero_index ? 0 : 1;
    const auto [lo, hi] = std::minmax_element(spec.moduli.begin() + first, spec.moduli.end());

    ExtremalStats s;
    s.n = consts.n;
    s.power = 1;
    s.include_zero_index = include_zero_index;
    s.sigma_min = *lo;
    s.sigma_max = *hi;
    if (s.sigma_min > 0.0)
        s.kappa = s.sigma_max / s.sigma_min;
    fill_normalized(s, consts.p == 1 ? consts : normalizers(consts.n, 1));
    return s;
}

ExtremalStats power_stats(const ExtremalStats& stats, int p)
{
    if (p < 1)
        throw InvalidArgument("power p must be >= 1, got " + std::to_string(p));
    // stats of C^p composed again would need the base; only raise from p = 1
    if (stats.power != 1)
        throw InvalidArgument("power_stats expects stats of the base matrix");
    if (p == 1)
        return stats;
    ExtremalStats s = stats;
    s.power = p;
    s.sigma_min = std::pow(stats.sigma_min, p);
    s.sigma_max = std::pow(stats.sigma_max, p);
    if (stats.kappa)
        s.kappa = std::pow(*stats.kappa, p);
    fill_normalized(s, normalizers(stats.n, p));
    return s;
}

} // namespace circex
