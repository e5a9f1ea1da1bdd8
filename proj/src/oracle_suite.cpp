// SPDX-License-Identifier: Apache-2.0
#include "circex/oracle_suite.hpp"

#include "circex/circulant.hpp"
#include "circex/generators.hpp"
#include "circex/laws.hpp"
#include "circex/rng.hpp"
#include "circex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace circex {

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

CounterRng oracle_stream(std::uint64_t seed, std::uint64_t n, std::uint64_t i)
{
    return CounterRng({seed, n, i, StreamRole::Oracle});
}

Spectrum fast_spectrum(const GeneratingSequence& s, bool fault)
{
    auto sp = spectrum(s);
    if (fault)
        for (auto& l : sp.eigenvalues)
            l = std::conj(l);
    return sp;
}

double max_modulus(const Spectrum& s)
{
    return *std::max_element(s.moduli.begin(), s.moduli.end());
}

// worst |a_k - b_k| / |b_k|; components far below the spectrum's scale are
// measured against 1e-6 of the largest modulus instead
double worst_relative(const Spectrum& a, const Spectrum& b)
{
    const double floor = 1e-6 * std::max(1e-300, max_modulus(b));
    double worst = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k)
        worst = std::max(worst, std::abs(a.eigenvalues[k] - b.eigenvalues[k]) /
                                    std::max(floor, b.moduli[k]));
    return worst;
}

OracleCheck check(std::string name, bool ok, std::string detail)
{
    return {std::move(name), ok, std::move(detail)};
}

constexpr std::size_t kDftLengths[] = {3, 5, 8, 17, 128, 257, 512};

OracleCheck dft_oracle(const OracleOptions& o)
{
    const int per = o.full ? 100 : 20;
    double worst = 0.0;
    for (auto n : kDftLengths)
        for (int i = 0; i < per; ++i) {
            auto rng = oracle_stream(o.seed, n, static_cast<std::uint64_t>(i));
            const auto s = sample_sequence(DistributionSpec::gaussian(), n, rng);
            worst = std::max(worst, worst_relative(fast_spectrum(s, o.inject_dft_fault), spectrum_naive(s)));
        }
    return check("dft_fast_vs_naive", worst <= 1e-9, "max relative error " + fmt(worst));
}

OracleCheck parseval_and_symmetry(const OracleOptions& o, bool symmetry)
{
    const int per = o.full ? 100 : 20;
    double worst = 0.0;
    for (auto n : kDftLengths)
        for (int i = 0; i < per; ++i) {
            auto rng = oracle_stream(o.seed, n + 1000, static_cast<std::uint64_t>(i));
            const auto s = sample_sequence(DistributionSpec::gaussian(), n, rng);
            const auto sp = fast_spectrum(s, o.inject_dft_fault);
            if (symmetry) {
                const double scale = max_modulus(sp);
                for (std::size_t k = 1; k < n; ++k)
                    worst = std::max(worst,
                                     std::abs(sp.eigenvalues[k] - std::conj(sp.eigenvalues[n - k])) /
                                         scale);
            } else {
                double lhs = 0.0, rhs = 0.0;
                for (double m : sp.moduli)
                    lhs += m * m;
                for (double x : s.entries())
                    rhs += x * x;
                rhs *= static_cast<double>(n);
                worst = std::max(worst, std::abs(lhs - rhs) / rhs);
            }
        }
    return check(symmetry ? "conjugate_symmetry" : "parseval", worst <= 1e-9,
                 "max relative error " + fmt(worst));
}

OracleCheck reconstruct_roundtrip(const OracleOptions& o)
{
    double worst = 0.0;
    for (std::size_t n : {3u, 17u, 128u, 257u, 1000u}) {
        auto rng = oracle_stream(o.seed, n + 2000, 0);
        const auto s = sample_sequence(DistributionSpec::gaussian(), n, rng);
        const auto back = reconstruct(spectrum(s));
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(back[j] - s[j]));
    }
    return check("reconstruct_roundtrip", worst <= 1e-9, "max abs error " + fmt(worst));
}

// For k >= 1 the centering constant sums to zero over a full period, so the
// truncated spectrum equals the spectrum of the clipped (uncentered) entries.
OracleCheck truncation_identity(const OracleOptions& o)
{
    double worst = 0.0;
    const std::size_t n = o.full ? 10000 : 4096;
    for (auto spec : {DistributionSpec::gaussian(1.0), DistributionSpec::exp_centered(1.0),
                      DistributionSpec::student_t(5.0, 0.5)}) {
        auto rng = oracle_stream(o.seed, n, 3000 + static_cast<std::uint64_t>(spec.kind));
        const auto s = sample_sequence(spec, n, rng);
        const double level = truncation_level(n, spec.delta);
        std::vector<double> clipped(n);
        for (std::size_t j = 0; j < n; ++j)
            clipped[j] = std::abs(s[j]) <= level ? s[j] : 0.0;
        const auto a = spectrum(truncate(s, spec));
        const auto b = spectrum(GeneratingSequence(clipped));
        const double scale = max_modulus(b);
        for (std::size_t k = 1; k < n; ++k)
            worst = std::max(worst, std::abs(a.eigenvalues[k] - b.eigenvalues[k]) / scale);
    }
    return check("truncation_identity", worst <= 1e-9, "max relative error " + fmt(worst));
}

OracleCheck minmax_enumeration()
{
    // two independent discrete uniforms on {1..K}: enumerate the K^2 outcomes
    constexpr int K = 8;
    const CdfFn u = [](double v) { return std::clamp(std::floor(v), 0.0, double(K)) / K; };
    const CdfFn cdfs[] = {u, u};
    double worst = 0.0;
    for (int s = 0; s <= K + 1; ++s)
        for (int t = 0; t <= K + 1; ++t) {
            int hits = 0;
            for (int a = 1; a <= K; ++a)
                for (int b = 1; b <= K; ++b)
                    if (std::min(a, b) <= s && std::max(a, b) <= t)
                        ++hits;
            const double exact = hits / double(K * K);
            worst = std::max(worst, std::abs(minmax_joint_oracle(cdfs, s, t) - exact));
        }
    // continuous uniform pair at (0.25, 0.75): 0.75^2 - 0.5^2
    const CdfFn cu = [](double v) { return std::clamp(v, 0.0, 1.0); };
    const CdfFn pair[] = {cu, cu};
    worst = std::max(worst, std::abs(minmax_joint_oracle(pair, 0.25, 0.75) - 0.3125));
    return check("minmax_vs_enumeration", worst <= 1e-15, "max abs error " + fmt(worst));
}

OracleCheck minmax_monte_carlo(const OracleOptions& o)
{
    const std::size_t N = o.full ? 100000 : 20000;
    const double tol = 3.0 / std::sqrt(static_cast<double>(N));
    double worst = 0.0;

    auto rng = oracle_stream(o.seed, 4000, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::exponential_distribution<double> e1(1.0), e2(2.0), e3(0.5);
    const CdfFn cu = [](double v) { return std::clamp(v, 0.0, 1.0); };
    const CdfFn uniform_pair[] = {cu, cu};
    const CdfFn exp_triple[] = {[](double v) { return exponential_cdf(v, 1.0); },
                                [](double v) { return exponential_cdf(v, 2.0); },
                                [](double v) { return exponential_cdf(v, 0.5); }};
    const std::pair<double, double> upts[] = {{0.25, 0.75}, {0.1, 0.5}, {0.5, 0.9}};
    const std::pair<double, double> epts[] = {{0.2, 1.5}, {0.5, 3.0}, {0.1, 0.8}};

    std::vector<std::pair<double, double>> u_draws(N), e_draws(N);
    for (auto& d : u_draws) {
        const double a = unif(rng), b = unif(rng);
        d = {std::min(a, b), std::max(a, b)};
    }
    for (auto& d : e_draws) {
        const double a = e1(rng), b = e2(rng), c = e3(rng);
        d = {std::min({a, b, c}), std::max({a, b, c})};
    }
    auto freq = [](const auto& draws, double s, double t) {
        std::size_t hits = 0;
        for (const auto& [lo, hi] : draws)
            hits += (lo <= s && hi <= t) ? 1 : 0;
        return static_cast<double>(hits) / static_cast<double>(draws.size());
    };
    for (auto [s, t] : upts)
        worst = std::max(worst, std::abs(freq(u_draws, s, t) - minmax_joint_oracle(uniform_pair, s, t)));
    for (auto [s, t] : epts)
        worst = std::max(worst, std::abs(freq(e_draws, s, t) - minmax_joint_oracle(exp_triple, s, t)));
    return check("minmax_vs_monte_carlo", worst <= tol,
                 "max gap " + fmt(worst) + " (budget " + fmt(tol) + ")");
}

OracleCheck bonferroni_enumeration()
{
    bool ok = true;
    std::string detail = "all systems bracketed";
    for (int m = 1; m <= 4 && ok; ++m)
        for (int mask = 0; mask < (1 << m) && ok; ++mask) {
            std::vector<double> p(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                p[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? 0.5 : 0.25;
            // S_j and the exact union by enumerating the 2^m outcomes
            std::vector<double> S(4, 0.0);
            double none = 1.0;
            for (int sub = 1; sub < (1 << m); ++sub) {
                double prob = 1.0;
                int size = 0;
                for (int i = 0; i < m; ++i)
                    if ((sub >> i) & 1) {
                        prob *= p[static_cast<std::size_t>(i)];
                        ++size;
                    }
                S[static_cast<std::size_t>(size - 1)] += prob;
            }
            for (double pi : p)
                none *= 1.0 - pi;
            const double uni = 1.0 - none;
            for (int ell = 1; ell <= 2; ++ell) {
                const auto [lo, hi] = bonferroni_bounds(S, ell);
                if (!(lo <= uni + 1e-15 && uni <= hi + 1e-15)) {
                    ok = false;
                    detail = "m=" + std::to_string(m) + " mask=" + std::to_string(mask) +
                             " ell=" + std::to_string(ell) + " not bracketed";
                }
            }
        }
    return check("bonferroni_enumeration", ok, detail);
}

OracleCheck rayleigh_frechet_transform(const OracleOptions& o)
{
    constexpr std::size_t N = 10000;
    auto rng = oracle_stream(o.seed, 5000, 0);
    const auto r = LimitLaw::rayleigh();
    std::vector<double> z(N);
    for (auto& v : z)
        v = std::numbers::sqrt2 / r.sample(rng);
    std::sort(z.begin(), z.end());
    const double d = ks_statistic(z, frechet_cdf);
    const double thr = kolmogorov_threshold(N);
    return check("rayleigh_inverse_is_frechet", d <= thr, "KS " + fmt(d) + " (budget " + fmt(thr) + ")");
}

OracleCheck gaussian_pair_exponential(const OracleOptions& o)
{
    constexpr std::size_t N = 10000;
    constexpr double sigma = 1.5;
    auto rng = oracle_stream(o.seed, 5001, 0);
    std::normal_distribution<double> g(0.0, sigma);
    std::vector<double> w(N);
    for (auto& v : w) {
        const double a = g(rng), b = g(rng);
        v = a * a + b * b;
    }
    std::sort(w.begin(), w.end());
    const double rate = 1.0 / (2.0 * sigma * sigma);
    const double d = ks_statistic(w, [rate](double x) { return exponential_cdf(x, rate); });
    const double thr = kolmogorov_threshold(N);
    return check("gaussian_pair_is_exponential", d <= thr,
                 "KS " + fmt(d) + " (budget " + fmt(thr) + ")");
}

OracleCheck ks_transform_invariance(const OracleOptions& o)
{
    constexpr std::size_t N = 5000;
    auto rng = oracle_stream(o.seed, 5002, 0);
    const auto r = LimitLaw::rayleigh();
    std::vector<double> x(N), x2(N);
    for (std::size_t i = 0; i < N; ++i) {
        x[i] = r.sample(rng);
        x2[i] = x[i] * x[i];
    }
    std::sort(x.begin(), x.end());
    std::sort(x2.begin(), x2.end());
    const double a = ks_statistic(x, rayleigh_cdf);
    const double b = ks_statistic(x2, [](double v) { return exponential_cdf(v, 0.5); });
    return check("ks_monotone_invariance", std::abs(a - b) <= 1e-12,
                 "|KS_R - KS_Exp| = " + fmt(std::abs(a - b)));
}

OracleCheck scaling_and_subadditivity(const OracleOptions& o)
{
    double worst_scale = 0.0, worst_kappa = 0.0, worst_sub = 0.0;
    const int per = o.full ? 50 : 10;
    for (std::size_t n : {5u, 64u, 257u})
        for (int i = 0; i < per; ++i) {
            auto rng = oracle_stream(o.seed, n + 6000, static_cast<std::uint64_t>(i));
            const auto s = sample_sequence(DistributionSpec::gaussian(), n, rng);
            const auto t = sample_sequence(DistributionSpec::uniform(), n, rng);
            const double c = -2.75;
            std::vector<double> cs(n), st(n);
            for (std::size_t j = 0; j < n; ++j) {
                cs[j] = c * s[j];
                st[j] = s[j] + t[j];
            }
            const auto sp = spectrum(s);
            const auto csp = spectrum(GeneratingSequence(cs));
            const double scale = max_modulus(sp) * std::abs(c);
            for (std::size_t k = 0; k < n; ++k)
                worst_scale = std::max(worst_scale, std::abs(csp.eigenvalues[k] - c * sp.eigenvalues[k]) / scale);
            const auto consts = normalizers(static_cast<std::int64_t>(n));
            const auto a = extremal_stats(sp, consts);
            const auto b = extremal_stats(csp, consts);
            if (a.kappa && b.kappa)
                worst_kappa = std::max(worst_kappa, std::abs(*a.kappa - *b.kappa) / *a.kappa);
            const auto tt = extremal_stats(spectrum(t), consts);
            const auto ss = extremal_stats(spectrum(GeneratingSequence(st)), consts);
            worst_sub = std::max(worst_sub, ss.sigma_max - (a.sigma_max + tt.sigma_max));
        }
    const bool ok = worst_scale <= 1e-9 && worst_kappa <= 1e-9 && worst_sub <= 1e-9;
    return check("scaling_and_subadditivity", ok,
                 "scale " + fmt(worst_scale) + ", kappa " + fmt(worst_kappa) + ", subadditivity excess " +
                     fmt(worst_sub));
}

// C^2 built entrywise from C_{jk} = xi_{(k - j) mod n}; its first row is a circulant generator
OracleCheck power_vs_matrix_square(const OracleOptions& o)
{
    double worst = 0.0;
    for (std::size_t n : {8u, 31u, 64u}) {
        auto rng = oracle_stream(o.seed, n + 7000, 0);
        const auto s = sample_sequence(DistributionSpec::gaussian(), n, rng);
        std::vector<double> row(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t m = 0; m < n; ++m)
                row[k] += s[m] * s[(k + n - m) % n];
        const auto consts = normalizers(static_cast<std::int64_t>(n));
        const auto base = extremal_stats(spectrum(s), consts);
        const auto viaPower = power_stats(base, 2);
        const auto direct = extremal_stats(spectrum_naive(GeneratingSequence(row)), consts);
        worst = std::max({worst, std::abs(viaPower.sigma_min - direct.sigma_min) / direct.sigma_max,
                          std::abs(viaPower.sigma_max - direct.sigma_max) / direct.sigma_max});
    }
    return check("power_vs_matrix_square", worst <= 1e-9, "max relative error " + fmt(worst));
}

} // namespace

std::vector<OracleCheck> run_oracle_suite(const OracleOptions& o)
{
    std::vector<OracleCheck> out;
    out.push_back(dft_oracle(o));
    out.push_back(parseval_and_symmetry(o, false));
    out.push_back(parseval_and_symmetry(o, true));
    out.push_back(reconstruct_roundtrip(o));
    out.push_back(truncation_identity(o));
    out.push_back(minmax_enumeration());
    out.push_back(minmax_monte_carlo(o));
    out.push_back(bonferroni_enumeration());
    out.push_back(rayleigh_frechet_transform(o));
    out.push_back(gaussian_pair_exponential(o));
    out.push_back(ks_transform_invariance(o));
    out.push_back(scaling_and_subadditivity(o));
    out.push_back(power_vs_matrix_square(o));
    return out;
}

} // namespace circex
