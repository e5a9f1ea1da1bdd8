// SPDX-License-Identifier: Apache-2.0
#include "circex/generators.hpp"

#include "circex/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace circex {

namespace {

const double kSqrt3 = std::sqrt(3.0);

double student_scale(double df) { return std::sqrt((df - 2.0) / df); }

template <class F>
double integrate(F f, double lo, double hi)
{
    if (!(hi > lo))
        return 0.0;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, 1e-13,
                                                                        &err);
}

// density of the standardized Student-t at x
double student_pdf(double df, double x)
{
    const double sc = student_scale(df);
    boost::math::students_t_distribution<double> t(df);
    return boost::math::pdf(t, x / sc) / sc;
}

} // namespace

std::string_view DistributionSpec::name() const
{
    switch (kind) {
    case DistKind::StandardGaussian: return "gaussian";
    case DistKind::Rademacher: return "rademacher";
    case DistKind::UniformStandardized: return "uniform";
    case DistKind::ExponentialCentered: return "exp-centered";
    case DistKind::StudentTStandardized: return "student-t";
    }
    return "unknown";
}

DistKind parse_dist_kind(std::string_view name)
{
    if (name == "gaussian")
        return DistKind::StandardGaussian;
    if (name == "rademacher")
        return DistKind::Rademacher;
    if (name == "uniform")
        return DistKind::UniformStandardized;
    if (name == "exp-centered")
        return DistKind::ExponentialCentered;
    if (name == "student-t")
        return DistKind::StudentTStandardized;
    throw InvalidArgument("unknown distribution '" + std::string(name) + "'");
}

void DistributionSpec::validate() const
{
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw InvalidArgument("delta must be positive and finite");
    if (kind == DistKind::StudentTStandardized && !(df > 2.0 + delta))
        throw InvalidArgument("student-t needs df > 2 + delta (df = " + std::to_string(df) +
                              ", delta = " + std::to_string(delta) + ")");
}

double DistributionSpec::moment_2_plus_delta() const
{
    validate();
    const double s = 2.0 + delta;
    switch (kind) {
    case DistKind::StandardGaussian:
        return std::pow(2.0, s / 2.0) * std::tgamma((s + 1.0) / 2.0) / std::sqrt(std::numbers::pi);
    case DistKind::Rademacher:
        return 1.0;
    case DistKind::UniformStandardized:
        return std::pow(kSqrt3, s) / (s + 1.0);
    case DistKind::ExponentialCentered: {
        // |E - 1|^s for E ~ Exp(1): the part above 1 is e^{-1} Gamma(s+1)
        const double below = integrate([s](double e) { return std::pow(1.0 - e, s) * std::exp(-e); },
                                       0.0, 1.0);
        return below + std::exp(-1.0) * std::tgamma(s + 1.0);
    }
    case DistKind::StudentTStandardized:
        return std::pow(student_scale(df), s) * std::pow(df, s / 2.0) *
               std::tgamma((s + 1.0) / 2.0) * std::tgamma((df - s) / 2.0) /
               (std::sqrt(std::numbers::pi) * std::tgamma(df / 2.0));
    }
    return 0.0;
}

GeneratingSequence sample_sequence(const DistributionSpec& spec, std::size_t n, CounterRng& stream)
{
    spec.validate();
    if (n < 3)
        throw InvalidArgument("dimension n must be >= 3, got " + std::to_string(n));

    std::vector<double> xs(n);
    switch (spec.kind) {
    case DistKind::StandardGaussian: {
        std::normal_distribution<double> d(0.0, 1.0);
        for (auto& x : xs)
            x = d(stream);
        break;
    }
    case DistKind::Rademacher:
        for (auto& x : xs)
            x = (stream() >> 63) ? 1.0 : -1.0;
        break;
    case DistKind::UniformStandardized: {
        std::uniform_real_distribution<double> d(-kSqrt3, kSqrt3);
        for (auto& x : xs)
            x = d(stream);
        break;
    }
    case DistKind::ExponentialCentered: {
        std::exponential_distribution<double> d(1.0);
        for (auto& x : xs)
            x = d(stream) - 1.0;
        break;
    }
    case DistKind::StudentTStandardized: {
        std::student_t_distribution<double> d(spec.df);
        const double sc = student_scale(spec.df);
        for (auto& x : xs)
            x = d(stream) * sc;
        break;
    }
    }
    return GeneratingSequence(std::move(xs), {std::string(spec.name()), 0, -1});
}

double truncation_level(std::size_t n, double delta)
{
    return std::pow(static_cast<double>(n), 1.0 / (2.0 + delta));
}

double truncated_mean(const DistributionSpec& spec, double level)
{
    if (spec.symmetric())
        return 0.0;
    // E = xi + 1 ~ Exp(1); the antiderivative of (e - 1) e^{-e} is -e e^{-e}
    const double lo = std::max(0.0, 1.0 - level);
    const double hi = 1.0 + level;
    return lo * std::exp(-lo) - hi * std::exp(-hi);
}

double truncated_variance(const DistributionSpec& spec, double level)
{
    const double c = level;
    double second = 0.0;
    switch (spec.kind) {
    case DistKind::StandardGaussian:
        second = std::erf(c / std::numbers::sqrt2) -
                 c * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * c * c);
        break;
    case DistKind::Rademacher:
        second = c >= 1.0 ? 1.0 : 0.0;
        break;
    case DistKind::UniformStandardized:
        second = c >= kSqrt3 ? 1.0 : c * c * c / (3.0 * kSqrt3);
        break;
    case DistKind::ExponentialCentered: {
        // antiderivative of (e - 1)^2 e^{-e} is -(e^2 + 1) e^{-e}
        const double lo = std::max(0.0, 1.0 - c);
        const double hi = 1.0 + c;
        second = (lo * lo + 1.0) * std::exp(-lo) - (hi * hi + 1.0) * std::exp(-hi);
        break;
    }
    case DistKind::StudentTStandardized: {
        const double df = spec.df;
        second = 2.0 * integrate([df](double x) { return x * x * student_pdf(df, x); }, 0.0, c);
        break;
    }
    }
    const double m = truncated_mean(spec, level);
    return second - m * m;
}

GeneratingSequence truncate(const GeneratingSequence& seq, const DistributionSpec& spec)
{
    spec.validate();
    const double level = truncation_level(seq.size(), spec.delta);
    const double m = truncated_mean(spec, level);
    std::vector<double> out(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) {
        const double x = seq[j];
        out[j] = (std::abs(x) <= level ? x : 0.0) - m;
    }
    return GeneratingSequence(std::move(out), seq.provenance());
}

SmoothingParams make_smoothing_params(const DistributionSpec& spec, std::size_t n, double eta)
{
    spec.validate();
    if (!(eta > 0.0 && eta < 1.0))
        throw InvalidArgument("eta must lie in (0, 1)");
    if (n < 3)
        throw InvalidArgument("dimension n must be >= 3, got " + std::to_string(n));
    SmoothingParams p;
    p.n = n;
    p.eta = eta;
    p.truncated_variance = truncated_variance(spec, truncation_level(n, spec.delta));
    const double expo = -0.25 + (1.0 - eta) / (2.0 * (2.0 + spec.delta));
    p.s_n = std::sqrt(p.truncated_variance) * std::pow(static_cast<double>(n), expo);
    return p;
}

std::vector<double> smoothing_noise(std::size_t n, CounterRng& stream)
{
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& x : out)
        x = d(stream);
    return out;
}

GeneratingSequence smooth(const GeneratingSequence& seq, const SmoothingParams& params,
                          CounterRng& stream)
{
    if (params.n != seq.size())
        throw InvalidArgument("smoothing parameters built for n = " + std::to_string(params.n) +
                              ", got sequence of length " + std::to_string(seq.size()));
    const auto noise = smoothing_noise(seq.size(), stream);
    std::vector<double> out(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j)
        out[j] = seq[j] + params.s_n * noise[j];
    return GeneratingSequence(std::move(out), seq.provenance());
}

} // namespace circex
