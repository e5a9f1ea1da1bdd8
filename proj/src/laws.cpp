// SPDX-License-Identifier: Apache-2.0
#include "circex/laws.hpp"

#include "circex/error.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace circex {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double rayleigh_cdf(double x)
{
    if (!(x > 0.0))
        return 0.0;
    return -std::expm1(-0.5 * x * x);
}

double gumbel_cdf(double y) { return std::exp(-std::exp(-y)); }

double frechet_cdf(double z)
{
    if (!(z > 0.0))
        return 0.0;
    return std::exp(-1.0 / (z * z));
}

double exponential_cdf(double x, double rate)
{
    if (!(x > 0.0))
        return 0.0;
    return -std::expm1(-rate * x);
}

double chi_square1_cdf(double t)
{
    if (!(t > 0.0))
        return 0.0;
    return std::erf(std::sqrt(0.5 * t));
}

double chi_square1_sf(double t)
{
    if (!(t > 0.0))
        return 1.0;
    return std::erfc(std::sqrt(0.5 * t));
}

double joint_limit_cdf(double x, double y) { return rayleigh_cdf(x) * gumbel_cdf(y); }

LimitLaw LimitLaw::exponential(double rate)
{
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw InvalidArgument("exponential rate must be positive and finite");
    return LimitLaw(LawKind::Exponential, rate);
}

double LimitLaw::cdf(double x) const
{
    switch (kind_) {
    case LawKind::Rayleigh: return rayleigh_cdf(x);
    case LawKind::Gumbel: return gumbel_cdf(x);
    case LawKind::Frechet: return frechet_cdf(x);
    case LawKind::Exponential: return exponential_cdf(x, rate_);
    case LawKind::ChiSquare1: return chi_square1_cdf(x);
    }
    return 0.0;
}

double LimitLaw::quantile(double p) const
{
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidArgument("quantile level must lie in [0,1], got " + std::to_string(p));
    switch (kind_) {
    case LawKind::Rayleigh:
        if (p == 1.0)
            return kInf;
        return std::sqrt(-2.0 * std::log1p(-p));
    case LawKind::Gumbel:
        if (p == 0.0)
            return -kInf;
        if (p == 1.0)
            return kInf;
        return -std::log(-std::log(p));
    case LawKind::Frechet:
        if (p == 0.0)
            return 0.0;
        if (p == 1.0)
            return kInf;
        return 1.0 / std::sqrt(-std::log(p));
    case LawKind::Exponential:
        if (p == 1.0)
            return kInf;
        return -std::log1p(-p) / rate_;
    case LawKind::ChiSquare1: {
        if (p == 1.0)
            return kInf;
        if (p == 0.0)
            return 0.0;
        // upper half via erfc_inv keeps relative accuracy near p = 1
        double r = p < 0.5 ? boost::math::erf_inv(p) : boost::math::erfc_inv(1.0 - p);
        return 2.0 * r * r;
    }
    }
    return 0.0;
}

NormalizingConstants normalizers(std::int64_t n, int p)
{
    if (n < 3)
        throw InvalidArgument("dimension n must be >= 3, got " + std::to_string(n));
    if (p < 1)
        throw InvalidArgument("power p must be >= 1, got " + std::to_string(p));

    const double nd = static_cast<double>(n);
    const double log_half = std::log(nd / 2.0);

    NormalizingConstants c;
    c.n = n;
    c.p = p;
    c.a_n = std::sqrt(nd * log_half);
    c.b_n = 0.5 * std::sqrt(nd / log_half);
    c.beta_n = std::sqrt(2.0 / nd);
    c.kappa_scale = std::sqrt(nd * std::log(nd) / 2.0);
    c.A_p = std::pow(c.a_n, p);

    double sum = 0.0;
    for (int j = 0; j < p; ++j)
        sum += std::pow(c.a_n, j) * std::pow(c.b_n, p - j);
    c.B_p = p * sum;
    c.B_p_closed_form = p * std::pow(c.b_n, p) * (std::pow(2.0, p) - 1.0);
    if (p == 1) {
        c.A_p = c.a_n;
        c.B_p = c.b_n;
    }
    return c;
}

PowerLaws power_law_cdfs(int p)
{
    if (p < 1)
        throw InvalidArgument("power p must be >= 1, got " + std::to_string(p));
    if (p == 1)
        return {gumbel_cdf, rayleigh_cdf, frechet_cdf};
    const double inv = 1.0 / p;
    return {
        gumbel_cdf,
        [inv](double x) { return x > 0.0 ? rayleigh_cdf(std::pow(x, inv)) : 0.0; },
        [inv](double z) { return z > 0.0 ? frechet_cdf(std::pow(z, inv)) : 0.0; },
    };
}

double minmax_joint_from_factors(std::span<const MinMaxFactor> factors)
{
    double log_all = 0.0;
    double log_between = 0.0;
    bool between_zero = false;
    for (const auto& f : factors) {
        if (f.count <= 0)
            continue;
        if (!(f.below_t > 0.0))
            return 0.0;
        log_all += static_cast<double>(f.count) * std::log(f.below_t);
        if (!(f.between > 0.0))
            between_zero = true;
        else
            log_between += static_cast<double>(f.count) * std::log(f.between);
    }
    if (between_zero)
        return std::exp(log_all);
    // exp(L1) - exp(L2) = exp(L1) * (1 - exp(L2 - L1)), L2 <= L1
    const double diff = std::min(0.0, log_between - log_all);
    return std::exp(log_all) * -std::expm1(diff);
}

double gaussian_exact_joint_cdf(std::int64_t n, double x, double y)
{
    if (!(x >= 0.0))
        throw InvalidArgument("x must be >= 0");
    const auto c = normalizers(n, 1);
    const double t = c.b_n * y + c.a_n;
    if (!(t > 0.0))
        return 0.0;

    const double nd = static_cast<double>(n);
    const double u = x * x / nd;
    const double v = t * t / nd;
    const std::int64_t q = n / 2;

    // |lambda_0|^2/n ~ chi^2_1; for even n so is |lambda_{n/2}|^2/n; the
    // remaining distinct indices up to n/2 give Exp(1) variables.
    MinMaxFactor chi;
    chi.count = (n % 2 == 0) ? 2 : 1;
    chi.below_t = chi_square1_cdf(v);
    chi.between = u < v ? chi_square1_sf(u) - chi_square1_sf(v) : 0.0;

    MinMaxFactor expo;
    expo.count = (n % 2 == 0) ? q - 1 : q;
    expo.below_t = -std::expm1(-v);
    expo.between = u < v ? std::exp(-u) - std::exp(-v) : 0.0;

    const MinMaxFactor factors[] = {chi, expo};
    return minmax_joint_from_factors(factors);
}

} // namespace circex
