// SPDX-License-Identifier: Apache-2.0
//
// Closed-form limit laws for the extremal singular values of random
// circulant matrices, the normalizing constants that go with them, and the
// exact finite-n joint law of (sigma_min, sigma_max) for Gaussian entries.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>

namespace circex {

double rayleigh_cdf(double x);
double gumbel_cdf(double y);
double frechet_cdf(double z);
double exponential_cdf(double x, double rate);
/// P(chi^2_1 <= t), via erf(sqrt(t/2)).
double chi_square1_cdf(double t);
/// P(chi^2_1 > t), computed with erfc so it stays accurate for large t.
double chi_square1_sf(double t);

/// Joint limit R(x) * G(y) of (sigma_min, normalized sigma_max).
double joint_limit_cdf(double x, double y);

enum class LawKind { Rayleigh, Gumbel, Frechet, Exponential, ChiSquare1 };

/// One of the five univariate laws used by the toolkit.
class LimitLaw {
public:
    static LimitLaw rayleigh() { return LimitLaw(LawKind::Rayleigh, 0.0); }
    static LimitLaw gumbel() { return LimitLaw(LawKind::Gumbel, 0.0); }
    static LimitLaw frechet() { return LimitLaw(LawKind::Frechet, 0.0); }
    static LimitLaw exponential(double rate);
    static LimitLaw chi_square1() { return LimitLaw(LawKind::ChiSquare1, 0.0); }

    LawKind kind() const noexcept { return kind_; }
    double rate() const noexcept { return rate_; }

    double cdf(double x) const;
    /// Inverse cdf on (0,1); p = 0 and p = 1 map to the support endpoints.
    double quantile(double p) const;

    /// Inverse-transform draw from any uniform random bit generator.
    template <class Urbg>
    double sample(Urbg& gen) const {
        // (0,1) open interval keeps every quantile finite
        double u;
        do {
            u = std::generate_canonical<double, 53>(gen);
        } while (u <= 0.0);
        return quantile(u);
    }

private:
    LimitLaw(LawKind kind, double rate) : kind_(kind), rate_(rate) {}

    LawKind kind_;
    double rate_;
};

/// Centering/scaling constants for dimension n and matrix power p.
struct NormalizingConstants {
    std::int64_t n = 0;
    int p = 1;
    double a_n = 0.0;         ///< sqrt(n ln(n/2))
    double b_n = 0.0;         ///< sqrt(n / ln(n/2)) / 2
    double beta_n = 0.0;      ///< sqrt(2/n)
    double kappa_scale = 0.0; ///< sqrt(n ln(n) / 2)
    double A_p = 0.0;         ///< a_n^p
    /// Scale for sigma_max(C^p): p * sum_{j<p} a_n^j b_n^(p-j). Equals b_n for p = 1.
    double B_p = 0.0;
    /// The closed form p * b_n^p * (2^p - 1). Kept for reference only; it
    /// does not normalize sigma_max(C^p) to a Gumbel limit when p >= 2.
    double B_p_closed_form = 0.0;
};

/// Throws InvalidArgument for n < 3 or p < 1.
NormalizingConstants normalizers(std::int64_t n, int p = 1);

/// Limit laws for the p-th power of C: max keeps G, min becomes R(x^(1/p)),
/// the condition number becomes F(z^(1/p)).
struct PowerLaws {
    std::function<double(double)> max_cdf;
    std::function<double(double)> min_cdf;
    std::function<double(double)> kappa_cdf;
};

PowerLaws power_law_cdfs(int p);

/// One group of independent, identically distributed nonnegative variables
/// in a min/max computation: `count` copies with P(Y <= t) = `below_t`
/// and P(s < Y <= t) = `between`.
struct MinMaxFactor {
    std::int64_t count = 1;
    double below_t = 0.0;
    double between = 0.0;
};

/// P(min <= s, max <= t) = prod P(Y <= t) - prod P(s < Y <= t), with the
/// products accumulated in log space.
double minmax_joint_from_factors(std::span<const MinMaxFactor> factors);

/// Exact P(sigma_min <= x, sigma_max <= b_n y + a_n) for i.i.d. standard
/// Gaussian entries. Throws InvalidArgument for n < 3 or x < 0.
double gaussian_exact_joint_cdf(std::int64_t n, double x, double y);

} // namespace circex
