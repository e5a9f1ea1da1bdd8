// SPDX-License-Identifier: Apache-2.0
//
// I.i.d. generating sequences with zero mean, unit variance and a finite
// (2 + delta)-th absolute moment, plus the truncation and Gaussian
// smoothing transforms applied to them.
#pragma once

#include "circex/circulant.hpp"
#include "circex/rng.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace circex {

enum class DistKind {
    StandardGaussian,
    Rademacher,
    UniformStandardized,
    ExponentialCentered,
    StudentTStandardized,
};

struct DistributionSpec {
    DistKind kind = DistKind::StandardGaussian;
    double delta = 1.0;
    double df = 5.0; ///< Student-t only

    static DistributionSpec gaussian(double delta = 1.0) { return {DistKind::StandardGaussian, delta}; }
    static DistributionSpec rademacher(double delta = 1.0) { return {DistKind::Rademacher, delta}; }
    static DistributionSpec uniform(double delta = 1.0) { return {DistKind::UniformStandardized, delta}; }
    static DistributionSpec exp_centered(double delta = 1.0) { return {DistKind::ExponentialCentered, delta}; }
    static DistributionSpec student_t(double df = 5.0, double delta = 0.5)
    {
        return {DistKind::StudentTStandardized, delta, df};
    }

    static constexpr double declared_mean = 0.0;
    static constexpr double declared_variance = 1.0;

    /// CLI name: gaussian, rademacher, uniform, exp-centered, student-t.
    std::string_view name() const;
    bool symmetric() const { return kind != DistKind::ExponentialCentered; }
    /// E|xi|^(2+delta), analytic or by quadrature.
    double moment_2_plus_delta() const;
    /// Throws InvalidArgument if delta <= 0 or (Student-t) df <= 2 + delta.
    void validate() const;
};

/// Throws InvalidArgument on an unknown name.
DistKind parse_dist_kind(std::string_view name);

GeneratingSequence sample_sequence(const DistributionSpec& spec, std::size_t n, CounterRng& stream);

/// Truncation level n^(1/(2+delta)).
double truncation_level(std::size_t n, double delta);
/// E[xi 1{|xi| <= level}].
double truncated_mean(const DistributionSpec& spec, double level);
/// Var(xi 1{|xi| <= level}).
double truncated_variance(const DistributionSpec& spec, double level);

/// xi_j 1{|xi_j| <= n^(1/s)} - E[xi_0 1{|xi_0| <= n^(1/s)}], s = 2 + delta.
GeneratingSequence truncate(const GeneratingSequence& seq, const DistributionSpec& spec);

struct SmoothingParams {
    std::size_t n = 0;
    double s_n = 0.0;
    double eta = 0.05;
    double truncated_variance = 1.0;
};

/// s_n = sqrt(Var(truncated xi)) * n^(-1/4 + (1 - eta) / (2 (2 + delta))).
SmoothingParams make_smoothing_params(const DistributionSpec& spec, std::size_t n, double eta = 0.05);

/// n standard Gaussian draws; the noise `smooth` adds, scaled by s_n.
std::vector<double> smoothing_noise(std::size_t n, CounterRng& stream);

/// seq + s_n * N with N drawn from `stream`.
GeneratingSequence smooth(const GeneratingSequence& seq, const SmoothingParams& params,
                          CounterRng& stream);

} // namespace circex
