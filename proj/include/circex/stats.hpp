// SPDX-License-Identifier: Apache-2.0
//
// Empirical distributions and goodness-of-fit against the closed-form laws.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace circex {

using CdfFn = std::function<double(double)>;
using JointCdfFn = std::function<double(double, double)>;

struct SampleProvenance {
    std::string distribution;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::string flags;
};

/// One statistic across replications, kept sorted. Realizations where the
/// statistic is undefined (kappa with sigma_min = 0) are only counted.
class EmpiricalSample {
public:
    EmpiricalSample() = default;
    EmpiricalSample(std::vector<double> values, std::int64_t n, std::size_t undefined_count = 0,
                    SampleProvenance provenance = {});

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    std::int64_t n() const noexcept { return n_; }
    std::size_t replications() const noexcept { return values_.size() + undefined_; }
    std::size_t undefined_count() const noexcept { return undefined_; }
    const SampleProvenance& provenance() const noexcept { return provenance_; }

    /// Sort-merge of two partial samples of the same statistic.
    EmpiricalSample merged(const EmpiricalSample& other) const;

private:
    std::vector<double> values_;
    std::int64_t n_ = 0;
    std::size_t undefined_ = 0;
    SampleProvenance provenance_;
};

struct GridDetail {
    double x = 0.0;
    double y = 0.0;
    double empirical = 0.0;
    double theoretical = 0.0;
    double gap = 0.0;
};

struct TestReport {
    std::string statistic_name;
    double ks_distance = 0.0;
    std::size_t sample_size = 0;
    double threshold = 0.0;
    bool pass = false;
    std::vector<GridDetail> grid_details;
};

TestReport make_report(std::string name, double distance, std::size_t sample_size, double threshold);

/// Fraction of values <= x. Throws InvalidArgument on an empty sample.
double empirical_cdf(const EmpiricalSample& sample, double x);

/// sup_x |F_N(x) - F(x)|, checked at both one-sided limits of every jump.
double ks_statistic(const EmpiricalSample& sample, const CdfFn& cdf);
double ks_statistic(std::span<const double> sorted_values, const CdfFn& cdf);

/// Asymptotic Kolmogorov critical value c / sqrt(N); 1.36 at 95%.
inline double kolmogorov_threshold(std::size_t n, double c = 1.36)
{
    return c / std::sqrt(static_cast<double>(n));
}

/// Default grid levels (2i - 1) / (2g), i = 1..g; g = 5 gives 0.1, 0.3, ..., 0.9.
std::vector<double> grid_levels(int g);

/// Tensor grid of quantiles of two laws at the given levels.
std::vector<std::pair<double, double>> quantile_grid(const CdfFn& x_quantile, const CdfFn& y_quantile,
                                                     std::span<const double> levels);

struct JointReports {
    TestReport joint;        ///< sup |F_joint - theoretical|
    TestReport independence; ///< sup |F_joint - F_min F_max|
};

/// Paired samples: mins[r] and maxs[r] come from the same realization.
/// Throws InvalidArgument if lengths differ or are zero.
JointReports joint_discrepancy(std::span<const double> mins, std::span<const double> maxs,
                               std::span<const std::pair<double, double>> grid,
                               const JointCdfFn& theoretical, double joint_threshold,
                               double independence_threshold);

/// Empirical P(mins <= x, maxs <= y) over paired samples.
double empirical_joint_cdf(std::span<const double> mins, std::span<const double> maxs, double x,
                           double y);

/// P(min_j Y_j <= s, max_j Y_j <= t) for independent Y_j with the given cdfs.
double minmax_joint_oracle(std::span<const CdfFn> cdfs, double s, double t);

/// Bonferroni bounds from S_1..S_{2 ell} (s_values[j-1] = S_j).
/// Throws InvalidArgument for ell < 1 or fewer than 2 ell values.
std::pair<double, double> bonferroni_bounds(std::span<const double> s_values, int ell);

} // namespace circex
