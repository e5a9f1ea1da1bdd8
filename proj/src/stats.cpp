// SPDX-License-Identifier: Apache-2.0
#include "circex/stats.hpp"

#include "circex/error.hpp"
#include "circex/laws.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace circex {

EmpiricalSample::EmpiricalSample(std::vector<double> values, std::int64_t n,
                                 std::size_t undefined_count, SampleProvenance provenance)
    : values_(std::move(values)), n_(n), undefined_(undefined_count),
      provenance_(std::move(provenance))
{
    std::sort(values_.begin(), values_.end());
}

EmpiricalSample EmpiricalSample::merged(const EmpiricalSample& other) const
{
    if (other.n_ != n_)
        throw InvalidArgument("cannot merge samples from different dimensions");
    EmpiricalSample out;
    out.values_.reserve(values_.size() + other.values_.size());
    std::merge(values_.begin(), values_.end(), other.values_.begin(), other.values_.end(),
               std::back_inserter(out.values_));
    out.n_ = n_;
    out.undefined_ = undefined_ + other.undefined_;
    out.provenance_ = provenance_;
    return out;
}

TestReport make_report(std::string name, double distance, std::size_t sample_size, double threshold)
{
    TestReport r;
    r.statistic_name = std::move(name);
    r.ks_distance = distance;
    r.sample_size = sample_size;
    r.threshold = threshold;
    r.pass = distance <= threshold;
    return r;
}

double empirical_cdf(const EmpiricalSample& sample, double x)
{
    if (sample.empty())
        throw InvalidArgument("empirical cdf of an empty sample");
    const auto v = sample.values();
    const auto it = std::upper_bound(v.begin(), v.end(), x);
    return static_cast<double>(it - v.begin()) / static_cast<double>(v.size());
}

double ks_statistic(std::span<const double> v, const CdfFn& cdf)
{
    if (v.empty())
        throw InvalidArgument("KS statistic of an empty sample");
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i])
            ++j;
        // left limit i/N, right limit j/N at the jump located at v[i]
        const double f = cdf(v[i]);
        d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                      std::abs(static_cast<double>(j) / n - f)});
        i = j;
    }
    return d;
}

double ks_statistic(const EmpiricalSample& sample, const CdfFn& cdf)
{
    return ks_statistic(sample.values(), cdf);
}

std::vector<double> grid_levels(int g)
{
    if (g < 1)
        throw InvalidArgument("grid size must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(g));
    for (int i = 1; i <= g; ++i)
        out[static_cast<std::size_t>(i - 1)] = (2.0 * i - 1.0) / (2.0 * g);
    return out;
}

std::vector<std::pair<double, double>> quantile_grid(const CdfFn& x_quantile, const CdfFn& y_quantile,
                                                     std::span<const double> levels)
{
    std::vector<std::pair<double, double>> grid;
    grid.reserve(levels.size() * levels.size());
    for (double px : levels)
        for (double py : levels)
            grid.emplace_back(x_quantile(px), y_quantile(py));
    return grid;
}

double empirical_joint_cdf(std::span<const double> mins, std::span<const double> maxs, double x,
                           double y)
{
    if (mins.size() != maxs.size() || mins.empty())
        throw InvalidArgument("paired samples must be nonempty and of equal length");
    std::size_t count = 0;
    for (std::size_t r = 0; r < mins.size(); ++r)
        if (mins[r] <= x && maxs[r] <= y)
            ++count;
    return static_cast<double>(count) / static_cast<double>(mins.size());
}

JointReports joint_discrepancy(std::span<const double> mins, std::span<const double> maxs,
                               std::span<const std::pair<double, double>> grid,
                               const JointCdfFn& theoretical, double joint_threshold,
                               double independence_threshold)
{
    if (mins.size() != maxs.size())
        throw InvalidArgument("paired samples differ in length (" + std::to_string(mins.size()) +
                              " vs " + std::to_string(maxs.size()) + ")");
    if (mins.empty())
        throw InvalidArgument("paired samples are empty");

    std::vector<double> smin(mins.begin(), mins.end());
    std::vector<double> smax(maxs.begin(), maxs.end());
    std::sort(smin.begin(), smin.end());
    std::sort(smax.begin(), smax.end());
    const double n = static_cast<double>(mins.size());
    auto marginal = [n](const std::vector<double>& s, double v) {
        return static_cast<double>(std::upper_bound(s.begin(), s.end(), v) - s.begin()) / n;
    };

    JointReports out;
    double joint_gap = 0.0;
    double indep_gap = 0.0;
    std::vector<GridDetail> joint_details;
    std::vector<GridDetail> indep_details;
    for (const auto& [x, y] : grid) {
        const double fj = empirical_joint_cdf(mins, maxs, x, y);
        const double th = theoretical(x, y);
        const double prod = marginal(smin, x) * marginal(smax, y);
        joint_details.push_back({x, y, fj, th, std::abs(fj - th)});
        indep_details.push_back({x, y, fj, prod, std::abs(fj - prod)});
        joint_gap = std::max(joint_gap, std::abs(fj - th));
        indep_gap = std::max(indep_gap, std::abs(fj - prod));
    }
    out.joint = make_report("joint", joint_gap, mins.size(), joint_threshold);
    out.joint.grid_details = std::move(joint_details);
    out.independence = make_report("independence", indep_gap, mins.size(), independence_threshold);
    out.independence.grid_details = std::move(indep_details);
    return out;
}

double minmax_joint_oracle(std::span<const CdfFn> cdfs, double s, double t)
{
    std::vector<MinMaxFactor> factors;
    factors.reserve(cdfs.size());
    for (const auto& f : cdfs) {
        const double ft = f(t);
        const double fs = f(s);
        factors.push_back({1, ft, s < t ? std::max(0.0, ft - fs) : 0.0});
    }
    return minmax_joint_from_factors(factors);
}

std::pair<double, double> bonferroni_bounds(std::span<const double> s_values, int ell)
{
    if (ell < 1)
        throw InvalidArgument("Bonferroni order must be >= 1");
    const auto need = static_cast<std::size_t>(2 * ell);
    if (s_values.size() < need)
        throw InvalidArgument("Bonferroni bounds of order " + std::to_string(ell) + " need " +
                              std::to_string(need) + " S_j values");
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t j = 1; j <= need; ++j) {
        const double term = (j % 2 == 1 ? 1.0 : -1.0) * s_values[j - 1];
        lower += term;
        if (j < need)
            upper += term;
    }
    return {lower, upper};
}

} // namespace circex
