// SPDX-License-Identifier: Apache-2.0
#include "circex/error.hpp"
#include "circex/harness.hpp"
#include "circex/laws.hpp"

#include <cmath>

namespace circex {

namespace {

struct SuiteEntry {
    Suite suite;
    std::string_view name;
};

constexpr SuiteEntry kSuites[] = {
    {Suite::MarginalMin, "marginal_min"},   {Suite::MarginalMax, "marginal_max"},
    {Suite::Kappa, "kappa"},                {Suite::Joint, "joint"},
    {Suite::Independence, "independence"},  {Suite::GaussianExact, "gaussian_exact"},
    {Suite::Power, "power"},
};

std::string label(std::string_view kind, std::int64_t n)
{
    return std::string(kind) + "[n=" + std::to_string(n) + "]";
}

TestReport ks_report(std::string_view suite, std::string_view kind, const DimensionResult& dim,
                     const EmpiricalSample& sample, const CdfFn& cdf, const VerifyOptions& opt)
{
    if (sample.empty())
        throw SuiteMismatch(std::string(kind) + ": no defined values at n = " +
                            std::to_string(dim.n));
    const double thr = opt.threshold_for(suite, kind, default_threshold(kind));
    return make_report(label(kind, dim.n), ks_statistic(sample, cdf), sample.size(), thr);
}

void require_gaussian_exact(const ExperimentConfig& c)
{
    if (c.distribution.kind != DistKind::StandardGaussian)
        throw SuiteMismatch("gaussian_exact needs standard Gaussian entries, data has " +
                            std::string(c.distribution.name()));
    if (c.power_p != 1)
        throw SuiteMismatch("gaussian_exact needs power 1");
    if (!c.include_zero_index)
        throw SuiteMismatch("gaussian_exact needs the zero index included");
    if (c.apply_truncation || c.apply_smoothing)
        throw SuiteMismatch("gaussian_exact needs untransformed entries");
}

} // namespace

std::string_view suite_name(Suite s)
{
    for (const auto& e : kSuites)
        if (e.suite == s)
            return e.name;
    return "unknown";
}

Suite parse_suite(std::string_view name)
{
    for (const auto& e : kSuites)
        if (e.name == name)
            return e.suite;
    throw InvalidArgument("unknown suite '" + std::string(name) + "'");
}

std::vector<Suite> all_suites()
{
    std::vector<Suite> out;
    for (const auto& e : kSuites)
        out.push_back(e.suite);
    return out;
}

double default_threshold(std::string_view kind)
{
    if (kind == "marginal_min" || kind == "marginal_max")
        return 0.03;
    if (kind == "kappa" || kind == "joint")
        return 0.05;
    if (kind == "independence")
        return 0.02;
    if (kind == "gaussian_exact")
        return 1.0;
    if (kind == "power_min" || kind == "power_max")
        return 0.04;
    if (kind == "power_kappa")
        return 0.06;
    throw InvalidArgument("no default threshold for '" + std::string(kind) + "'");
}

double VerifyOptions::threshold_for(std::string_view suite, std::string_view kind,
                                    double fallback) const
{
    if (auto it = thresholds.find(kind); it != thresholds.end())
        return it->second;
    if (auto it = thresholds.find(suite); it != thresholds.end())
        return it->second;
    return fallback;
}

std::vector<TestReport> verify(const ExperimentResult& result, Suite suite,
                               const VerifyOptions& opt)
{
    const auto& cfg = result.config;
    if (result.dimensions.empty())
        throw SuiteMismatch("result holds no dimensions");
    if (suite == Suite::GaussianExact)
        require_gaussian_exact(cfg);

    const int p = cfg.power_p;
    const auto laws = power_law_cdfs(p);
    const auto levels = grid_levels(opt.grid);
    const auto prov = result.provenance();
    const std::string_view sname = suite_name(suite);

    std::vector<TestReport> out;
    for (const auto& dim : result.dimensions) {
        switch (suite) {
        case Suite::MarginalMin:
            out.push_back(ks_report(sname, sname, dim, dim.min_sample(prov), laws.min_cdf, opt));
            break;
        case Suite::MarginalMax:
            out.push_back(ks_report(sname, sname, dim, dim.max_sample(prov), laws.max_cdf, opt));
            break;
        case Suite::Kappa:
            out.push_back(ks_report(sname, sname, dim, dim.kappa_sample(prov), laws.kappa_cdf, opt));
            break;
        case Suite::Power:
            out.push_back(ks_report(sname, "power_min", dim, dim.min_sample(prov), laws.min_cdf, opt));
            out.push_back(ks_report(sname, "power_max", dim, dim.max_sample(prov), laws.max_cdf, opt));
            out.push_back(
                ks_report(sname, "power_kappa", dim, dim.kappa_sample(prov), laws.kappa_cdf, opt));
            break;
        case Suite::Joint:
        case Suite::Independence: {
            const auto rayleigh = LimitLaw::rayleigh();
            const auto gumbel = LimitLaw::gumbel();
            auto xq = [&](double u) { return std::pow(rayleigh.quantile(u), p); };
            auto yq = [&](double u) { return gumbel.quantile(u); };
            const auto grid = quantile_grid(xq, yq, levels);
            const auto mins = dim.sigma_min_values();
            const auto maxs = dim.norm_max_values();
            auto th = [&](double x, double y) { return laws.min_cdf(x) * laws.max_cdf(y); };
            auto reports = joint_discrepancy(
                mins, maxs, grid, th, opt.threshold_for(sname, "joint", default_threshold("joint")),
                opt.threshold_for(sname, "independence", default_threshold("independence")));
            auto& r = suite == Suite::Joint ? reports.joint : reports.independence;
            r.statistic_name = label(sname, dim.n);
            out.push_back(std::move(r));
            break;
        }
        case Suite::GaussianExact: {
            const auto grid = quantile_grid([](double u) { return LimitLaw::rayleigh().quantile(u); },
                                            [](double u) { return LimitLaw::gumbel().quantile(u); },
                                            levels);
            const auto mins = dim.sigma_min_values();
            const auto maxs = dim.norm_max_values();
            const double N = static_cast<double>(mins.size());
            double worst = 0.0;
            std::vector<GridDetail> details;
            for (const auto& [x, y] : grid) {
                const double f = gaussian_exact_joint_cdf(dim.n, x, y);
                const double emp = empirical_joint_cdf(mins, maxs, x, y);
                const double gap = std::abs(emp - f);
                const double allowed = 3.0 * std::sqrt(f * (1.0 - f) / N) + 0.002;
                worst = std::max(worst, gap / allowed);
                details.push_back({x, y, emp, f, gap});
            }
            auto r = make_report(label(sname, dim.n), worst, mins.size(),
                                 opt.threshold_for(sname, sname, default_threshold(sname)));
            r.grid_details = std::move(details);
            out.push_back(std::move(r));
            break;
        }
        }
    }
    return out;
}

} // namespace circex
