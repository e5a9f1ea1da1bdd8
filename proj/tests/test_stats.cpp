// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "circex/error.hpp"
#include "circex/laws.hpp"
#include "circex/rng.hpp"
#include "circex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace circex;
using doctest::Approx;

namespace {

double uniform_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

// brute-force sup over a fine grid plus every sample point and its left limit
double ks_bruteforce(std::vector<double> v, const CdfFn& F)
{
    std::sort(v.begin(), v.end());
    const double N = static_cast<double>(v.size());
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double right = static_cast<double>(std::upper_bound(v.begin(), v.end(), v[i]) - v.begin()) / N;
        const double left = static_cast<double>(std::lower_bound(v.begin(), v.end(), v[i]) - v.begin()) / N;
        best = std::max({best, std::abs(right - F(v[i])), std::abs(left - F(v[i]))});
    }
    return best;
}

} // namespace

TEST_CASE("empirical cdf")
{
    const EmpiricalSample s({3.0, 1.0, 2.0, 2.0}, 10);
    CHECK(empirical_cdf(s, 0.5) == 0.0);
    CHECK(empirical_cdf(s, 1.0) == 0.25);
    CHECK(empirical_cdf(s, 2.0) == 0.75);
    CHECK(empirical_cdf(s, 2.5) == 0.75);
    CHECK(empirical_cdf(s, 3.0) == 1.0);
    CHECK(s.values()[0] == 1.0);
    CHECK_THROWS_AS(empirical_cdf(EmpiricalSample({}, 10), 0.0), InvalidArgument);
}

TEST_CASE("ks statistic: hand examples")
{
    CHECK(ks_statistic(EmpiricalSample({0.5}, 3), uniform_cdf) == Approx(0.5));
    CHECK(ks_statistic(EmpiricalSample({0.25, 0.75}, 3), uniform_cdf) == Approx(0.25));
    // a tie: the jump of 2/3 at 0.5
    CHECK(ks_statistic(EmpiricalSample({0.5, 0.5, 0.9}, 3), uniform_cdf) == Approx(0.5));
    CHECK_THROWS_AS(ks_statistic(EmpiricalSample({}, 3), uniform_cdf), InvalidArgument);
}

TEST_CASE("ks statistic matches brute force")
{
    std::mt19937_64 g(1);
    std::uniform_int_distribution<int> d(0, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(1 + trial % 17);
        for (auto& x : v)
            x = d(g) / 10.0; // plenty of ties
        const EmpiricalSample s(v, 3);
        CHECK(ks_statistic(s, uniform_cdf) == Approx(ks_bruteforce(v, uniform_cdf)).epsilon(1e-14));
    }
}

TEST_CASE("ks statistic on draws from the target law")
{
    constexpr std::size_t N = 100000;
    for (auto law : {LimitLaw::rayleigh(), LimitLaw::gumbel(), LimitLaw::frechet()}) {
        CounterRng rng({17, N, 0, StreamRole::Oracle});
        std::vector<double> v(N);
        for (auto& x : v)
            x = law.sample(rng);
        const EmpiricalSample s(v, 3);
        CHECK(ks_statistic(s, [&](double x) { return law.cdf(x); }) <= 1.95 / std::sqrt(double(N)));
    }
}

TEST_CASE("ks statistic separates different laws")
{
    constexpr std::size_t N = 10000;
    CounterRng rng({18, N, 0, StreamRole::Oracle});
    const auto R = LimitLaw::rayleigh();
    std::vector<double> v(N);
    for (auto& x : v)
        x = R.sample(rng);
    const auto G = LimitLaw::gumbel();
    CHECK(ks_statistic(EmpiricalSample(v, 3), [&](double x) { return G.cdf(x); }) >= 0.2);
}

TEST_CASE("ks is invariant under a monotone transform of sample and law")
{
    CounterRng rng({19, 500, 0, StreamRole::Oracle});
    const auto R = LimitLaw::rayleigh();
    std::vector<double> v(500), w(500);
    for (std::size_t i = 0; i < 500; ++i) {
        v[i] = R.sample(rng);
        w[i] = std::exp(3.0 * v[i]);
    }
    const double a = ks_statistic(EmpiricalSample(v, 3), [&](double x) { return R.cdf(x); });
    const double b = ks_statistic(EmpiricalSample(w, 3), [&](double y) { return R.cdf(std::log(y) / 3.0); });
    CHECK(std::abs(a - b) <= 1e-12);
}

TEST_CASE("threshold and grid helpers")
{
    CHECK(kolmogorov_threshold(10000) == Approx(0.0136));
    const auto lv = grid_levels(5);
    REQUIRE(lv.size() == 5);
    CHECK(lv[0] == Approx(0.1));
    CHECK(lv[4] == Approx(0.9));
    CHECK_THROWS_AS(grid_levels(0), InvalidArgument);
    const auto R = LimitLaw::rayleigh(), G = LimitLaw::gumbel();
    const auto grid = quantile_grid([&](double u) { return R.quantile(u); },
                                    [&](double u) { return G.quantile(u); }, lv);
    REQUIRE(grid.size() == 25);
    CHECK(R.cdf(grid[0].first) == Approx(0.1));
    CHECK(G.cdf(grid[0].second) == Approx(0.1));
    CHECK(R.cdf(grid[24].first) == Approx(0.9));
}

TEST_CASE("joint discrepancy")
{
    // comonotone pairs uniform on [0,1]: F(x,x) = x, product x^2; max gap 1/4 at x = 1/2
    const std::size_t N = 10000;
    std::vector<double> u(N);
    for (std::size_t i = 0; i < N; ++i)
        u[i] = (static_cast<double>(i) + 0.5) / N;
    const std::vector<std::pair<double, double>> grid{{0.5, 0.5}, {0.25, 0.25}, {0.9, 0.1}};
    const auto rep = joint_discrepancy(u, u, grid, [](double x, double y) { return std::min(x, y); }, 0.05, 0.02);
    CHECK(rep.independence.ks_distance == Approx(0.25).epsilon(1e-6));
    CHECK_FALSE(rep.independence.pass);
    CHECK(rep.joint.ks_distance <= 1e-9);
    CHECK(rep.joint.pass);
    CHECK(rep.joint.grid_details.size() == 3);

    // independent R/G pairs
    const std::size_t M = 100000;
    CounterRng rng({20, M, 0, StreamRole::Oracle});
    const auto R = LimitLaw::rayleigh(), G = LimitLaw::gumbel();
    std::vector<double> mins(M), maxs(M);
    for (std::size_t i = 0; i < M; ++i) {
        mins[i] = R.sample(rng);
        maxs[i] = G.sample(rng);
    }
    const auto lv = grid_levels(5);
    const auto g2 = quantile_grid([&](double p) { return R.quantile(p); },
                                  [&](double p) { return G.quantile(p); }, lv);
    const auto ind = joint_discrepancy(mins, maxs, g2, [&](double x, double y) { return joint_limit_cdf(x, y); },
                                       0.05, 0.02);
    CHECK(ind.independence.ks_distance <= 0.01);
    CHECK(ind.joint.ks_distance <= 0.01);

    // x = 0 grid point has theoretical value 0
    const std::vector<std::pair<double, double>> zero{{0.0, 1.0}};
    const auto z = joint_discrepancy(mins, maxs, zero, [&](double x, double y) { return joint_limit_cdf(x, y); },
                                     0.05, 0.02);
    CHECK(z.joint.grid_details[0].theoretical == 0.0);

    CHECK_THROWS_AS(joint_discrepancy(std::span<const double>(mins).first(3), maxs, g2,
                                      [](double, double) { return 0.0; }, 0.05, 0.02),
                    InvalidArgument);
    CHECK_THROWS_AS(joint_discrepancy({}, {}, g2, [](double, double) { return 0.0; }, 0.05, 0.02),
                    InvalidArgument);
}

TEST_CASE("min/max joint law of independent variables")
{
    const CdfFn U = uniform_cdf;
    std::vector<CdfFn> two{U, U};
    // P(min <= .5, max <= .5) = .25
    CHECK(minmax_joint_oracle(two, 0.5, 0.5) == Approx(0.25));
    // P(max <= .75) - P(.5 < both <= .75) = .5625 - .0625
    CHECK(minmax_joint_oracle(two, 0.5, 0.75) == Approx(0.5));
    const CdfFn D4 = [](double x) { return std::clamp(std::floor(x) / 4.0, 0.0, 1.0); };
    std::vector<CdfFn> three{U, U, D4};
    // U, U, discrete {1..4}: P(max<=1)*... small hand case
    CHECK(minmax_joint_oracle(three, 0.5, 1.0) == Approx(0.25 * (1.0 - 0.25)).epsilon(1e-12));
    CHECK(minmax_joint_oracle(two, -1e300, 0.5) == 0.0);
    // three uniforms, s = .5, t = 1: 1 - .5^3
    std::vector<CdfFn> u3{U, U, U};
    CHECK(minmax_joint_oracle(u3, 0.5, 1.0) == Approx(0.875));
    // s >= t: just the max
    CHECK(minmax_joint_oracle(u3, 0.9, 0.5) == Approx(0.125));
}

TEST_CASE("min/max law against exhaustive enumeration")
{
    // independent discrete uniforms on {1..K}, exhaustively enumerated
    const int K = 8;
    const CdfFn D = [](double x) { return std::clamp(std::floor(x) / 8.0, 0.0, 1.0); };
    std::vector<CdfFn> three{D, D, D};
    for (int s = 0; s <= K; ++s)
        for (int t = 0; t <= K; ++t) {
            int hit = 0;
            for (int a = 1; a <= K; ++a)
                for (int b = 1; b <= K; ++b)
                    for (int c = 1; c <= K; ++c)
                        hit += std::min({a, b, c}) <= s && std::max({a, b, c}) <= t;
            CHECK(minmax_joint_oracle(three, s, t) == Approx(hit / 512.0).epsilon(1e-12));
        }
}

TEST_CASE("bonferroni bounds")
{
    const std::vector<double> S{1.5, 0.75, 0.125, 0.0};
    const auto b1 = bonferroni_bounds(S, 1);
    CHECK(b1.first == Approx(0.75));
    CHECK(b1.second == Approx(1.5));
    const auto b2 = bonferroni_bounds(S, 2);
    CHECK(b2.first == Approx(0.875));
    CHECK(b2.second == Approx(0.875));
    CHECK_THROWS_AS(bonferroni_bounds(S, 0), InvalidArgument);
    CHECK_THROWS_AS(bonferroni_bounds(std::span<const double>(S).first(3), 2), InvalidArgument);
}

TEST_CASE("bonferroni bounds bracket the union over enumerated events")
{
    // independent events with probabilities p_i; S_j = elementary symmetric sums
    for (int m = 1; m <= 4; ++m)
        for (int mask = 0; mask < (1 << m); ++mask) {
            std::vector<double> p(m);
            for (int i = 0; i < m; ++i)
                p[i] = (mask >> i & 1) ? 0.5 : 0.25;
            std::vector<double> e(5, 0.0);
            e[0] = 1.0;
            for (double pi : p)
                for (int j = 4; j >= 1; --j)
                    e[j] += e[j - 1] * pi;
            double none = 1.0;
            for (double pi : p)
                none *= 1.0 - pi;
            const double uni = 1.0 - none;
            const std::vector<double> S(e.begin() + 1, e.end());
            for (int ell : {1, 2}) {
                const auto [lo, hi] = bonferroni_bounds(S, ell);
                CHECK(lo <= uni + 1e-15);
                CHECK(uni <= hi + 1e-15);
            }
        }
}

TEST_CASE("merging partial samples")
{
    const EmpiricalSample a({3.0, 1.0}, 5, 1);
    const EmpiricalSample b({2.0, 0.5}, 5, 2);
    const auto m = a.merged(b);
    REQUIRE(m.size() == 4);
    CHECK(m.values()[0] == 0.5);
    CHECK(m.values()[3] == 3.0);
    CHECK(m.undefined_count() == 3);
    CHECK(m.replications() == 7);
    CHECK_THROWS_AS(a.merged(EmpiricalSample({1.0}, 6)), InvalidArgument);
}

TEST_CASE("reports")
{
    const auto r = make_report("x", 0.01, 100, 0.02);
    CHECK(r.pass);
    CHECK_FALSE(make_report("x", 0.03, 100, 0.02).pass);
}
