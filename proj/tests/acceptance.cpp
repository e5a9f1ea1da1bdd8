// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance run. Prints one PASS/FAIL line per criterion (with
// indented detail lines) and exits nonzero if any criterion fails.
#include "circex/harness.hpp"
#include "circex/laws.hpp"
#include "circex/oracle_suite.hpp"
#include "circex/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace circex;

namespace {

constexpr std::int64_t kN = 4096;
constexpr std::size_t kReps = 20000;
constexpr double kMinThr = 0.03, kMaxThr = 0.03, kKappaThr = 0.05;
constexpr double kJointThr = 0.05, kIndepThr = 0.02;

int failures = 0;

void criterion(int id, const std::string& title, bool ok, const std::vector<std::string>& detail)
{
    std::printf("%s [%d] %s\n", ok ? "PASS" : "FAIL", id, title.c_str());
    for (const auto& d : detail)
        std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* f, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

ExperimentConfig base(DistributionSpec d, std::vector<std::int64_t> dims, std::size_t reps, std::uint64_t seed)
{
    ExperimentConfig c;
    c.dimensions = std::move(dims);
    c.distribution = d;
    c.replications = reps;
    c.master_seed = seed;
    return c;
}

// KS of the three marginal suites, per dimension.
struct Marginals {
    double min = 0.0, max = 0.0, kappa = 0.0;
};

std::vector<Marginals> marginals(const ExperimentResult& r)
{
    const auto mn = verify(r, Suite::MarginalMin), mx = verify(r, Suite::MarginalMax), kp = verify(r, Suite::Kappa);
    std::vector<Marginals> out;
    for (std::size_t i = 0; i < mn.size(); ++i)
        out.push_back({mn[i].ks_distance, mx[i].ks_distance, kp[i].ks_distance});
    return out;
}

bool marginals_pass(const Marginals& m)
{
    return m.min <= kMinThr && m.max <= kMaxThr && m.kappa <= kKappaThr;
}

std::string marginal_line(const std::string& tag, const Marginals& m)
{
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-14s KS min=%.4f (<= %.2f)  max=%.4f (<= %.2f)  kappa=%.4f (<= %.2f)", tag.c_str(),
                  m.min, kMinThr, m.max, kMaxThr, m.kappa, kKappaThr);
    return buf;
}

double median3(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

} // namespace

int main()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::printf("acceptance: Gaussian n=%lld, %zu replications\n", static_cast<long long>(kN), kReps);

    // 1-4 share one Gaussian run
    const auto gauss = run(base(DistributionSpec::gaussian(), {kN}, kReps, 20240601));
    const auto gm = marginals(gauss)[0];
    criterion(1, "smallest singular value vs Rayleigh", gm.min <= kMinThr, {fmt("KS = %.4f (threshold %.2f)", gm.min, kMinThr)});
    criterion(2, "normalized largest singular value vs Gumbel", gm.max <= kMaxThr,
              {fmt("KS = %.4f (threshold %.2f)", gm.max, kMaxThr)});
    criterion(3, "normalized condition number vs Frechet", gm.kappa <= kKappaThr,
              {fmt("KS = %.4f (threshold %.2f)", gm.kappa, kKappaThr)});
    {
        const auto j = verify(gauss, Suite::Joint)[0];
        const auto ind = verify(gauss, Suite::Independence)[0];
        criterion(4, "asymptotic independence of min and max (5x5 grid)",
                  ind.ks_distance <= kIndepThr && j.ks_distance <= kJointThr,
                  {fmt("independence gap = %.4f (threshold %.2f)", ind.ks_distance, kIndepThr),
                   fmt("joint gap vs R(x)G(y) = %.4f (threshold %.2f)", j.ks_distance, kJointThr)});
    }

    // 5: universality
    {
        bool ok = true;
        std::vector<std::string> lines;
        for (auto d : {DistributionSpec::rademacher(), DistributionSpec::uniform(), DistributionSpec::exp_centered(),
                       DistributionSpec::student_t()}) {
            const auto m = marginals(run(base(d, {kN}, kReps, 20240602)))[0];
            ok = ok && marginals_pass(m);
            lines.push_back(marginal_line(std::string(d.name()), m));
        }
        criterion(5, "universality across entry laws at n=4096", ok, lines);
    }

    // 6: convergence direction, median over 3 seeds
    {
        const std::vector<std::int64_t> dims{256, 1024, 4096};
        std::vector<std::vector<Marginals>> per_seed;
        for (std::uint64_t seed : {11, 22, 33})
            per_seed.push_back(marginals(run(base(DistributionSpec::gaussian(), dims, kReps, seed))));
        bool ok = true;
        std::vector<std::string> lines;
        const char* names[] = {"min", "max", "kappa"};
        for (int s = 0; s < 3; ++s) {
            std::vector<double> med;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                std::vector<double> v;
                for (const auto& ps : per_seed)
                    v.push_back(s == 0 ? ps[i].min : s == 1 ? ps[i].max : ps[i].kappa);
                med.push_back(median3(v));
            }
            const bool mono = med[1] <= med[0] && med[2] <= med[1];
            ok = ok && mono;
            char buf[200];
            std::snprintf(buf, sizeof buf, "%-5s median KS n=256: %.4f  n=1024: %.4f  n=4096: %.4f  %s", names[s],
                          med[0], med[1], med[2], mono ? "nonincreasing" : "NOT nonincreasing");
            lines.push_back(buf);
        }
        // info: finite-n bias of the max against Gumbel, from the exact Gaussian law
        std::string bias = "info: exact-law sup|P(max <= y) - G(y)|:";
        for (auto n : dims) {
            double b = 0.0;
            for (double y = -3.0; y <= 10.0; y += 0.001)
                b = std::max(b, std::abs(gaussian_exact_joint_cdf(n, 1e3, y) - gumbel_cdf(y)));
            bias += fmt("  n=%.0f: %.5f", static_cast<double>(n), b);
        }
        lines.push_back(bias);
        criterion(6, "KS distances nonincreasing over n = 256, 1024, 4096", ok, lines);
    }

    // 7: exact Gaussian law at odd and even n
    {
        bool ok = true;
        std::vector<std::string> lines;
        for (std::int64_t n : {101, 100}) {
            const auto r = verify(run(base(DistributionSpec::gaussian(), {n}, 100000, 20240607)), Suite::GaussianExact)[0];
            double worst_gap = 0.0;
            for (const auto& g : r.grid_details)
                worst_gap = std::max(worst_gap, g.gap);
            ok = ok && r.pass;
            lines.push_back(fmt("n=%.0f: worst gap / allowance = %.3f", static_cast<double>(n), r.ks_distance) +
                            fmt(" (<= 1), largest raw gap %.4f", worst_gap));
        }
        criterion(7, "exact Gaussian joint law, 5x5 grid, 1e5 replications", ok, lines);
    }

    // 8: powers, p = 2
    {
        auto c = base(DistributionSpec::gaussian(), {kN}, kReps, 20240608);
        c.power_p = 2;
        const auto res = run(c);
        const auto reps = verify(res, Suite::Power);
        const double kmin = reps[0].ks_distance, kmax = reps[1].ks_distance, kkap = reps[2].ks_distance;
        // diagnostic: the same maxima normalized with the closed-form scale p b^p (2^p - 1)
        const auto k = normalizers(kN, 2);
        std::vector<double> alt;
        for (const auto& rec : res.dimensions[0].records)
            alt.push_back((rec.sigma_max - k.A_p) / k.B_p_closed_form);
        const double kalt = ks_statistic(EmpiricalSample(alt, kN), [](double y) { return gumbel_cdf(y); });
        criterion(8, "power p=2: min, max and condition number of C^2", kmin <= 0.04 && kmax <= 0.04 && kkap <= 0.06,
                  {fmt("sigma_min(C^2) vs R(sqrt x): KS = %.4f (threshold 0.04)", kmin),
                   fmt("(sigma_max(C^2) - A)/B vs Gumbel: KS = %.4f (threshold 0.04)", kmax),
                   fmt("kappa(C^2) scaled vs F(sqrt z): KS = %.4f (threshold 0.06)", kkap),
                   fmt("info: with scale p b^p (2^p - 1) instead, KS = %.4f", kalt)});
    }

    // 9: oracle and property suite
    {
        OracleOptions o;
        o.seed = 7;
        o.full = true;
        bool ok = true;
        std::vector<std::string> lines;
        for (const auto& chk : run_oracle_suite(o)) {
            ok = ok && chk.passed;
            lines.push_back(std::string(chk.passed ? "ok   " : "FAIL ") + chk.name + ": " + chk.detail);
        }
        criterion(9, "oracle and property checks (full)", ok, lines);
    }

    // 10: excluding the zero frequency changes little
    {
        auto c = base(DistributionSpec::gaussian(), {kN}, kReps, 20240601);
        c.include_zero_index = false;
        const auto off = marginals(run(c))[0];
        const double dmin = std::abs(off.min - gm.min), dmax = std::abs(off.max - gm.max),
                     dk = std::abs(off.kappa - gm.kappa);
        criterion(10, "zero-index robustness at n=4096", dmin <= 0.01 && dmax <= 0.01 && dk <= 0.01,
                  {marginal_line("with k=0", gm), marginal_line("without k=0", off),
                   fmt("|difference| min=%.4f max=%.4f", dmin, dmax) + fmt(" kappa=%.4f (each <= 0.01)", dk)});
    }

    // 11: determinism across worker counts
    {
        namespace fs = std::filesystem;
        auto c = base(DistributionSpec::gaussian(), {kN, 1000}, 2000, 20240611);
        c.apply_smoothing = true;
        std::vector<std::string> texts;
        for (unsigned w : {1u, 8u}) {
            c.workers = w;
            const auto path = (fs::temp_directory_path() / ("circex_accept_w" + std::to_string(w) + ".csv")).string();
            persist(run(c), path, PersistFormat::Rows);
            std::ifstream f(path, std::ios::binary);
            std::stringstream ss;
            ss << f.rdbuf();
            texts.push_back(ss.str());
            fs::remove(path);
        }
        criterion(11, "rows files byte-identical for 1 and 8 workers", !texts[0].empty() && texts[0] == texts[1],
                  {fmt("%.0f bytes each", static_cast<double>(texts[0].size()))});
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("acceptance: %d failing criterion(s), %.1f s\n", failures, secs);
    return failures == 0 ? 0 : 1;
}
