// SPDX-License-Identifier: Apache-2.0
//
// circex: simulate, test, oracle-check and plot-data front end.
// Exit codes: 0 success/pass, 1 runtime or I/O failure (or a failing test),
// 2 usage or validation error.
#include "circex/error.hpp"
#include "circex/harness.hpp"
#include "circex/laws.hpp"
#include "circex/oracle_suite.hpp"
#include "circex/stats.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace circex;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string brief(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Config field names as the library reports them, mapped to CLI flags.
std::string name_flag(const std::string& msg)
{
    static const std::pair<const char*, const char*> table[] = {
        {"dimensions:", "--n"}, {"replications:", "--reps"}, {"power:", "--power"},
        {"eta", "--eta"},       {"delta", "--delta"},        {"student-t", "--df/--delta"},
    };
    for (const auto& [field, flag] : table)
        if (msg.rfind(field, 0) == 0)
            return std::string(flag) + ": " + msg;
    return msg;
}

unsigned default_workers()
{
    if (const char* env = std::getenv("CIRCEX_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0')
            return static_cast<unsigned>(v);
        std::cerr << "warning: ignoring malformed CIRCEX_WORKERS='" << env << "'\n";
    }
    return 0;
}

struct SimulateArgs {
    std::vector<std::int64_t> n;
    std::string dist = "gaussian";
    double delta = 1.0;
    double df = 5.0;
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    std::string out;
    int power = 1;
    bool no_zero_index = false;
    bool truncate = false;
    bool smooth = false;
    double eta = 0.05;
    unsigned workers = 0;
};

int do_simulate(const SimulateArgs& a)
{
    ExperimentConfig c;
    try {
        c.dimensions = a.n;
        c.distribution.kind = parse_dist_kind(a.dist);
        c.distribution.delta = a.delta;
        c.distribution.df = a.df;
        c.replications = a.reps;
        c.master_seed = a.seed;
        c.include_zero_index = !a.no_zero_index;
        c.power_p = a.power;
        c.apply_truncation = a.truncate;
        c.apply_smoothing = a.smooth;
        c.eta = a.eta;
        c.workers = a.workers;
        c.validate();
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << name_flag(e.what()) << '\n';
        return kExitUsage;
    }
    try {
        const auto result = run(c);
        persist(result, a.out, PersistFormat::Rows);
        std::size_t undefined = 0;
        for (const auto& d : result.dimensions)
            undefined += d.undefined_count();
        std::cout << "wrote " << a.out << ": " << result.dimensions.size() << " dimension(s) x "
                  << c.replications << " replication(s), " << undefined << " undefined kappa\n";
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const SimulationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}

struct TestArgs {
    std::string in;
    std::vector<std::string> suites;
    std::vector<std::string> thresholds;
    int grid = 5;
};

int do_test(const TestArgs& a)
{
    VerifyOptions opt;
    opt.grid = a.grid;
    std::vector<Suite> suites;
    try {
        if (a.grid < 1)
            throw InvalidArgument("--grid must be >= 1");
        for (const auto& s : a.suites)
            suites.push_back(parse_suite(s));
        if (suites.empty())
            suites = {Suite::MarginalMin, Suite::MarginalMax, Suite::Kappa, Suite::Joint,
                      Suite::Independence};
        for (const auto& t : a.thresholds) {
            const auto eq = t.find('=');
            if (eq == std::string::npos || eq == 0)
                throw InvalidArgument("--threshold expects name=value, got '" + t + "'");
            char* end = nullptr;
            const std::string v = t.substr(eq + 1);
            const double x = std::strtod(v.c_str(), &end);
            if (v.empty() || *end != '\0' || !(x >= 0.0))
                throw InvalidArgument("--threshold: bad value in '" + t + "'");
            opt.thresholds[t.substr(0, eq)] = x;
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    ExperimentResult result;
    try {
        result = load(a.in);
    } catch (const ParseError& e) {
        std::cerr << "error: " << a.in << ": " << e.what() << '\n';
        return kExitRuntime;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    bool all = true;
    try {
        for (auto s : suites) {
            for (const auto& r : verify(result, s, opt)) {
                all = all && r.pass;
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.statistic_name << " distance="
                          << brief(r.ks_distance) << " threshold=" << brief(r.threshold)
                          << " N=" << r.sample_size << '\n';
            }
        }
    } catch (const SuiteMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return all ? 0 : kExitRuntime;
}

int do_oracle(std::uint64_t seed, bool full, bool fault)
{
    OracleOptions o;
    o.seed = seed;
    o.full = full;
    o.inject_dft_fault = fault;
    const auto checks = run_oracle_suite(o);
    const OracleCheck* first_fail = nullptr;
    for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        if (!c.passed && !first_fail)
            first_fail = &c;
    }
    if (first_fail) {
        std::cerr << "oracle check failed: " << first_fail->name << '\n';
        return kExitRuntime;
    }
    return 0;
}

struct PlotArgs {
    std::string in;
    std::string what;
    std::string out;
    int grid = 20;
};

int do_plot(const PlotArgs& a)
{
    static const std::vector<std::string> kinds = {"ecdf-min", "ecdf-max", "ecdf-kappa", "qq-min",
                                                   "qq-max",   "qq-kappa", "joint-heat"};
    if (std::find(kinds.begin(), kinds.end(), a.what) == kinds.end()) {
        std::cerr << "error: unknown --what '" << a.what << "'\n";
        return kExitRuntime;
    }
    if (a.grid < 1) {
        std::cerr << "error: --grid must be >= 1\n";
        return kExitUsage;
    }
    ExperimentResult result;
    try {
        result = load(a.in);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    const int p = result.config.power_p;
    const auto laws = power_law_cdfs(p);
    const auto R = LimitLaw::rayleigh(), G = LimitLaw::gumbel(), F = LimitLaw::frechet();
    auto qmin = [&](double u) { return std::pow(R.quantile(u), p); };
    auto qmax = [&](double u) { return G.quantile(u); };
    auto qkappa = [&](double u) { return std::pow(F.quantile(u), p); };

    std::string text;
    for (const auto& dim : result.dimensions) {
        const std::string n = std::to_string(dim.n);
        if (a.what == "joint-heat") {
            text += "# n=" + n + "\nx,y,empirical,theoretical\n";
            const auto lv = grid_levels(a.grid);
            const auto grid = quantile_grid(qmin, qmax, lv);
            const auto mins = dim.sigma_min_values();
            const auto maxs = dim.norm_max_values();
            for (const auto& [x, y] : grid)
                text += real(x) + ',' + real(y) + ',' + real(empirical_joint_cdf(mins, maxs, x, y)) + ',' +
                        real(laws.min_cdf(x) * laws.max_cdf(y)) + '\n';
            continue;
        }
        const std::string stat = a.what.substr(a.what.find('-') + 1);
        const auto sample = stat == "min" ? dim.min_sample() : stat == "max" ? dim.max_sample() : dim.kappa_sample();
        const auto& cdf = stat == "min" ? laws.min_cdf : stat == "max" ? laws.max_cdf : laws.kappa_cdf;
        const auto v = sample.values();
        const double N = static_cast<double>(v.size());
        if (a.what.rfind("ecdf", 0) == 0) {
            text += "# n=" + n + "\nx,empirical,theoretical\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i + 1 < v.size() && v[i + 1] == v[i])
                    continue; // report each distinct value once, at its right limit
                text += real(v[i]) + ',' + real((static_cast<double>(i) + 1.0) / N) + ',' + real(cdf(v[i])) + '\n';
            }
        } else {
            text += "# n=" + n + "\ntheoretical,sample\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double u = (static_cast<double>(i) + 0.5) / N;
                const double q = stat == "min" ? qmin(u) : stat == "max" ? qmax(u) : qkappa(u);
                text += real(q) + ',' + real(v[i]) + '\n';
            }
        }
    }

    if (a.out.empty() || a.out == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream f(a.out, std::ios::binary);
    if (!(f << text) || !f.flush()) {
        std::cerr << "error: cannot write '" << a.out << "'\n";
        return kExitRuntime;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"circex: extreme singular values of random circulant matrices"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(kToolkitVersion));

    SimulateArgs sim;
    sim.workers = default_workers();
    auto* s = app.add_subcommand("simulate", "Run replicated simulations and write a rows file");
    s->add_option("--n", sim.n, "Matrix dimension (repeatable, each >= 3)")->required()->take_all();
    s->add_option("--dist", sim.dist, "Entry law: gaussian|rademacher|uniform|exp-centered|student-t")
        ->capture_default_str();
    s->add_option("--delta", sim.delta, "Moment exponent delta > 0 (truncation level n^(1/(2+delta)))")
        ->capture_default_str();
    s->add_option("--df", sim.df, "Student-t degrees of freedom (needs df > 2 + delta)")->capture_default_str();
    s->add_option("--reps", sim.reps, "Replications per dimension")->capture_default_str();
    s->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    s->add_option("--out", sim.out, "Output rows file")->required();
    s->add_option("--power", sim.power, "Study C^p for this p >= 1")->capture_default_str();
    s->add_flag("--no-zero-index", sim.no_zero_index, "Exclude the k = 0 eigenvalue from the extremes");
    s->add_flag("--truncate", sim.truncate, "Truncate and re-center entries at n^(1/(2+delta))");
    s->add_flag("--smooth", sim.smooth, "Add scaled Gaussian smoothing noise");
    s->add_option("--eta", sim.eta, "Smoothing exponent in (0, 1)")->capture_default_str();
    s->add_option("--workers", sim.workers, "Worker threads (0 = all cores; default from CIRCEX_WORKERS)")
        ->capture_default_str();

    TestArgs test;
    auto* t = app.add_subcommand("test", "Goodness-of-fit of a rows file against the limit laws");
    t->add_option("--in", test.in, "Rows file written by simulate")->required();
    t->add_option("--suite", test.suites,
                  "marginal_min|marginal_max|kappa|joint|independence|gaussian_exact|power (repeatable; "
                  "default: the first five)")
        ->take_all();
    t->add_option("--threshold", test.thresholds, "Override a threshold: name=value (repeatable)")->take_all();
    t->add_option("--grid", test.grid, "Quantile grid size per axis for joint suites")->capture_default_str();

    std::uint64_t oseed = 7;
    bool quick = false, full = false, fault = false;
    auto* o = app.add_subcommand("oracle-check", "Run the numerical oracle and property checks");
    o->add_option("--seed", oseed, "Seed for randomized checks")->capture_default_str();
    auto* fq = o->add_flag("--quick", quick, "Reduced sizes (default)");
    auto* ff = o->add_flag("--full", full, "Full sizes");
    fq->excludes(ff);
    o->add_flag("--inject-dft-fault", fault, "Debug: corrupt the fast DFT")->group("");

    PlotArgs plot;
    auto* pl = app.add_subcommand("plot-data", "Emit plotting data from a rows file");
    pl->add_option("--in", plot.in, "Rows file written by simulate")->required();
    pl->add_option("--what", plot.what,
                   "ecdf-min|ecdf-max|ecdf-kappa|qq-min|qq-max|qq-kappa|joint-heat")
        ->required();
    pl->add_option("--out", plot.out, "Output file (default: stdout)");
    pl->add_option("--grid", plot.grid, "Grid size per axis for joint-heat")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e); // --help, --version
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*s)
            return do_simulate(sim);
        if (*t)
            return do_test(test);
        if (*o)
            return do_oracle(oseed, full, fault);
        return do_plot(plot);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
