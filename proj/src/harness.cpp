// SPDX-License-Identifier: Apache-2.0
#include "circex/harness.hpp"

#include "circex/error.hpp"
#include "circex/laws.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

namespace circex {

void ExperimentConfig::validate() const
{
    if (dimensions.empty())
        throw InvalidArgument("dimensions: at least one dimension is required");
    for (auto n : dimensions) {
        if (n < 3)
            throw InvalidArgument("dimensions: every n must be >= 3, got " + std::to_string(n));
        if (n > std::numeric_limits<std::uint32_t>::max())
            throw InvalidArgument("dimensions: n too large");
    }
    if (replications < 1)
        throw InvalidArgument("replications: must be >= 1");
    if (replications > std::numeric_limits<std::uint32_t>::max())
        throw InvalidArgument("replications: too many");
    if (power_p < 1)
        throw InvalidArgument("power: must be >= 1");
    if (apply_smoothing && !(eta > 0.0 && eta < 1.0))
        throw InvalidArgument("eta: must lie in (0, 1)");
    distribution.validate();
}

std::size_t DimensionResult::undefined_count() const
{
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.kappa; }));
}

std::vector<double> DimensionResult::sigma_min_values() const
{
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records)
        out.push_back(r.sigma_min);
    return out;
}

std::vector<double> DimensionResult::norm_max_values() const
{
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records)
        out.push_back(r.norm_max);
    return out;
}

EmpiricalSample DimensionResult::min_sample(const SampleProvenance& prov) const
{
    return EmpiricalSample(sigma_min_values(), n, 0, prov);
}

EmpiricalSample DimensionResult::max_sample(const SampleProvenance& prov) const
{
    return EmpiricalSample(norm_max_values(), n, 0, prov);
}

EmpiricalSample DimensionResult::kappa_sample(const SampleProvenance& prov) const
{
    std::vector<double> vals;
    vals.reserve(records.size());
    for (const auto& r : records)
        if (r.norm_kappa)
            vals.push_back(*r.norm_kappa);
    const std::size_t undefined = records.size() - vals.size();
    return EmpiricalSample(std::move(vals), n, undefined, prov);
}

SummaryMoments summarize(const EmpiricalSample& sample)
{
    SummaryMoments m;
    const auto v = sample.values();
    if (v.empty())
        return {NAN, NAN, NAN, NAN, NAN};
    double sum = 0.0;
    for (double x : v)
        sum += x;
    m.mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v)
        ss += (x - m.mean) * (x - m.mean);
    m.sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    auto q = [&](double p) {
        // lower empirical quantile: smallest value with F_N >= p
        const auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
        return v[std::min(v.size() - 1, idx == 0 ? 0 : idx - 1)];
    };
    m.q10 = q(0.1);
    m.q50 = q(0.5);
    m.q90 = q(0.9);
    return m;
}

SampleProvenance ExperimentResult::provenance() const
{
    SampleProvenance p;
    p.distribution = std::string(config.distribution.name());
    p.delta = config.distribution.delta;
    p.seed = config.master_seed;
    p.flags = format_config(config);
    return p;
}

namespace {

struct DimensionContext {
    std::int64_t n;
    NormalizingConstants base;
    std::optional<SmoothingParams> smoothing;
};

DimensionContext make_context(const ExperimentConfig& config, std::int64_t n)
{
    DimensionContext ctx{n, normalizers(n, 1), std::nullopt};
    if (config.apply_smoothing)
        ctx.smoothing =
            make_smoothing_params(config.distribution, static_cast<std::size_t>(n), config.eta);
    return ctx;
}

ExtremalStats replicate_with(const ExperimentConfig& config, const DimensionContext& ctx,
                             std::int64_t r, SpectrumEngine& engine, Spectrum& scratch)
{
    const auto n = static_cast<std::uint64_t>(ctx.n);
    const auto rep = static_cast<std::uint64_t>(r);
    CounterRng entries({config.master_seed, n, rep, StreamRole::Entries});
    auto seq = sample_sequence(config.distribution, static_cast<std::size_t>(ctx.n), entries);
    if (config.apply_truncation)
        seq = truncate(seq, config.distribution);
    if (ctx.smoothing) {
        CounterRng noise({config.master_seed, n, rep, StreamRole::Smoothing});
        seq = smooth(seq, *ctx.smoothing, noise);
    }
    engine.compute(seq.entries(), scratch);
    auto stats = extremal_stats(scratch, ctx.base, config.include_zero_index);
    if (config.power_p > 1)
        stats = power_stats(stats, config.power_p);
    return stats;
}

ReplicationRecord to_record(const ExtremalStats& s, std::int64_t r)
{
    return {s.n, r, s.sigma_min, s.sigma_max, s.kappa, s.norm_max, s.norm_kappa};
}

} // namespace

ExtremalStats replicate(const ExperimentConfig& config, std::int64_t n, std::int64_t r)
{
    config.validate();
    const auto ctx = make_context(config, n);
    SpectrumEngine engine(static_cast<std::size_t>(n));
    Spectrum scratch;
    return replicate_with(config, ctx, r, engine, scratch);
}

ExperimentResult run(const ExperimentConfig& config)
{
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    unsigned workers = config.workers;
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t reps = config.replications;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, reps));

    ExperimentResult result;
    result.config = config;
    for (const auto n : config.dimensions) {
        const auto ctx = make_context(config, n);
        DimensionResult dim;
        dim.n = n;
        dim.records.resize(reps);

        // contiguous replication ranges; each slot is written by exactly one worker
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::int64_t> failed_at(workers, -1);
        auto work = [&](unsigned w) {
            const std::size_t lo = reps * w / workers;
            const std::size_t hi = reps * (w + 1) / workers;
            std::size_t r = lo;
            try {
                SpectrumEngine engine(static_cast<std::size_t>(n));
                Spectrum scratch;
                for (; r < hi; ++r) {
                    const auto ri = static_cast<std::int64_t>(r);
                    dim.records[r] = to_record(replicate_with(config, ctx, ri, engine, scratch), ri);
                }
            } catch (...) {
                errors[w] = std::current_exception();
                failed_at[w] = static_cast<std::int64_t>(r);
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work, w);
        }
        for (unsigned w = 0; w < workers; ++w) {
            if (!errors[w])
                continue;
            std::string msg = "unknown error";
            try {
                std::rethrow_exception(errors[w]);
            } catch (const std::exception& e) {
                msg = e.what();
            } catch (...) {
            }
            throw SimulationError("n = " + std::to_string(n) + ", r = " +
                                  std::to_string(failed_at[w]) + ": " + msg);
        }
        result.dimensions.push_back(std::move(dim));
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace circex
