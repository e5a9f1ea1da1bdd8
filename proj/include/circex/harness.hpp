// SPDX-License-Identifier: Apache-2.0
//
// Replicated simulation: sample -> (truncate) -> (smooth) -> spectrum ->
// extremal stats, over a list of dimensions, in parallel, bit-identical for
// any worker count.
#pragma once

#include "circex/circulant.hpp"
#include "circex/error.hpp"
#include "circex/generators.hpp"
#include "circex/stats.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace circex {

inline constexpr std::string_view kToolkitVersion = "1.0.0";
inline constexpr std::string_view kFormatHeader = "# circulant-extremes v1";

struct ExperimentConfig {
    std::vector<std::int64_t> dimensions;
    DistributionSpec distribution;
    std::size_t replications = 1;
    std::uint64_t master_seed = 0;
    bool include_zero_index = true;
    int power_p = 1;
    bool apply_truncation = false;
    bool apply_smoothing = false;
    double eta = 0.05;
    unsigned workers = 0; ///< 0 = hardware concurrency

    /// Throws InvalidArgument naming the offending field.
    void validate() const;
};

struct ReplicationRecord {
    std::int64_t n = 0;
    std::int64_t r = 0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    std::optional<double> kappa;
    double norm_max = 0.0;
    std::optional<double> norm_kappa;

    bool operator==(const ReplicationRecord&) const = default;
};

struct SummaryMoments {
    double mean = 0.0;
    double sd = 0.0;
    double q10 = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
};

/// All replications for one dimension, indexed by replication number.
struct DimensionResult {
    std::int64_t n = 0;
    std::vector<ReplicationRecord> records;

    std::size_t undefined_count() const;
    std::vector<double> sigma_min_values() const;
    std::vector<double> norm_max_values() const;

    EmpiricalSample min_sample(const SampleProvenance& prov = {}) const;
    EmpiricalSample max_sample(const SampleProvenance& prov = {}) const;
    EmpiricalSample kappa_sample(const SampleProvenance& prov = {}) const;

    bool operator==(const DimensionResult&) const = default;
};

SummaryMoments summarize(const EmpiricalSample& sample);

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<DimensionResult> dimensions;
    double wall_seconds = 0.0;

    SampleProvenance provenance() const;
};

/// Runtime failure inside one replication; the message carries (n, r).
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ExperimentResult run(const ExperimentConfig& config);

/// Recomputes replication r at dimension n from its derived streams alone.
ExtremalStats replicate(const ExperimentConfig& config, std::int64_t n, std::int64_t r);

enum class Suite { MarginalMin, MarginalMax, Kappa, Joint, Independence, GaussianExact, Power };

std::string_view suite_name(Suite s);
/// Throws InvalidArgument on an unknown name.
Suite parse_suite(std::string_view name);
std::vector<Suite> all_suites();

/// The suite needs data the result does not have (e.g. gaussian_exact on
/// Rademacher entries).
class SuiteMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct VerifyOptions {
    /// Overrides keyed by suite name (applies to all its reports) or by
    /// report kind (power_min, power_max, power_kappa).
    std::map<std::string, double, std::less<>> thresholds;
    int grid = 5;

    double threshold_for(std::string_view suite, std::string_view kind, double fallback) const;
};

/// Default thresholds per suite.
double default_threshold(std::string_view kind);

/// One TestReport per (dimension, suite); the power suite yields three
/// (power_min, power_max, power_kappa). For gaussian_exact, ks_distance is
/// the largest grid gap divided by its allowance 3 sqrt(F(1-F)/N) + 0.002,
/// so the default threshold is 1.
std::vector<TestReport> verify(const ExperimentResult& result, Suite suite,
                               const VerifyOptions& options = {});

enum class PersistFormat { Rows, Summary };

/// Serialized forms, exactly as persist writes them.
std::string format_rows(const ExperimentResult& result);
std::string format_summary(const ExperimentResult& result);
std::string format_config(const ExperimentConfig& config);

/// Throws IoError naming the path and cause.
void persist(const ExperimentResult& result, const std::string& path, PersistFormat format);

/// Reads a rows file. Throws ParseError (with line number) or IoError.
ExperimentResult load(const std::string& path);
ExperimentResult parse_rows(std::string_view text);

} // namespace circex
