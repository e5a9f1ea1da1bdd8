// SPDX-License-Identifier: Apache-2.0
#include "circex/error.hpp"
#include "circex/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace circex {

namespace {

constexpr std::string_view kColumns = "n,r,sigma_min,sigma_max,kappa,norm_max,norm_kappa";

std::string real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string real_or_na(const std::optional<double>& v) { return v ? real(*v) : "NA"; }

std::vector<std::string_view> split(std::string_view s, char delim)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(delim, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

double parse_real(std::string_view s, std::size_t line, std::string_view field)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(line, "bad number '" + std::string(s) + "' in field " + std::string(field));
    return v;
}

template <class Int>
Int parse_int(std::string_view s, std::size_t line, std::string_view field)
{
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(line, "bad integer '" + std::string(s) + "' in field " + std::string(field));
    return v;
}

std::optional<double> parse_optional(std::string_view s, std::size_t line, std::string_view field)
{
    if (s == "NA")
        return std::nullopt;
    return parse_real(s, line, field);
}

ExperimentConfig parse_config(std::string_view text, std::size_t line)
{
    constexpr std::string_view prefix = "# config ";
    if (text.substr(0, prefix.size()) != prefix)
        throw ParseError(line, "expected '# config' line");
    ExperimentConfig c;
    bool have_dist = false;
    for (auto tok : split(text.substr(prefix.size()), ' ')) {
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line, "malformed config entry '" + std::string(tok) + "'");
        const auto key = tok.substr(0, eq);
        const auto val = tok.substr(eq + 1);
        if (key == "dist") {
            try {
                c.distribution.kind = parse_dist_kind(val);
            } catch (const InvalidArgument& e) {
                throw ParseError(line, e.what());
            }
            have_dist = true;
        } else if (key == "delta") {
            c.distribution.delta = parse_real(val, line, key);
        } else if (key == "df") {
            c.distribution.df = parse_real(val, line, key);
        } else if (key == "seed") {
            c.master_seed = parse_int<std::uint64_t>(val, line, key);
        } else if (key == "reps") {
            c.replications = parse_int<std::size_t>(val, line, key);
        } else if (key == "power") {
            c.power_p = parse_int<int>(val, line, key);
        } else if (key == "zero_index") {
            c.include_zero_index = parse_int<int>(val, line, key) != 0;
        } else if (key == "truncate") {
            c.apply_truncation = parse_int<int>(val, line, key) != 0;
        } else if (key == "smooth") {
            c.apply_smoothing = parse_int<int>(val, line, key) != 0;
        } else if (key == "eta") {
            c.eta = parse_real(val, line, key);
        } else if (key == "dims") {
            for (auto d : split(val, ','))
                c.dimensions.push_back(parse_int<std::int64_t>(d, line, key));
        } else {
            throw ParseError(line, "unknown config key '" + std::string(key) + "'");
        }
    }
    if (!have_dist || c.dimensions.empty())
        throw ParseError(line, "config line lacks dist or dims");
    return c;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

} // namespace

std::string format_config(const ExperimentConfig& c)
{
    std::string dims;
    for (std::size_t i = 0; i < c.dimensions.size(); ++i)
        dims += (i ? "," : "") + std::to_string(c.dimensions[i]);
    std::ostringstream os;
    os << "dist=" << c.distribution.name() << " delta=" << real(c.distribution.delta)
       << " df=" << real(c.distribution.df) << " seed=" << c.master_seed
       << " reps=" << c.replications << " power=" << c.power_p
       << " zero_index=" << (c.include_zero_index ? 1 : 0)
       << " truncate=" << (c.apply_truncation ? 1 : 0) << " smooth=" << (c.apply_smoothing ? 1 : 0)
       << " eta=" << real(c.eta) << " dims=" << dims;
    return os.str();
}

std::string format_rows(const ExperimentResult& result)
{
    std::string out;
    out += kFormatHeader;
    out += "\n# config " + format_config(result.config) + "\n";
    out += kColumns;
    out += '\n';
    for (const auto& dim : result.dimensions) {
        for (const auto& r : dim.records) {
            out += std::to_string(r.n) + ',' + std::to_string(r.r) + ',' + real(r.sigma_min) + ',' +
                   real(r.sigma_max) + ',' + real_or_na(r.kappa) + ',' + real(r.norm_max) + ',' +
                   real_or_na(r.norm_kappa) + '\n';
        }
    }
    return out;
}

std::string format_summary(const ExperimentResult& result)
{
    std::string out;
    out += kFormatHeader;
    out += "\n# summary\n# config " + format_config(result.config) + "\n";
    out += "# toolkit circex " + std::string(kToolkitVersion) + "\n";
    out += "n,replications,undefined";
    for (const char* s : {"min", "max", "kappa"})
        for (const char* m : {"mean", "sd", "q10", "q50", "q90"})
            out += std::string(",") + s + "_" + m;
    out += '\n';
    for (const auto& dim : result.dimensions) {
        out += std::to_string(dim.n) + ',' + std::to_string(dim.records.size()) + ',' +
               std::to_string(dim.undefined_count());
        for (const auto& sample : {dim.min_sample(), dim.max_sample(), dim.kappa_sample()}) {
            const auto m = summarize(sample);
            for (double v : {m.mean, m.sd, m.q10, m.q50, m.q90})
                out += ',' + (std::isnan(v) ? std::string("NA") : real(v));
        }
        out += '\n';
    }
    return out;
}

void persist(const ExperimentResult& result, const std::string& path, PersistFormat format)
{
    write_file(path, format == PersistFormat::Rows ? format_rows(result) : format_summary(result));
}

ExperimentResult parse_rows(std::string_view text)
{
    std::vector<std::string_view> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty())
        lines.pop_back();
    if (lines.empty())
        throw ParseError(1, "empty file");

    if (lines[0] != kFormatHeader) {
        if (lines[0].substr(0, 22) == kFormatHeader.substr(0, 22))
            throw ParseError(1, "incompatible format version '" + std::string(lines[0]) +
                                    "', this build reads '" + std::string(kFormatHeader) + "'");
        throw ParseError(1, "missing '" + std::string(kFormatHeader) + "' header");
    }
    if (lines.size() < 2)
        throw ParseError(2, "missing config line");
    if (lines[1] == "# summary")
        throw ParseError(2, "summary files cannot be loaded, only rows files");

    ExperimentResult result;
    result.config = parse_config(lines[1], 2);
    if (lines.size() < 3 || lines[2] != kColumns)
        throw ParseError(3, "expected column header '" + std::string(kColumns) + "'");

    const std::size_t reps = result.config.replications;
    for (auto n : result.config.dimensions) {
        DimensionResult d;
        d.n = n;
        d.records.reserve(reps);
        result.dimensions.push_back(std::move(d));
    }

    std::size_t dim_idx = 0;
    std::size_t last_good = 3;
    auto context = [&] { return " (last good line " + std::to_string(last_good) + ")"; };
    for (std::size_t i = 3; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto fields = split(lines[i], ',');
        if (fields.size() != 7)
            throw ParseError(lineno, "expected 7 fields, got " + std::to_string(fields.size()) +
                                         context());
        ReplicationRecord rec;
        rec.n = parse_int<std::int64_t>(fields[0], lineno, "n");
        rec.r = parse_int<std::int64_t>(fields[1], lineno, "r");
        rec.sigma_min = parse_real(fields[2], lineno, "sigma_min");
        rec.sigma_max = parse_real(fields[3], lineno, "sigma_max");
        rec.kappa = parse_optional(fields[4], lineno, "kappa");
        rec.norm_max = parse_real(fields[5], lineno, "norm_max");
        rec.norm_kappa = parse_optional(fields[6], lineno, "norm_kappa");

        while (dim_idx < result.dimensions.size() &&
               result.dimensions[dim_idx].records.size() == reps)
            ++dim_idx;
        if (dim_idx >= result.dimensions.size())
            throw ParseError(lineno, "more rows than the config declares" + context());
        auto& dim = result.dimensions[dim_idx];
        if (rec.n != dim.n || rec.r != static_cast<std::int64_t>(dim.records.size()))
            throw ParseError(lineno, "expected row n=" + std::to_string(dim.n) +
                                         " r=" + std::to_string(dim.records.size()) + context());
        dim.records.push_back(rec);
        last_good = lineno;
    }
    for (const auto& dim : result.dimensions)
        if (dim.records.size() != reps)
            throw ParseError(last_good + 1, "file ends early: n=" + std::to_string(dim.n) + " has " +
                                                std::to_string(dim.records.size()) + " of " +
                                                std::to_string(reps) + " rows" + context());
    return result;
}

ExperimentResult load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("read from '" + path + "' failed");
    return parse_rows(ss.str());
}

} // namespace circex
