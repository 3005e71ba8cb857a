// SPDX-License-Identifier: Apache-2.0
#include "modsqrt/bench.hpp"

#include <charconv>
#include <cstdio>
#include <future>
#include <limits>
#include <random>

#include "modsqrt/oracle.hpp"
#include "modsqrt/parallel.hpp"
#include "modsqrt/shanks.hpp"
#include "modsqrt/tabulated.hpp"

namespace modsqrt::bench {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Unbiased draw from [0, bound) by rejection. std engines are fully specified
// by the standard but std distributions are not, so this keeps output
// byte-identical across platforms.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const unsigned __int128 span = static_cast<unsigned __int128>(1) << 64;
    const std::uint64_t limit = static_cast<std::uint64_t>(span / bound * bound - 1);
    std::uint64_t v = rng();
    while (v > limit) v = rng();
    return v % bound;
}

struct Cell {
    ProthPrime prime;
    Algorithm algorithm;
};

BenchRecord run_cell(const Cell& cell, const PrimeContext& ctx, const BenchConfig& cfg) {
    BenchRecord rec;
    rec.p = cell.prime.p;
    rec.n = cell.prime.n;
    rec.q = cell.prime.q;
    rec.algorithm = cell.algorithm;
    rec.samples = cfg.samples_per_prime;

    const std::uint64_t cell_seed =
        splitmix64(splitmix64(cfg.seed ^ cell.prime.p) ^
                   (static_cast<std::uint64_t>(cell.algorithm) + 1));
    std::mt19937_64 rng(cell_seed);

    std::uint64_t sum_loop = 0, sum_total = 0, sum_lookups = 0, sum_rounds = 0;
    std::uint64_t max_iters = 0;
    for (std::uint64_t s = 0; s < cfg.samples_per_prime; ++s) {
        const std::uint64_t r = 1 + uniform_below(rng, ctx.p - 1);
        const Residue a(raw::mul(r, r, ctx.p));
        SqrtOutcome out;
        try {
            switch (cell.algorithm) {
                case Algorithm::v1: out = sqrt_shanks(a, ctx); break;
                case Algorithm::v2: out = sqrt_tabulated(a, ctx); break;
                case Algorithm::v3:
                    out = sqrt_parallel(a, ctx, ExecMode::sequential_simulated);
                    break;
            }
        } catch (const Error& e) {
            throw Error("sweep cell p=" + std::to_string(ctx.p) + " algo=" +
                        std::string(to_string(cell.algorithm)) + " r=" + std::to_string(r) +
                        ": " + e.what());
        }
        if (raw::mul(out.root.v, out.root.v, ctx.p) != a.v) {
            throw InvariantViolation("root verification failed for p=" +
                                     std::to_string(ctx.p) + " r=" + std::to_string(r));
        }
        sum_loop += out.counter.mul_loop();
        sum_total += out.counter.mul_total();
        sum_lookups += out.counter.lookups();
        if (out.rounds) sum_rounds += *out.rounds;
        if (out.loop_iterations > max_iters) max_iters = out.loop_iterations;
    }

    const double inv = 1.0 / static_cast<double>(cfg.samples_per_prime);
    rec.mean_mul_loop = static_cast<double>(sum_loop) * inv;
    rec.mean_mul_total = static_cast<double>(sum_total) * inv;
    rec.mean_lookups = static_cast<double>(sum_lookups) * inv;
    if (cell.algorithm == Algorithm::v3) {
        rec.mean_rounds = static_cast<double>(sum_rounds) * inv;
    }
    rec.max_loop_iterations = max_iters;
    return rec;
}

void append_field(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    out += buf;
}

}  // namespace

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::v1: return "v1";
        case Algorithm::v2: return "v2";
        case Algorithm::v3: return "v3";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_string(std::string_view s) {
    if (s == "v1") return Algorithm::v1;
    if (s == "v2") return Algorithm::v2;
    if (s == "v3") return Algorithm::v3;
    return std::nullopt;
}

ProthSearch generate_proth_primes(const std::vector<int>& n_list, std::uint64_t q_max) {
    ProthSearch result;
    for (int n : n_list) {
        if (n < 1 || n > 62) {
            result.skipped.push_back(n);
            continue;
        }
        bool found = false;
        for (std::uint64_t q = 1; q <= q_max; q += 2) {
            if (q > (std::numeric_limits<std::uint64_t>::max() >> (n + 1))) break;
            const std::uint64_t p = (q << n) + 1;
            if (p >> 63 != 0) break;
            if (oracle::is_prime_deterministic(p)) {
                result.primes.push_back({p, n, q});
                found = true;
                break;
            }
        }
        if (!found) result.skipped.push_back(n);
    }
    return result;
}

std::vector<BenchRecord> run_sweep(const BenchConfig& cfg) {
    if (cfg.samples_per_prime < 1) {
        throw ConfigError("samples_per_prime must be at least 1");
    }
    if (cfg.algorithms.empty()) {
        throw ConfigError("at least one algorithm must be selected");
    }

    std::vector<ProthPrime> primes;
    if (!cfg.primes.empty()) {
        for (std::uint64_t p : cfg.primes) {
            if (!oracle::is_prime_deterministic(p) || p < 3 || p % 2 == 0) {
                throw ConfigError("configured modulus " + std::to_string(p) +
                                  " is not an odd prime");
            }
            const auto [n, q] = decompose(p);
            primes.push_back({p, n, q});
        }
    } else {
        primes = generate_proth_primes(cfg.n_list, cfg.q_max).primes;
    }

    // Contexts are immutable and shared across the cells of one prime.
    std::vector<PrimeContext> contexts;
    contexts.reserve(primes.size());
    for (const ProthPrime& pp : primes) contexts.push_back(build_context(pp.p));

    std::vector<std::future<BenchRecord>> cells;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        for (Algorithm algo : cfg.algorithms) {
            Cell cell{primes[i], algo};
            cells.push_back(std::async(std::launch::async, run_cell, cell,
                                       std::cref(contexts[i]), std::cref(cfg)));
        }
    }
    std::vector<BenchRecord> records;
    records.reserve(cells.size());
    for (auto& f : cells) records.push_back(f.get());
    return records;
}

std::string emit_csv(const std::vector<BenchRecord>& records) {
    std::string out =
        "p,n,q,algorithm,samples,mean_mul_loop,mean_mul_total,mean_lookups,"
        "mean_rounds,max_loop_iterations\n";
    for (const BenchRecord& r : records) {
        out += std::to_string(r.p) + ',' + std::to_string(r.n) + ',' + std::to_string(r.q) +
               ',';
        out += to_string(r.algorithm);
        out += ',' + std::to_string(r.samples) + ',';
        append_field(out, r.mean_mul_loop);
        out += ',';
        append_field(out, r.mean_mul_total);
        out += ',';
        append_field(out, r.mean_lookups);
        out += ',';
        if (r.mean_rounds) append_field(out, *r.mean_rounds);
        out += ',' + std::to_string(r.max_loop_iterations) + '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* name) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad " + name + " field '" +
                          std::string(field) + "'");
    }
    return value;
}

double parse_double(std::string_view field, std::size_t line_no, const char* name) {
    double value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad " + name + " field '" +
                          std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::vector<BenchRecord> parse_csv(std::string_view text) {
    constexpr std::string_view kHeader =
        "p,n,q,algorithm,samples,mean_mul_loop,mean_mul_total,mean_lookups,"
        "mean_rounds,max_loop_iterations";
    std::vector<BenchRecord> records;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != kHeader) throw ConfigError("line 1: unexpected CSV header");
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 10) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 10 fields, got " +
                              std::to_string(fields.size()));
        }
        BenchRecord rec;
        rec.p = parse_number<std::uint64_t>(fields[0], line_no, "p");
        rec.n = parse_number<int>(fields[1], line_no, "n");
        rec.q = parse_number<std::uint64_t>(fields[2], line_no, "q");
        const auto algo = algorithm_from_string(fields[3]);
        if (!algo) {
            throw ConfigError("line " + std::to_string(line_no) + ": bad algorithm field '" +
                              std::string(fields[3]) + "'");
        }
        rec.algorithm = *algo;
        rec.samples = parse_number<std::uint64_t>(fields[4], line_no, "samples");
        rec.mean_mul_loop = parse_double(fields[5], line_no, "mean_mul_loop");
        rec.mean_mul_total = parse_double(fields[6], line_no, "mean_mul_total");
        rec.mean_lookups = parse_double(fields[7], line_no, "mean_lookups");
        if (!fields[8].empty()) {
            rec.mean_rounds = parse_double(fields[8], line_no, "mean_rounds");
        }
        rec.max_loop_iterations =
            parse_number<std::uint64_t>(fields[9], line_no, "max_loop_iterations");
        records.push_back(rec);
    }
    return records;
}

}  // namespace modsqrt::bench
