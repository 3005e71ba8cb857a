// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modsqrt/field.hpp"

namespace modsqrt::bench {

enum class Algorithm { v1, v2, v3 };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(std::string_view s);

struct ProthPrime {
    std::uint64_t p = 0;
    int n = 0;
    std::uint64_t q = 0;
};

struct ProthSearch {
    std::vector<ProthPrime> primes;
    std::vector<int> skipped;  // n values with no prime q*2^n + 1, q odd <= q_max
};

// For each n, the smallest odd q <= q_max with q * 2^n + 1 prime (verified by
// the deterministic primality test); n values with no hit are reported in
// skipped.
ProthSearch generate_proth_primes(const std::vector<int>& n_list, std::uint64_t q_max);

struct BenchConfig {
    std::vector<std::uint64_t> primes;  // explicit moduli; generated from n_list if empty
    std::vector<int> n_list;
    std::uint64_t q_max = 999;
    std::uint64_t samples_per_prime = 100;
    std::uint64_t seed = 0;
    std::vector<Algorithm> algorithms = {Algorithm::v1, Algorithm::v2, Algorithm::v3};
};

struct BenchRecord {
    std::uint64_t p = 0;
    int n = 0;
    std::uint64_t q = 0;
    Algorithm algorithm = Algorithm::v1;
    std::uint64_t samples = 0;
    double mean_mul_loop = 0;
    double mean_mul_total = 0;
    double mean_lookups = 0;
    std::optional<double> mean_rounds;  // v3 only
    std::uint64_t max_loop_iterations = 0;
};

// Runs samples_per_prime square roots per (prime, algorithm) cell on inputs
// r^2 mod p for seeded uniform r, and aggregates the counters. Deterministic
// for a fixed config; cells run concurrently with per-cell derived seeds.
std::vector<BenchRecord> run_sweep(const BenchConfig& cfg);

// CSV with header p,n,q,algorithm,samples,mean_mul_loop,mean_mul_total,
// mean_lookups,mean_rounds,max_loop_iterations; means use 6 decimal places
// and mean_rounds is empty where not applicable.
std::string emit_csv(const std::vector<BenchRecord>& records);

// Inverse of emit_csv; throws ConfigError with a line/field diagnostic.
std::vector<BenchRecord> parse_csv(std::string_view text);

}  // namespace modsqrt::bench
