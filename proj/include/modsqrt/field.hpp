// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "modsqrt/errors.hpp"

namespace modsqrt {

// An integer in [0, p). The ambient modulus is carried by PrimeContext.
struct Residue {
    std::uint64_t v = 0;

    constexpr Residue() = default;
    constexpr explicit Residue(std::uint64_t value) : v(value) {}

    friend constexpr bool operator==(const Residue&, const Residue&) = default;
};

// Tallies of modular multiplications and table lookups. A squaring counts as
// one multiplication. Multiplications are split by phase so that loop-only
// costs can be compared against closed-form averages.
class OpCounter {
public:
    enum class Phase { init, loop };

    void set_phase(Phase ph) { phase_ = ph; }
    Phase phase() const { return phase_; }

    void charge_mul() { (phase_ == Phase::init ? mul_init_ : mul_loop_)++; }
    void charge_mul(std::uint64_t count) {
        (phase_ == Phase::init ? mul_init_ : mul_loop_) += count;
    }
    void charge_lookup() { ++lookups_; }
    void charge_lookup(std::uint64_t count) { lookups_ += count; }

    std::uint64_t mul_init() const { return mul_init_; }
    std::uint64_t mul_loop() const { return mul_loop_; }
    std::uint64_t mul_total() const { return mul_init_ + mul_loop_; }
    std::uint64_t lookups() const { return lookups_; }

    friend bool operator==(const OpCounter&, const OpCounter&) = default;

private:
    std::uint64_t mul_init_ = 0;
    std::uint64_t mul_loop_ = 0;
    std::uint64_t lookups_ = 0;
    Phase phase_ = Phase::init;
};

// p = q * 2^n + 1 with q odd, together with the smallest quadratic nonresidue
// u and z0 = u^q, which generates the 2-Sylow subgroup (order exactly 2^n).
struct PrimeContext {
    std::uint64_t p = 0;
    int n = 0;
    std::uint64_t q = 0;
    Residue u;
    Residue z0;
};

// entries[j] = base^(2^j) for j = 0..max_exponent(); raising the base to a
// power of two is an index shift instead of a squaring chain.
struct PowerTable {
    Residue base;
    std::vector<Residue> entries;

    int max_exponent() const { return static_cast<int>(entries.size()) - 1; }
};

// Result of one square-root computation: the root, the cost snapshot, the
// number of main-loop iterations, and (parallel variant only) the number of
// fork-join rounds.
struct SqrtOutcome {
    Residue root;
    OpCounter counter;
    std::uint64_t loop_iterations = 0;
    std::optional<std::uint64_t> rounds;

    friend bool operator==(const SqrtOutcome&, const SqrtOutcome&) = default;
};

// Optional per-call instrumentation. All trace bookkeeping uses uncounted
// arithmetic, so attaching a trace never changes the counted totals.
struct SqrtTrace {
    // Verify x^2 = a*b, exact element orders and table consistency after every
    // iteration; violations throw InvariantViolation.
    bool check_invariants = false;

    std::vector<int> m_sequence;       // m found by each loop iteration
    std::uint64_t search_muls = 0;     // multiplications charged during least-m searches
    std::uint64_t z_eval_muls = 0;     // multiplications charged while evaluating powers of z
    std::uint64_t z_table_builds = 0;
    std::uint64_t b_table_builds = 0;
};

namespace raw {

// Plain modular arithmetic outside the cost model, for context setup,
// invariant checks and oracles. Requires p < 2^63.
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    std::uint64_t base = a % p;
    while (e > 0) {
        if (e & 1) r = mul(r, base, p);
        base = mul(base, base, p);
        e >>= 1;
    }
    return r;
}

}  // namespace raw

// (n, q) with p - 1 = q * 2^n and q odd. Throws CompositeModulus for even p
// or p < 3.
std::pair<int, std::uint64_t> decompose(std::uint64_t p);

// Builds the full context for an odd prime p < 2^63: decomposition, smallest
// nonresidue u (checked by Euler's criterion) and z0 = u^q. Throws
// CompositeModulus if p fails the deterministic primality test.
PrimeContext build_context(std::uint64_t p);

// Euler's criterion: a^((p-1)/2) = 1. Defined false for a = 0.
bool euler_is_qr(Residue a, const PrimeContext& ctx);

// a * b mod p; charges exactly one multiplication to the active phase.
Residue mul(Residue a, Residue b, const PrimeContext& ctx, OpCounter& ctr);

// a^e mod p by left-to-right binary exponentiation; charges at most
// 2*floor(log2 e) multiplications for e >= 1 and none for e in {0, 1}.
Residue pow_mod(Residue a, std::uint64_t e, const PrimeContext& ctx, OpCounter& ctr);

// Table of base^(2^j) for j = 0..max_exponent; charges exactly max_exponent
// multiplications.
PowerTable build_power_table(Residue base, int max_exponent, const PrimeContext& ctx,
                             OpCounter& ctr);

// entries[j]; charges one lookup. Throws IndexOutOfRange.
Residue table_lookup(const PowerTable& table, int j, OpCounter& ctr);

}  // namespace modsqrt
