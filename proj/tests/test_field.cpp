// SPDX-License-Identifier: Apache-2.0
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "modsqrt/field.hpp"
#include "modsqrt/oracle.hpp"

using namespace modsqrt;

namespace {

std::vector<std::uint64_t> odd_primes_below(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 3; p < bound; p += 2) {
        if (oracle::is_prime_deterministic(p)) primes.push_back(p);
    }
    return primes;
}

}  // namespace

TEST_CASE("mul computes products mod p and charges one multiplication") {
    const PrimeContext ctx = build_context(5);
    OpCounter ctr;
    CHECK(mul(Residue(3), Residue(4), ctx, ctr) == Residue(2));
    CHECK(mul(Residue(1), Residue(3), ctx, ctr) == Residue(3));
    CHECK(mul(Residue(4), Residue(4), ctx, ctr) == Residue(1));  // (-1)^2 = 1
    CHECK(ctr.mul_total() == 3);
    CHECK(ctr.lookups() == 0);
}

TEST_CASE("mul handles products near the 63-bit bound") {
    const std::uint64_t p = (3ULL << 30) + 1;
    const PrimeContext big = build_context(p);
    OpCounter ctr;
    const Residue x(p - 2), y(p - 3);
    CHECK(mul(x, y, big, ctr).v == raw::mul(p - 2, p - 3, p));
    CHECK(mul(x, y, big, ctr).v == 6 % p);  // (-2)(-3) = 6
}

TEST_CASE("phase split routes multiplications to init or loop") {
    const PrimeContext ctx = build_context(13);
    OpCounter ctr;
    mul(Residue(2), Residue(2), ctx, ctr);
    ctr.set_phase(OpCounter::Phase::loop);
    mul(Residue(2), Residue(2), ctx, ctr);
    mul(Residue(2), Residue(2), ctx, ctr);
    CHECK(ctr.mul_init() == 1);
    CHECK(ctr.mul_loop() == 2);
    CHECK(ctr.mul_total() == 3);
}

TEST_CASE("pow_mod values and multiplication budget") {
    const PrimeContext p5 = build_context(5);
    const PrimeContext p7 = build_context(7);
    OpCounter ctr;
    CHECK(pow_mod(Residue(3), 4, p5, ctr) == Residue(1));
    CHECK(pow_mod(Residue(2), 3, p7, ctr) == Residue(1));

    OpCounter zero;
    CHECK(pow_mod(Residue(4), 0, p7, zero) == Residue(1));
    CHECK(pow_mod(Residue(4), 1, p7, zero) == Residue(4));
    CHECK(zero.mul_total() == 0);

    const PrimeContext big = build_context(998244353);
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const Residue a(1 + rng() % (big.p - 1));
        const std::uint64_t e = rng() >> (rng() % 40);
        OpCounter c;
        const Residue got = pow_mod(a, e, big, c);
        CHECK(got.v == raw::pow(a.v, e, big.p));
        if (e >= 1) {
            CHECK(c.mul_total() <= 2 * static_cast<std::uint64_t>(std::bit_width(e) - 1));
        }
    }
}

TEST_CASE("pow_mod composes: (a^e1)^e2 = a^(e1*e2)") {
    const PrimeContext ctx = build_context(65537);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Residue a(1 + rng() % (ctx.p - 1));
        const std::uint64_t e1 = rng() % 4096, e2 = rng() % 4096;
        OpCounter c;
        CHECK(pow_mod(pow_mod(a, e1, ctx, c), e2, ctx, c) == pow_mod(a, e1 * e2, ctx, c));
    }
}

TEST_CASE("decompose splits p-1 into odd q times 2^n") {
    CHECK(decompose(65537) == std::pair<int, std::uint64_t>{16, 1});
    CHECK(decompose(13) == std::pair<int, std::uint64_t>{2, 3});
    CHECK(decompose(998244353) == std::pair<int, std::uint64_t>{23, 119});
    CHECK_THROWS_AS(decompose(15 * 2), CompositeModulus);
    CHECK_THROWS_AS(decompose(1), CompositeModulus);

    for (std::uint64_t p : odd_primes_below(2000)) {
        const auto [n, q] = decompose(p);
        CHECK(q % 2 == 1);
        CHECK(n >= 1);
        CHECK((q << n) + 1 == p);
    }
}

TEST_CASE("build_context finds the smallest nonresidue") {
    CHECK(build_context(7).u == Residue(3));
    CHECK(build_context(13).u == Residue(2));
    CHECK(build_context(5).u == Residue(2));

    const PrimeContext ctx = build_context(97);
    CHECK(ctx.n == 5);
    CHECK(ctx.q == 3);
    CHECK(ctx.u == Residue(5));
    CHECK(ctx.z0 == Residue(28));  // 5^3 mod 97

    CHECK_THROWS_AS(build_context(15), CompositeModulus);
    CHECK_THROWS_AS(build_context(2), CompositeModulus);
    CHECK_THROWS_AS(build_context(1ULL << 63), ModulusTooLarge);
}

TEST_CASE("build_context nonresidue is minimal and z0 has order 2^n") {
    for (std::uint64_t p : odd_primes_below(2000)) {
        const PrimeContext ctx = build_context(p);
        for (std::uint64_t v = 2; v < ctx.u.v; ++v) {
            CHECK(euler_is_qr(Residue(v), ctx));
        }
        CHECK(!euler_is_qr(ctx.u, ctx));
        // z0^(2^(n-1)) = -1
        std::uint64_t t = ctx.z0.v;
        for (int i = 0; i < ctx.n - 1; ++i) t = raw::mul(t, t, p);
        CHECK(t == p - 1);
    }
}

TEST_CASE("euler_is_qr matches brute-force solvability for all primes below 2000") {
    CHECK(euler_is_qr(Residue(2), build_context(7)));
    CHECK(euler_is_qr(Residue(1), build_context(13)));
    CHECK(!euler_is_qr(Residue(2), build_context(5)));
    CHECK(!euler_is_qr(Residue(0), build_context(5)));

    for (std::uint64_t p : odd_primes_below(2000)) {
        const PrimeContext ctx = build_context(p);
        std::vector<bool> has_root(p, false);
        for (std::uint64_t x = 1; x < p; ++x) has_root[raw::mul(x, x, p)] = true;
        for (std::uint64_t a = 1; a < p; ++a) {
            CHECK(euler_is_qr(Residue(a), ctx) == has_root[a]);
        }
    }
}

TEST_CASE("build_power_table stores successive squares") {
    const PrimeContext ctx = build_context(17);
    OpCounter ctr;
    const PowerTable t = build_power_table(Residue(2), 3, ctx, ctr);
    CHECK(t.entries == std::vector<Residue>{Residue(2), Residue(4), Residue(16), Residue(1)});
    CHECK(ctr.mul_total() == 3);

    const PowerTable ones = build_power_table(Residue(1), 5, ctx, ctr);
    for (const Residue& r : ones.entries) CHECK(r == Residue(1));

    const PowerTable neg = build_power_table(Residue(16), 2, ctx, ctr);
    CHECK(neg.entries == std::vector<Residue>{Residue(16), Residue(1), Residue(1)});
}

TEST_CASE("table_lookup returns entries, counts lookups and checks bounds") {
    const PrimeContext ctx = build_context(17);
    OpCounter ctr;
    const PowerTable t = build_power_table(Residue(2), 3, ctx, ctr);
    const std::uint64_t muls_after_build = ctr.mul_total();

    CHECK(table_lookup(t, 0, ctr) == t.base);
    CHECK(table_lookup(t, 2, ctr) == Residue(16));
    CHECK(ctr.lookups() == 2);
    CHECK(ctr.mul_total() == muls_after_build);
    CHECK_THROWS_AS(table_lookup(t, 5, ctr), IndexOutOfRange);
    CHECK_THROWS_AS(table_lookup(t, -1, ctr), IndexOutOfRange);
}

TEST_CASE("power table entries satisfy entries[j+1] = entries[j]^2") {
    std::mt19937_64 rng(3);
    const PrimeContext ctx = build_context(998244353);
    for (int trial = 0; trial < 50; ++trial) {
        OpCounter ctr;
        const Residue base(1 + rng() % (ctx.p - 1));
        const int len = 1 + static_cast<int>(rng() % 20);
        const PowerTable t = build_power_table(base, len, ctx, ctr);
        for (int j = 0; j + 1 <= t.max_exponent(); ++j) {
            CHECK(table_lookup(t, j + 1, ctr) ==
                  mul(table_lookup(t, j, ctr), table_lookup(t, j, ctr), ctx, ctr));
        }
    }
}
