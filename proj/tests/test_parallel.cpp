// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "modsqrt/oracle.hpp"
#include "modsqrt/parallel.hpp"
#include "modsqrt/shanks.hpp"

using namespace modsqrt;

TEST_CASE("refresh_b_table multiplies the live table by powers of z entrywise") {
    const PrimeContext ctx = build_context(17);
    OpCounter scratch;
    // 13 = 8^2 is a residue; the refresh itself is plain table arithmetic.
    const PowerTable z_table = build_power_table(Residue(13), 4, ctx, scratch);

    ParallelState st;
    st.z_table = &z_table;
    st.z_shift = 0;
    st.b_table = build_power_table(Residue(4), 2, ctx, scratch);
    st.k = 2;

    OpCounter ctr;
    refresh_b_table(st, 2, ctx, ctr, ExecMode::sequential_simulated);
    // 4*13 = 52 = 1; 16*16 = 256 = 1; 1*1 = 1
    CHECK(st.b_table.entries ==
          std::vector<Residue>{Residue(1), Residue(1), Residue(1)});
    CHECK(ctr.mul_total() == 3);
    CHECK(ctr.lookups() == 6);
    CHECK(st.rounds == 1);
    CHECK(st.k == 2);
}

TEST_CASE("refresh width m charges m+1 multiplications and one round") {
    const PrimeContext ctx = build_context(97);  // n = 5
    OpCounter scratch;
    const PowerTable z_table = build_power_table(ctx.z0, ctx.n, ctx, scratch);

    for (int m : {0, 5}) {
        ParallelState st;
        st.z_table = &z_table;
        st.z_shift = 0;
        st.b_table = build_power_table(Residue(6), 5, ctx, scratch);
        st.k = 5;
        OpCounter ctr;
        refresh_b_table(st, m, ctx, ctr, ExecMode::sequential_simulated);
        CHECK(ctr.mul_total() == static_cast<std::uint64_t>(m) + 1);
        CHECK(st.rounds == 1);
        CHECK(st.b_table.max_exponent() == m);
    }
}

TEST_CASE("refresh rejects widths beyond the table bounds") {
    const PrimeContext ctx = build_context(97);
    OpCounter scratch;
    const PowerTable z_table = build_power_table(ctx.z0, ctx.n, ctx, scratch);
    ParallelState st;
    st.z_table = &z_table;
    st.z_shift = 3;
    st.b_table = build_power_table(Residue(6), 5, ctx, scratch);
    st.k = 5;
    OpCounter ctr;
    CHECK_THROWS_AS(refresh_b_table(st, 4, ctx, ctr, ExecMode::sequential_simulated),
                    IndexOutOfRange);
}

TEST_CASE("sqrt_parallel frozen run at p = 97") {
    const PrimeContext ctx = build_context(97);
    SqrtTrace trace;
    trace.check_invariants = true;
    const SqrtOutcome out = sqrt_parallel(Residue(2), ctx, ExecMode::sequential_simulated,
                                          &trace);
    CHECK((out.root == Residue(83) || out.root == Residue(14)));
    CHECK(out.loop_iterations == 4);
    CHECK(out.rounds == 4);
    CHECK(out.counter.mul_init() == 3 + 5 + 5);
    CHECK(out.counter.mul_loop() == 18);
    CHECK(trace.m_sequence == std::vector<int>{4, 3, 2, 1});
    CHECK(trace.search_muls == 0);
    CHECK(trace.z_eval_muls == 0);

    // b = 1 straight after setup: no loop, no rounds, but rounds is reported.
    const SqrtOutcome quick = sqrt_parallel(Residue(35), ctx);
    CHECK(quick.loop_iterations == 0);
    CHECK(quick.rounds == 0);
}

TEST_CASE("sqrt_parallel special cases") {
    const PrimeContext ctx = build_context(13);
    const SqrtOutcome zero = sqrt_parallel(Residue(0), ctx);
    CHECK(zero.root == Residue(0));
    CHECK(zero.rounds == 0);
    CHECK_THROWS_AS(sqrt_parallel(Residue(5), ctx), NotAResidue);
}

TEST_CASE("sequential-simulated and concurrent modes give bit-identical outcomes") {
    for (std::uint64_t p : {97ULL, 65537ULL, 998244353ULL}) {
        const PrimeContext ctx = build_context(p);
        std::mt19937_64 rng(p ^ 0x77);
        for (int trial = 0; trial < 60; ++trial) {
            const std::uint64_t r = 1 + rng() % (ctx.p - 1);
            const Residue a(raw::mul(r, r, ctx.p));
            const SqrtOutcome seq = sqrt_parallel(a, ctx, ExecMode::sequential_simulated);
            const SqrtOutcome conc = sqrt_parallel(a, ctx, ExecMode::concurrent);
            CHECK(seq == conc);
        }
    }
}

TEST_CASE("m-sequence and root equal the baseline; searches are lookup-only") {
    for (std::uint64_t p : {97ULL, 65537ULL, 998244353ULL, 3221225473ULL}) {
        const PrimeContext ctx = build_context(p);
        std::mt19937_64 rng(p ^ 0x99);
        for (int trial = 0; trial < 150; ++trial) {
            const std::uint64_t r = 1 + rng() % (ctx.p - 1);
            const Residue a(raw::mul(r, r, ctx.p));
            SqrtTrace t1, t3;
            t3.check_invariants = true;
            const SqrtOutcome base = sqrt_shanks(a, ctx, &t1);
            const SqrtOutcome par =
                sqrt_parallel(a, ctx, ExecMode::sequential_simulated, &t3);
            CHECK(t1.m_sequence == t3.m_sequence);
            CHECK(base.root == par.root);
            CHECK(t3.search_muls == 0);
            CHECK(t3.z_eval_muls == 0);
            CHECK(par.rounds == par.loop_iterations);
            CHECK(*par.rounds <= static_cast<std::uint64_t>(ctx.n));
        }
    }
}

TEST_CASE("rounds stay within n for p = 3 * 2^30 + 1") {
    const PrimeContext ctx = build_context(3221225473ULL);
    std::mt19937_64 rng(30);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t r = 1 + rng() % (ctx.p - 1);
        const Residue a(raw::mul(r, r, ctx.p));
        const SqrtOutcome out = sqrt_parallel(a, ctx);
        CHECK(*out.rounds <= 30);
        CHECK(raw::mul(out.root.v, out.root.v, ctx.p) == a.v);
    }
}

TEST_CASE("exhaustive sweep below 500 agrees with brute force") {
    for (std::uint64_t p = 3; p < 500; p += 2) {
        if (!oracle::is_prime_deterministic(p)) continue;
        const PrimeContext ctx = build_context(p);
        for (std::uint64_t a = 0; a < p; ++a) {
            if (a != 0 && !euler_is_qr(Residue(a), ctx)) continue;
            SqrtTrace trace;
            trace.check_invariants = true;
            const SqrtOutcome out =
                sqrt_parallel(Residue(a), ctx, ExecMode::sequential_simulated, &trace);
            const auto expected = oracle::brute_force_roots(Residue(a), p).roots;
            if (std::find(expected.begin(), expected.end(), out.root) == expected.end()) {
                FAIL("wrong root for a=", a, " p=", p);
            }
            CHECK(*out.rounds <= static_cast<std::uint64_t>(ctx.n));
        }
    }
}
