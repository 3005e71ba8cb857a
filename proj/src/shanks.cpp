// SPDX-License-Identifier: Apache-2.0
#include "modsqrt/shanks.hpp"

#include <cassert>
#include <string>

namespace modsqrt {

namespace {

// ord(b) as an exponent of 2, computed outside the cost model; negative k_max
// means unbounded. Used only for invariant checking.
int raw_order_exponent(std::uint64_t b, std::uint64_t p, int k_max) {
    int m = 0;
    while (b != 1) {
        if (k_max >= 0 && m >= k_max) return k_max + 1;
        b = raw::mul(b, b, p);
        ++m;
    }
    return m;
}

void check_loop_entry(std::uint64_t z, std::uint64_t b, int k, const PrimeContext& ctx) {
    // ord(z) = 2^k exactly: z^(2^(k-1)) = -1.
    std::uint64_t t = z;
    for (int i = 0; i < k - 1; ++i) t = raw::mul(t, t, ctx.p);
    if (t != ctx.p - 1) {
        throw InvariantViolation("ord(z) is not exactly 2^k at loop entry");
    }
    if (raw_order_exponent(b, ctx.p, k) >= k) {
        throw InvariantViolation("ord(b) is not strictly below ord(z) at loop entry");
    }
}

void check_congruence(std::uint64_t x, std::uint64_t a, std::uint64_t b,
                      const PrimeContext& ctx) {
    if (raw::mul(x, x, ctx.p) != raw::mul(a, b, ctx.p)) {
        throw InvariantViolation("x^2 = a*b violated");
    }
}

}  // namespace

int least_order_exponent(Residue b, int k_max, const PrimeContext& ctx, OpCounter& ctr) {
    int m = 0;
    Residue t = b;
    while (t != Residue(1)) {
        if (m >= k_max) {
            throw OrderExceedsBound("order of " + std::to_string(b.v) + " exceeds 2^" +
                                    std::to_string(k_max));
        }
        t = mul(t, t, ctx, ctr);
        ++m;
    }
    return m;
}

SqrtOutcome sqrt_shanks(Residue a, const PrimeContext& ctx, SqrtTrace* trace) {
    SqrtOutcome out;
    if (a.v == 0) return out;
    if (!euler_is_qr(a, ctx)) {
        throw NotAResidue(std::to_string(a.v) + " is not a quadratic residue mod " +
                          std::to_string(ctx.p));
    }

    OpCounter& ctr = out.counter;
    ctr.set_phase(OpCounter::Phase::init);
    Residue x = pow_mod(a, (ctx.q + 1) / 2, ctx, ctr);
    Residue b = pow_mod(a, ctx.q, ctx, ctr);
    Residue z = ctx.z0;
    int k = ctx.n;

    if (trace && trace->check_invariants) check_congruence(x.v, a.v, b.v, ctx);

    ctr.set_phase(OpCounter::Phase::loop);
    while (b != Residue(1)) {
        if (trace && trace->check_invariants) check_loop_entry(z.v, b.v, k, ctx);

        const std::uint64_t before_search = ctr.mul_total();
        const int m = least_order_exponent(b, k, ctx, ctr);
        if (trace) trace->search_muls += ctr.mul_total() - before_search;
        if (m >= k) {
            throw InvariantViolation("order of b reached the order of z");
        }

        Residue t = z;
        for (int j = 0; j < k - m - 1; ++j) t = mul(t, t, ctx, ctr);
        z = mul(t, t, ctx, ctr);
        b = mul(b, z, ctx, ctr);
        x = mul(x, t, ctx, ctr);
        k = m;
        ++out.loop_iterations;

        if (trace) {
            trace->m_sequence.push_back(m);
            if (trace->check_invariants) check_congruence(x.v, a.v, b.v, ctx);
        }
        assert(raw::mul(x.v, x.v, ctx.p) == raw::mul(a.v, b.v, ctx.p));
    }

    out.root = x;
    return out;
}

}  // namespace modsqrt
