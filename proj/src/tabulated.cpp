// SPDX-License-Identifier: Apache-2.0
#include "modsqrt/tabulated.hpp"

#include <cassert>
#include <string>

namespace modsqrt {

namespace {

int ceil_sqrt(int n) {
    int s = 0;
    while (s * s < n) ++s;
    return s;
}

// Raising a stored power of z0 to 2^e is an index shift, never a
// multiplication chain; the counter delta feeds the zero-multiplication
// evidence in the trace.
Residue z_power(const PowerTable& z_table, int shift, int e, OpCounter& ctr,
                SqrtTrace* trace) {
    const std::uint64_t before = ctr.mul_total();
    Residue r = table_lookup(z_table, shift + e, ctr);
    if (trace) trace->z_eval_muls += ctr.mul_total() - before;
    return r;
}

void check_block(const BlockState& st, std::uint64_t b, std::uint64_t x, std::uint64_t a,
                 int i_max, const PrimeContext& ctx) {
    // b = b0 * z_1 * ... * z_i, and x^2 = a*b.
    std::uint64_t prod = st.b_table.base.v;
    for (int shift : st.z_shifts) {
        prod = raw::mul(prod, st.z_table->entries[static_cast<std::size_t>(shift)].v, ctx.p);
    }
    if (prod != b) {
        throw InvariantViolation("running b diverged from b0 * z_1 * ... * z_i");
    }
    if (raw::mul(x, x, ctx.p) != raw::mul(a, b, ctx.p)) {
        throw InvariantViolation("x^2 = a*b violated");
    }
    if (static_cast<int>(st.z_shifts.size()) > i_max) {
        throw InvariantViolation("block accumulated more than ceil(sqrt(n)) z factors");
    }
}

}  // namespace

bool product_is_one_at(int m, const BlockState& st, const PrimeContext& ctx, OpCounter& ctr,
                       SqrtTrace* trace) {
    Residue prod = table_lookup(st.b_table, m, ctr);
    for (int shift : st.z_shifts) {
        prod = mul(prod, z_power(*st.z_table, shift, m, ctr, trace), ctx, ctr);
    }
    return prod == Residue(1);
}

int find_least_m(const BlockState& st, const PrimeContext& ctx, OpCounter& ctr,
                 SqrtTrace* trace) {
    const std::uint64_t before = ctr.mul_total();
    int m = 0;
    for (int mp = st.k - 1; mp >= 0; --mp) {
        if (!product_is_one_at(mp, st, ctx, ctr, trace)) {
            m = mp + 1;
            break;
        }
    }
    if (trace) trace->search_muls += ctr.mul_total() - before;
    return m;
}

SqrtOutcome sqrt_tabulated(Residue a, const PrimeContext& ctx, SqrtTrace* trace) {
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

    const PowerTable z_table = build_power_table(ctx.z0, ctx.n, ctx, ctr);
    if (trace) ++trace->z_table_builds;

    const int block_size = ceil_sqrt(ctx.n);
    BlockState st;
    st.z_table = &z_table;
    st.k = ctx.n;
    st.b_table = build_power_table(b, st.k, ctx, ctr);
    if (trace) ++trace->b_table_builds;
    int i = 0;

    if (trace && trace->check_invariants) check_block(st, b.v, x.v, a.v, block_size, ctx);

    ctr.set_phase(OpCounter::Phase::loop);
    while (b != Residue(1)) {
        if (i == block_size) {
            // Block restart: rebuild the b table for the current b, up to the
            // current order bound only (higher entries are dead), and drop the
            // accumulated z factors.
            st.b_table = build_power_table(b, st.k, ctx, ctr);
            st.z_shifts.clear();
            i = 0;
            if (trace) ++trace->b_table_builds;
        }

        const int m = find_least_m(st, ctx, ctr, trace);
        if (m >= st.k) {
            throw InvariantViolation("order of the block product reached 2^k");
        }

        // z_i has shift n-k, so t = z_i^(2^(k-m-1)) sits at shift n-m-1 and
        // z_{i+1} = t^2 one step further.
        const int t_shift = ctx.n - m - 1;
        x = mul(x, z_power(z_table, t_shift, 0, ctr, trace), ctx, ctr);
        const int z_next_shift = t_shift + 1;
        b = mul(b, z_power(z_table, z_next_shift, 0, ctr, trace), ctx, ctr);
        st.z_shifts.push_back(z_next_shift);
        ++i;
        st.k = m;
        ++out.loop_iterations;

        if (trace) {
            trace->m_sequence.push_back(m);
            if (trace->check_invariants) check_block(st, b.v, x.v, a.v, block_size, ctx);
        }
        assert(raw::mul(x.v, x.v, ctx.p) == raw::mul(a.v, b.v, ctx.p));
    }

    out.root = x;
    return out;
}

}  // namespace modsqrt
