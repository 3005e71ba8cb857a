// SPDX-License-Identifier: Apache-2.0
#include "modsqrt/parallel.hpp"

#include <cassert>
#include <string>
#include <thread>
#include <vector>

namespace modsqrt {

namespace {

unsigned worker_count(const PrimeContext& ctx) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned n = static_cast<unsigned>(ctx.n);
    return n < hw ? n : hw;
}

// Runs task(j) for j in [0, count) striped across up to max_workers threads
// and joins them all before returning. Tasks write disjoint output slots, so
// results do not depend on scheduling.
template <typename Task>
void fork_join(std::size_t count, unsigned max_workers, const Task& task) {
    if (max_workers <= 1 || count <= 1) {
        for (std::size_t j = 0; j < count; ++j) task(j);
        return;
    }
    const std::size_t workers = count < max_workers ? count : max_workers;
    std::vector<std::thread> crew;
    crew.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        crew.emplace_back([&, w] {
            for (std::size_t j = count * w / workers; j < count * (w + 1) / workers; ++j) {
                task(j);
            }
        });
    }
    for (std::size_t j = 0; j < count / workers; ++j) task(j);
    for (auto& t : crew) t.join();  // barrier: the round completes here
}

Residue z_power(const PowerTable& z_table, int shift, int e, OpCounter& ctr,
                SqrtTrace* trace) {
    const std::uint64_t before = ctr.mul_total();
    Residue r = table_lookup(z_table, shift + e, ctr);
    if (trace) trace->z_eval_muls += ctr.mul_total() - before;
    return r;
}

void check_state(const ParallelState& st, std::uint64_t a, const PrimeContext& ctx) {
    const std::uint64_t b = st.b_table.entries[0].v;
    if (st.b_table.base.v != b) {
        throw InvariantViolation("b table base diverged from entry 0");
    }
    for (std::size_t j = 0; j + 1 < st.b_table.entries.size(); ++j) {
        if (raw::mul(st.b_table.entries[j].v, st.b_table.entries[j].v, ctx.p) !=
            st.b_table.entries[j + 1].v) {
            throw InvariantViolation("b table entries are not successive squares");
        }
    }
    if (raw::mul(st.x.v, st.x.v, ctx.p) != raw::mul(a, b, ctx.p)) {
        throw InvariantViolation("x^2 = a*b violated");
    }
}

}  // namespace

void refresh_b_table(ParallelState& st, int m, const PrimeContext& ctx, OpCounter& ctr,
                     ExecMode mode) {
    if (m > st.b_table.max_exponent() || st.z_shift + m > st.z_table->max_exponent()) {
        throw IndexOutOfRange("refresh width " + std::to_string(m) +
                              " exceeds a table bound");
    }
    const std::size_t width = static_cast<std::size_t>(m) + 1;
    std::vector<Residue> fresh(width);
    const PowerTable& z_table = *st.z_table;

    // Each task j performs exactly one multiplication and two lookups on
    // immutable inputs; tallies are aggregated after the barrier so totals are
    // deterministic and identical in both modes.
    const auto task = [&](std::size_t j) {
        fresh[j] = Residue(raw::mul(st.b_table.entries[j].v,
                                    z_table.entries[static_cast<std::size_t>(st.z_shift) + j].v,
                                    ctx.p));
    };
    if (mode == ExecMode::concurrent) {
        fork_join(width, worker_count(ctx), task);
    } else {
        for (std::size_t j = 0; j < width; ++j) task(j);
    }
    ctr.charge_mul(width);
    ctr.charge_lookup(2 * width);

    st.b_table.entries = std::move(fresh);
    st.b_table.base = st.b_table.entries[0];
    st.k = m;
    ++st.rounds;
}

SqrtOutcome sqrt_parallel(Residue a, const PrimeContext& ctx, ExecMode mode,
                          SqrtTrace* trace) {
    SqrtOutcome out;
    out.rounds = 0;
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

    ParallelState st;
    st.z_table = &z_table;
    st.z_shift = 0;
    st.k = ctx.n;
    st.x = x;
    // The initial build is a serial squaring chain; later refreshes replace it
    // with one parallel round each.
    st.b_table = build_power_table(b, ctx.n, ctx, ctr);
    if (trace) ++trace->b_table_builds;

    ctr.set_phase(OpCounter::Phase::loop);
    while (b != Residue(1)) {
        // Order search over the live table: lookups only.
        const std::uint64_t before_search = ctr.mul_total();
        int m = 0;
        while (table_lookup(st.b_table, m, ctr) != Residue(1)) {
            if (m >= st.b_table.max_exponent()) {
                throw OrderExceedsBound("no power of b collapsed to 1 within the table");
            }
            ++m;
        }
        if (trace) trace->search_muls += ctr.mul_total() - before_search;
        if (m >= st.k) {
            throw InvariantViolation("order of b reached the order of z");
        }

        const Residue t = z_power(z_table, st.z_shift, st.k - m - 1, ctr, trace);
        st.x = mul(st.x, t, ctx, ctr);
        st.z_shift += st.k - m;  // z = t^2 is one more index shift
        st.k = m;

        refresh_b_table(st, m, ctx, ctr, mode);
        b = st.b_table.entries[0];
        ++out.loop_iterations;

        if (trace) {
            trace->m_sequence.push_back(m);
            if (trace->check_invariants) check_state(st, a.v, ctx);
        }
        assert(raw::mul(st.x.v, st.x.v, ctx.p) == raw::mul(a.v, b.v, ctx.p));
    }

    out.root = st.x;
    out.rounds = st.rounds;
    return out;
}

}  // namespace modsqrt
