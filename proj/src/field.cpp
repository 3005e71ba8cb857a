// SPDX-License-Identifier: Apache-2.0
#include "modsqrt/field.hpp"

#include <bit>
#include <string>

#include "modsqrt/oracle.hpp"

namespace modsqrt {

std::pair<int, std::uint64_t> decompose(std::uint64_t p) {
    if (p < 3 || p % 2 == 0) {
        throw CompositeModulus("modulus must be an odd integer >= 3, got " + std::to_string(p));
    }
    const int n = std::countr_zero(p - 1);
    return {n, (p - 1) >> n};
}

PrimeContext build_context(std::uint64_t p) {
    if (p >> 63 != 0) {
        throw ModulusTooLarge("modulus must fit in 63 bits, got " + std::to_string(p));
    }
    const auto [n, q] = decompose(p);
    if (!oracle::is_prime_deterministic(p)) {
        throw CompositeModulus(std::to_string(p) + " is not prime");
    }

    PrimeContext ctx;
    ctx.p = p;
    ctx.n = n;
    ctx.q = q;

    // Smallest-first nonresidue search keeps operation counts reproducible.
    const std::uint64_t half = (p - 1) / 2;
    std::uint64_t u = 2;
    while (raw::pow(u, half, p) != p - 1) ++u;
    ctx.u = Residue(u);
    ctx.z0 = Residue(raw::pow(u, q, p));

    // ord(z0) = 2^n exactly, i.e. z0^(2^(n-1)) = -1.
    std::uint64_t t = ctx.z0.v;
    for (int i = 0; i < n - 1; ++i) t = raw::mul(t, t, p);
    if (t != p - 1) {
        throw InvariantViolation("z0 does not have order 2^n for p = " + std::to_string(p));
    }
    return ctx;
}

bool euler_is_qr(Residue a, const PrimeContext& ctx) {
    if (a.v == 0) return false;
    return raw::pow(a.v, (ctx.p - 1) / 2, ctx.p) == 1;
}

Residue mul(Residue a, Residue b, const PrimeContext& ctx, OpCounter& ctr) {
    ctr.charge_mul();
    return Residue(raw::mul(a.v, b.v, ctx.p));
}

Residue pow_mod(Residue a, std::uint64_t e, const PrimeContext& ctx, OpCounter& ctr) {
    if (e == 0) return Residue(1);
    const int top = std::bit_width(e) - 1;
    Residue r = a;
    for (int i = top - 1; i >= 0; --i) {
        r = mul(r, r, ctx, ctr);
        if ((e >> i) & 1) r = mul(r, a, ctx, ctr);
    }
    return r;
}

PowerTable build_power_table(Residue base, int max_exponent, const PrimeContext& ctx,
                             OpCounter& ctr) {
    PowerTable table;
    table.base = base;
    table.entries.reserve(static_cast<std::size_t>(max_exponent) + 1);
    table.entries.push_back(base);
    for (int j = 0; j < max_exponent; ++j) {
        table.entries.push_back(mul(table.entries.back(), table.entries.back(), ctx, ctr));
    }
    return table;
}

Residue table_lookup(const PowerTable& table, int j, OpCounter& ctr) {
    if (j < 0 || j > table.max_exponent()) {
        throw IndexOutOfRange("table index " + std::to_string(j) + " out of range [0, " +
                              std::to_string(table.max_exponent()) + "]");
    }
    ctr.charge_lookup();
    return table.entries[static_cast<std::size_t>(j)];
}

}  // namespace modsqrt
