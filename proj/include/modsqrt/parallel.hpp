// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "modsqrt/field.hpp"

namespace modsqrt {

// How the independent multiplications of a table refresh are executed. Counts
// and rounds are identical in both modes; only the execution vehicle differs.
enum class ExecMode { sequential_simulated, concurrent };

// Live state of the parallel variant between iterations.
struct ParallelState {
    const PowerTable* z_table = nullptr;
    PowerTable b_table;     // entries[j] = b^(2^j) for the current b, j = 0..k
    int z_shift = 0;        // current z = z_table entry at z_shift
    int k = 0;
    Residue x;
    std::uint64_t rounds = 0;
};

// Replaces the live b table by the powers of b * z: new entries[j] =
// old entries[j] * z^(2^j) for j = 0..m, as m+1 independent multiplications
// executed as one fork-join round. Charges m+1 multiplications and 2(m+1)
// lookups regardless of mode; increments rounds by one; truncates the table
// to exponent m.
void refresh_b_table(ParallelState& st, int m, const PrimeContext& ctx, OpCounter& ctr,
                     ExecMode mode);

// Parallel variant of the Shanks loop: live power tables of b and z make the
// order search pure lookups, and each iteration refreshes the b table in one
// fork-join round. Root and m-sequence are identical to sqrt_shanks; the
// outcome carries the round count.
SqrtOutcome sqrt_parallel(Residue a, const PrimeContext& ctx,
                          ExecMode mode = ExecMode::sequential_simulated,
                          SqrtTrace* trace = nullptr);

}  // namespace modsqrt
