// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "modsqrt/field.hpp"

namespace modsqrt {

// One block of the tabulated search: the power table of the block-start value
// b0 plus the master-table shifts of the z factors folded into b since the
// block began. The current running product is b0 * z_1 * ... * z_i.
struct BlockState {
    const PowerTable* z_table = nullptr;
    PowerTable b_table;           // entries[j] = b0^(2^j)
    std::vector<int> z_shifts;    // shift l_j with z_j = z_table->entries[l_j]
    int k = 0;                    // current order-exponent bound
};

// Evaluates b0^(2^m) * z_1^(2^m) * ... * z_i^(2^m) with i+1 lookups and
// exactly i multiplications, and tests it against 1.
bool product_is_one_at(int m, const BlockState& st, const PrimeContext& ctx, OpCounter& ctr,
                       SqrtTrace* trace = nullptr);

// Least m with the block product equal to 1, by descending scan from k-1:
// the answer is one above the first failing exponent (0 if none fails).
int find_least_m(const BlockState& st, const PrimeContext& ctx, OpCounter& ctr,
                 SqrtTrace* trace = nullptr);

// Tabulated variant of the Shanks loop: the powers of z live in one master
// table built once per call, powers of z_i are index shifts into it, and the
// order search works on the b0 table plus at most ceil(sqrt(n)) z factors per
// block. Root and m-sequence are identical to sqrt_shanks.
SqrtOutcome sqrt_tabulated(Residue a, const PrimeContext& ctx, SqrtTrace* trace = nullptr);

}  // namespace modsqrt
