// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "modsqrt/field.hpp"

namespace modsqrt::oracle {

// Ground-truth machinery kept deliberately independent of the counted
// arithmetic paths it is used to check.

struct RootSet {
    Residue a;
    std::vector<Residue> roots;  // sorted; size 0, 1 (only a = 0) or 2
};

// All x in [0, p) with x^2 = a (mod p), by full scan. Requires p <= 10^6;
// throws ModulusTooLarge above that.
RootSet brute_force_roots(Residue a, std::uint64_t p);

// Exact Miller-Rabin with a fixed witness set valid for the whole 64-bit range.
bool is_prime_deterministic(std::uint64_t x);

// An exact dyadic rational num / 2^log2_den.
struct Dyadic {
    __int128 num = 0;
    int log2_den = 0;

    double value() const;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

// Average number of loop multiplications of the classic Shanks loop over
// uniform quadratic residues: (n^2 + 7n - 12)/4 + 1/2^(n-1) (Lindhurst).
Dyadic lindhurst_expected(int n);

}  // namespace modsqrt::oracle
