// SPDX-License-Identifier: Apache-2.0
#include "modsqrt/oracle.hpp"

#include <cmath>
#include <string>

namespace modsqrt::oracle {

namespace {

// Local arithmetic, on purpose not shared with the counted library paths.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

RootSet brute_force_roots(Residue a, std::uint64_t p) {
    constexpr std::uint64_t kScanBound = 1000000;
    if (p > kScanBound) {
        throw ModulusTooLarge("exhaustive root scan limited to p <= 10^6, got " +
                              std::to_string(p));
    }
    RootSet set;
    set.a = a;
    for (std::uint64_t x = 0; x < p; ++x) {
        if (mulmod(x, x, p) == a.v) set.roots.push_back(Residue(x));
    }
    return set;
}

bool is_prime_deterministic(std::uint64_t x) {
    if (x < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                            29ULL, 31ULL, 37ULL}) {
        if (x == d) return true;
        if (x % d == 0) return false;
    }
    std::uint64_t d = x - 1;
    int s = 0;
    while (d % 2 == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is exact for all x < 3.3 * 10^24, in particular for the
    // whole uint64_t range.
    for (std::uint64_t w : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                            29ULL, 31ULL, 37ULL}) {
        std::uint64_t y = powmod(w, d, x);
        if (y == 1 || y == x - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            y = mulmod(y, y, x);
            if (y == x - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

double Dyadic::value() const { return std::ldexp(static_cast<double>(num), -log2_den); }

Dyadic lindhurst_expected(int n) {
    // (n^2 + 7n - 12)/4 + 1/2^(n-1) over the common denominator 2^max(2, n-1).
    const int k = n - 1 > 2 ? n - 1 : 2;
    const __int128 poly = static_cast<__int128>(n) * n + 7 * n - 12;
    Dyadic d;
    d.log2_den = k;
    d.num = poly * (static_cast<__int128>(1) << (k - 2)) +
            (static_cast<__int128>(1) << (k - (n - 1)));
    return d;
}

}  // namespace modsqrt::oracle
