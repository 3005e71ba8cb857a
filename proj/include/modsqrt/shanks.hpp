// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "modsqrt/field.hpp"

namespace modsqrt {

// Least m >= 0 with b^(2^m) = 1 (mod p), found by repeated squaring; charges
// exactly m multiplications. Throws OrderExceedsBound if 1 is not reached
// within k_max squarings.
int least_order_exponent(Residue b, int k_max, const PrimeContext& ctx, OpCounter& ctr);

// Classic Shanks loop. Requires a to be 0 or a quadratic residue (throws
// NotAResidue otherwise); returns a root x with x^2 = a (mod p) within at
// most n loop iterations. mul_init covers the two exponentiations of the
// setup step (z0 comes precomputed with the context); mul_loop covers the
// order searches and the t/z/b/x updates.
SqrtOutcome sqrt_shanks(Residue a, const PrimeContext& ctx, SqrtTrace* trace = nullptr);

}  // namespace modsqrt
