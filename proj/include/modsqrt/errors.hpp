// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace modsqrt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Modulus is even, too small, or failed the deterministic primality test.
class CompositeModulus : public Error {
public:
    using Error::Error;
};

// Modulus exceeds the supported range (63 bits for contexts, 10^6 for exhaustive scans).
class ModulusTooLarge : public Error {
public:
    using Error::Error;
};

// The input has no square root modulo p.
class NotAResidue : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// An element's order did not collapse to 1 within the permitted number of squarings.
class OrderExceedsBound : public Error {
public:
    using Error::Error;
};

// An internal algebraic invariant failed; indicates corrupted state, not bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace modsqrt
