#pragma once

#include <stdexcept>
#include <string>

namespace qmf {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reduction mod p^m asked for a rational whose denominator is divisible by p.
struct DenominatorNotPUnit : Error {
    using Error::Error;
};

// Linear decomposition left a nonzero residual: the input series is not in the
// span of the requested basis (to the checked precision).
struct NotInSpan : Error {
    using Error::Error;
};

// A series was handed to a decomposition with fewer known coefficients than
// the basis dimension plus the guard band.
struct InsufficientPrecision : Error {
    using Error::Error;
};

// divide_monic_x requires the divisor's top X-slice to be exactly X^d.
struct NotMonicInX : Error {
    using Error::Error;
};

// The modular-form recursion produced a polynomial with surviving Z-terms.
// Signals an arithmetic bug, never bad user input.
struct NonModularResidue : Error {
    using Error::Error;
};

// falling_factorial(x, y) needs x - y to be a non-negative integer.
struct InvalidBracket : Error {
    using Error::Error;
};

// A value that must be a rational integer came out fractional.
struct NonIntegerResult : Error {
    using Error::Error;
};

// A CM evaluation landed on more than the predicted power of t.
struct UnexpectedSupport : Error {
    using Error::Error;
};

// Two numerical estimates at different sample counts disagree beyond tolerance.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// Sum of graded pieces with different weights.
struct WeightMismatch : Error {
    using Error::Error;
};

// Cross-check between two independent computation paths failed.
struct InternalError : Error {
    using Error::Error;
};

} // namespace qmf
