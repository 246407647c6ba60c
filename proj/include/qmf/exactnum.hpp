#pragma once

#include <array>
#include <string>

#include <gmpxx.h>

#include "qmf/errors.hpp"

namespace qmf {

using Int = mpz_class;
using Rational = mpq_class;

// num/den reduced to lowest terms with den > 0; throws Error on den == 0.
// mpq_class does not canonicalize on construction, so always build through here.
Rational make_rational(Int num, Int den);

bool is_integer(const Rational& r);

Int pow_int(const Int& base, unsigned long e);

// Exact p-adic valuation of a nonzero rational.
long ord_p_rational(const Rational& r, const Int& p);

// A p-adic order: a rational value, or +infinity (reserved for the zero element).
class PadicOrder {
public:
    static PadicOrder infinity() { return PadicOrder(true, Rational(0)); }
    static PadicOrder of(Rational v) { return PadicOrder(false, std::move(v)); }

    bool is_infinite() const { return infinite_; }
    const Rational& value() const;

    bool operator==(const PadicOrder& o) const;
    bool operator>=(long bound) const;
    bool operator>=(const PadicOrder& o) const;
    friend PadicOrder operator+(const PadicOrder& a, const PadicOrder& b);
    friend PadicOrder min(const PadicOrder& a, const PadicOrder& b);

    std::string str() const;

private:
    PadicOrder(bool inf, Rational v) : infinite_(inf), v_(std::move(v)) {}
    bool infinite_;
    Rational v_;
};

// Element of Q[t]/(t^8 - 2), coordinates on the basis 1, t, ..., t^7.
// t is a fixed eighth root of 2; every CM-evaluation value lives here.
class AlgebraicNumber {
public:
    AlgebraicNumber() = default; // zero

    static AlgebraicNumber from_rational(Rational r);
    static AlgebraicNumber from_int(long n) { return from_rational(Rational(n)); }
    // t^e for arbitrary e >= 0, folded through t^8 = 2.
    static AlgebraicNumber t_power(unsigned long e);

    const Rational& coord(unsigned j) const { return c_.at(j); }
    bool is_zero() const;
    // True if every coordinate other than t^j vanishes.
    bool supported_only_on(unsigned j) const;

    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
    AlgebraicNumber operator-() const;
    AlgebraicNumber scaled(const Rational& s) const;
    bool operator==(const AlgebraicNumber& o) const { return c_ == o.c_; }

    std::string str() const;

private:
    std::array<Rational, 8> c_{};
};

// min_j ord_p(x_j) over the t-basis coordinates, +infinity for 0.
// For odd p the ring is unramified at p, so this equals the minimum of the
// prime-by-prime valuations above p; rejects p = 2 (ramified).
PadicOrder ord_p_alg(const AlgebraicNumber& alpha, const Int& p);

// Image of r under Z_(p) -> Z/p^m Z, as a residue in [0, p^m).
// Throws DenominatorNotPUnit when r is not p-integral.
Int reduce_rational_mod(const Rational& r, const Int& p, unsigned m);

} // namespace qmf
