#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "qmf/qmring.hpp"

namespace qmf {

// Isobaric polynomial with coefficients in Z/p^m Z. Same grading rules as
// IsobaricPoly; coefficients are kept reduced in [0, p^m) and zeros dropped.
class ModPoly {
public:
    ModPoly(Int p, unsigned m, HalfInt weight);

    const Int& p() const { return p_; }
    unsigned m() const { return m_; }
    const Int& modulus() const { return pm_; }
    HalfInt weight() const { return w_; }
    const std::map<Monomial, Int>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    Int coeff(const Monomial& m) const;
    unsigned x_degree() const;

    void add_term(const Monomial& m, const Int& value);

    friend ModPoly operator+(const ModPoly& p, const ModPoly& q);
    friend ModPoly operator-(const ModPoly& p, const ModPoly& q);
    friend ModPoly operator*(const ModPoly& p, const ModPoly& q);
    ModPoly pow(unsigned long e) const;
    bool operator==(const ModPoly& o) const;

    void check_compatible(const ModPoly& o, const char* what) const;

    std::string str() const;

private:
    Int p_;
    unsigned m_;
    Int pm_;
    HalfInt w_;
    std::map<Monomial, Int> t_;
};

// Coefficient-wise reduction under Z_(p) -> Z/p^m Z.
// Throws DenominatorNotPUnit if some coefficient is not p-integral.
ModPoly reduce_poly_mod(const IsobaricPoly& poly, const Int& p, unsigned m);

struct XDivision {
    ModPoly quotient;
    ModPoly remainder;
};

// Long division in X over (Z/p^m Z)[Y, Z]. The divisor's top X-slice must be
// exactly X^d with coefficient 1 (NotMonicInX otherwise); quotient and
// remainder are then unique with deg_X(remainder) < deg_X(divisor), and
// divisibility holds iff the remainder vanishes.
XDivision divide_monic_x(const ModPoly& num, const ModPoly& den);

enum class LiftStyle {
    NonNegative, // representatives in [0, p^m)
    Symmetric,   // representatives in (-p^m/2, p^m/2]
};

// Integer-coefficient preimage of a ModPoly under the chosen representatives.
IsobaricPoly lift_poly(const ModPoly& poly, LiftStyle style = LiftStyle::NonNegative);

struct FiltrationResult {
    bool zero_reduction = false; // f reduces to 0 mod p^m: the bound is -infinity
    HalfInt bound;               // final weight bound (meaningless if zero_reduction)
    unsigned drops = 0;          // number of successful divisions
    // Model of the congruent lower-weight witness: the final quotient, with
    // f == E_{p-1}^(drops * p^(m-1)) * (witness evaluated) mod p^m.
    std::optional<ModPoly> witness;
};

// Upper bound for the least weight among forms congruent to f mod p^m,
// obtained by repeatedly dividing the reduced model of f by the p^(m-1)-th
// power of the Hasse lift; every success lowers the weight by (p-1)p^(m-1).
FiltrationResult filtration_bound(const QSeries& f, HalfInt k, const Int& p, unsigned m,
                                  std::size_t precision);

// Decide membership of g in the n-th power of the ideal generated by
// (Hasse lift)^p and p. Recursive divide-and-descend: reduce mod p, divide by
// the pn-th power of the lift, subtract an integer lift of the quotient times
// the exact power, divide the difference by p, recurse with n-1. Any two
// integer lifts of the quotient differ by p * (arbitrary), which moves the
// recursed argument by an element of the (n-1)-st ideal power, so the verdict
// does not depend on the lift convention.
bool ideal_membership(const IsobaricPoly& g, unsigned n, const Int& p,
                      LiftStyle lift = LiftStyle::NonNegative);

constexpr unsigned kDefaultNuCap = 16;

// Value of the quasi-valuation: a non-negative integer, "at least cap" when
// membership still holds at the search cap, or +infinity for the zero
// polynomial only.
class NuValue {
public:
    static NuValue finite(unsigned n) { return NuValue(Kind::Finite, n); }
    static NuValue at_least(unsigned cap) { return NuValue(Kind::AtLeastCap, cap); }
    static NuValue infinity() { return NuValue(Kind::Infinite, 0); }

    bool is_infinite() const { return kind_ == Kind::Infinite; }
    bool is_capped() const { return kind_ == Kind::AtLeastCap; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    unsigned finite_value() const;
    // Largest n that membership was positively established for.
    unsigned established() const;
    bool operator>=(unsigned bound) const;
    bool operator==(const NuValue& o) const = default;

    std::string str() const;

private:
    enum class Kind { Finite, AtLeastCap, Infinite };
    NuValue(Kind k, unsigned v) : kind_(k), v_(v) {}
    Kind kind_;
    unsigned v_;
};

// Largest n <= cap with ideal_membership(g, n, p); "at least cap" if
// membership still holds there, +infinity iff g = 0.
NuValue nu_p(const IsobaricPoly& g, const Int& p, unsigned cap = kDefaultNuCap,
             LiftStyle lift = LiftStyle::NonNegative);

} // namespace qmf
