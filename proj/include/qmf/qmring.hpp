#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "qmf/exactnum.hpp"
#include "qmf/halfint.hpp"
#include "qmf/qseries.hpp"

namespace qmf {

// Exponent triple X^a Y^b Z^c. The three variables stand for the generators
// of weight 1/2, 2 and 2, so a monomial has weight (a + 4b + 4c)/2.
struct Monomial {
    unsigned a = 0;
    unsigned b = 0;
    unsigned c = 0;

    auto operator<=>(const Monomial&) const = default;
    long weight_halves() const { return long(a) + 4L * b + 4L * c; }
};

// Isobaric (weighted-homogeneous) polynomial in X, Y, Z: the polynomial model
// of a quasimodular form of level 4. Every stored monomial must match the
// declared weight; the redundancy is asserted on each insertion and catches
// arithmetic bugs early. Zero coefficients are never stored, so the zero
// polynomial is representable at any declared weight.
class IsobaricPoly {
public:
    explicit IsobaricPoly(HalfInt weight) : w_(weight) {}

    static IsobaricPoly theta(); // X
    static IsobaricPoly f2();    // Y
    static IsobaricPoly e2();    // Z
    static IsobaricPoly one();
    static IsobaricPoly constant(Rational value);
    static IsobaricPoly monomial(Monomial m, Rational coeff);

    HalfInt weight() const { return w_; }
    const std::map<Monomial, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    Rational coeff(const Monomial& m) const;
    unsigned x_degree() const; // 0 for the zero polynomial
    bool has_z_terms() const;

    void add_term(const Monomial& m, const Rational& coeff);

    friend IsobaricPoly operator+(const IsobaricPoly& p, const IsobaricPoly& q);
    friend IsobaricPoly operator-(const IsobaricPoly& p, const IsobaricPoly& q);
    friend IsobaricPoly operator*(const IsobaricPoly& p, const IsobaricPoly& q);
    IsobaricPoly operator-() const;
    IsobaricPoly scaled(const Rational& s) const;
    IsobaricPoly pow(unsigned long e) const;
    bool operator==(const IsobaricPoly& o) const { return w_ == o.w_ && t_ == o.t_; }

    std::string str() const;

private:
    HalfInt w_;
    std::map<Monomial, Rational> t_;
};

// Polynomial model of a level-1 quasimodular form: variables of weight 4, 6
// and 2 standing for E4, E6 and E2. Only the Z-free part is ever populated by
// this library, but the grading carries Z for symmetry.
class Gamma1Poly {
public:
    explicit Gamma1Poly(long weight) : w_(weight) {}

    long weight() const { return w_; }
    const std::map<Monomial, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add_term(const Monomial& m, const Rational& coeff);
    bool operator==(const Gamma1Poly& o) const { return w_ == o.w_ && t_ == o.t_; }

    std::string str() const;

private:
    long w_;
    std::map<Monomial, Rational> t_;
};

// Substitute the generator q-expansions and expand, exact to the requested
// precision.
QSeries eval_to_qseries(const IsobaricPoly& p, std::size_t precision);

// Derivative D = q d/dq carried to the polynomial model through the closed
// derivative rules of the three generators:
//   D X = (XZ - X^5 + 80XY)/24
//   D Y = (YZ + 5X^4 Y - 16Y^2)/6
//   D Z = (Z^2 - X^8 - 224X^4 Y - 256Y^2)/12
// Raises the weight by exactly 2 and commutes with eval_to_qseries/d_series.
IsobaricPoly d_poly(const IsobaricPoly& p);
IsobaricPoly d_poly_iter(IsobaricPoly p, unsigned long n);

// Drop every monomial with a positive Z-exponent (set Z = 0).
IsobaricPoly modular_part(const IsobaricPoly& p);

// Number of guard coefficients checked beyond the basis dimension in the
// decompositions below. Inputs outside the span are detected on the guard
// band instead of being silently fitted.
constexpr std::size_t kDecomposeGuard = 5;

// Write a weight-k form as a polynomial in the two modular generators,
// i.e. find c_b with f = sum_b c_b X^(2k-4b) Y^b. The basis is triangular
// (X^a Y^b has leading coefficient 1 at q^b), so the system solves by forward
// substitution; the residual must vanish to the full precision of f.
// Throws InsufficientPrecision when precision < dim + guard, NotInSpan when a
// residual survives.
IsobaricPoly decompose_gamma14(const QSeries& f, HalfInt k);

// Same for level 1: f = sum c_{a,b} E4^a E6^b with 4a + 6b = k, solved by
// exact Gaussian elimination on the first dim coefficients.
Gamma1Poly decompose_gamma1(const QSeries& f, long k);

// Rewrite a level-1 polynomial (Z-free) in the level-4 generators by
// substituting the expansions of E4 and E6 in X and Y.
IsobaricPoly gamma1_to_gamma14(const Gamma1Poly& g);

// X^8 + 224X^4 Y + 256Y^2 and its weight-6 companion: the models of E4, E6.
IsobaricPoly e4_poly();
IsobaricPoly e6_poly();

// Model of E_{p-1} in X, Y for a prime p >= 5: the Hasse-invariant lift,
// congruent to 1 mod p as a q-series. Monic in X of X-degree 2(p-1). Computed
// by direct decomposition and cross-checked against the level-1 route
// (decompose there, then substitute); precision 0 picks a sufficient default.
IsobaricPoly hasse_poly(const Int& p, std::size_t precision = 0);

} // namespace qmf
