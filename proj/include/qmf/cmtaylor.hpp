#pragma once

#include <string>
#include <vector>

#include "qmf/padic.hpp"
#include "qmf/qmring.hpp"

namespace qmf {

// Falling-factorial product x(x-1)...(y+1), equal to 1 when x = y.
// x may be a half-integer; x - y must be a non-negative integer
// (InvalidBracket otherwise).
Rational falling_factorial(const Rational& x, const Rational& y);

// The modular companion sequence f_0, f_1, ... of a modular form f of weight
// k, defined by
//   f_{n+1} = (D f_n - (k+2n)/12 * E2 * f_n) - n(n+k-1)/144 * E4 * f_{n-1}
// with f_0 = f and f_{-1} = 0. Each f_n is modular of weight k + 2n: the
// E2-terms cancel identically, and a surviving Z-term raises
// NonModularResidue (an arithmetic bug, not bad input).
class ZagierSequence {
public:
    ZagierSequence(const IsobaricPoly& f, unsigned count);

    HalfInt base_weight() const { return k_; }
    unsigned max_index() const { return unsigned(forms_.size()) - 1; }
    const IsobaricPoly& form(unsigned n) const { return forms_.at(n); }

private:
    HalfInt k_;
    std::vector<IsobaricPoly> forms_;
};

// Zagier's closed form for the n-th derivative of a modular form f of
// weight k:
//   D^n f = sum_{i=0}^n C(n,i) * [n+k-1 falling to n+k-1-i] * f_{n-i} * (E2/12)^i.
// Exists as an independent second route to D^n f; must agree with iterated
// d_poly exactly.
IsobaricPoly dn_via_zagier(const IsobaricPoly& f, unsigned n);

// Evaluation at the CM point i/2, normalized by the canonical period: the
// generators take the values t^5, t^4/8 and -6t^4 in Q[t]/(t^8 - 2), t = 2^(1/8)
// (the third being the value of the non-holomorphic weight-2 companion).
// Every isobaric input lands on a single power of t, determined by the weight
// alone; UnexpectedSupport signals an arithmetic bug.
AlgebraicNumber cm_eval(const IsobaricPoly& g);

// t-exponent every weight-w isobaric polynomial evaluates onto: 5*(2w) mod 8.
unsigned cm_support_exponent(HalfInt weight);

// Normalized n-th Taylor coefficient c_n of a modular form given by its
// Z-free model: cm_eval of the n-fold derivative.
AlgebraicNumber cn_value(const IsobaricPoly& f, unsigned n);

// Romik's integer sequence: d(n) = 2^(-5/8) * c_{2n}(theta). The evaluation
// must be supported on t^5 only and the resulting rational must be an
// integer; UnexpectedSupport / NonIntegerResult otherwise.
Int romik_d(unsigned n);

// d(0..n_max) sharing one derivative ladder.
std::vector<Int> romik_sequence(unsigned n_max);

struct CongruenceEntry {
    unsigned n;
    PadicOrder ord;
    bool satisfied;
};

// Per-n record of a p-adic order against the bound ord >= m.
struct CongruenceReport {
    Int p;
    unsigned m = 1;
    std::string target;
    std::vector<CongruenceEntry> entries; // sorted by n
    bool all_satisfied() const;
};

// ord_p(d(n)) for n in [n_lo, n_hi], marked against ord >= m.
CongruenceReport romik_ord_scan(const Int& p, unsigned m, unsigned n_lo, unsigned n_hi);

// ord_p(c_n(f)) for n in [n_lo, n_hi] against ord >= m; f by its Z-free model.
// Also asserts ord_p(c_n) >= 0 throughout (the period normalization makes
// every c_n p-integral).
CongruenceReport cn_ord_scan(const IsobaricPoly& f, const Int& p, unsigned m, unsigned n_lo,
                             unsigned n_hi);

// ord_p(c_n(E_{p-1})) >= 1 for n in [n_lo, n_hi]: the Hasse lift's CM Taylor
// coefficients all vanish mod p when p = 3 mod 4.
CongruenceReport hasse_cn_scan(const Int& p, unsigned n_lo, unsigned n_hi);

} // namespace qmf
