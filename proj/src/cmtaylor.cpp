#include "qmf/cmtaylor.hpp"

#include <utility>

namespace qmf {

Rational falling_factorial(const Rational& x, const Rational& y)
{
    Rational diff = x - y;
    if (!is_integer(diff) || diff < 0)
        throw InvalidBracket("falling_factorial: x - y = (" + Rational(diff).get_str() +
                             ") is not a non-negative integer");
    unsigned long steps = mpz_get_ui(diff.get_num().get_mpz_t());
    Rational acc(1);
    Rational factor = x;
    for (unsigned long i = 0; i < steps; ++i) {
        acc *= factor;
        factor -= 1;
    }
    return acc;
}

ZagierSequence::ZagierSequence(const IsobaricPoly& f, unsigned count) : k_(f.weight())
{
    if (f.has_z_terms())
        throw Error("ZagierSequence: input must be modular (free of the E2 variable)");
    forms_.reserve(count + 1);
    forms_.push_back(f);
    IsobaricPoly e4 = e4_poly();
    Rational k = make_rational(k_.twice(), 2);
    for (unsigned n = 0; n < count; ++n) {
        const IsobaricPoly& fn = forms_[n];
        IsobaricPoly next = d_poly(fn) - (IsobaricPoly::e2() * fn).scaled((k + 2 * long(n)) / 12);
        if (n >= 1) {
            Rational c = Rational(long(n)) * (Rational(long(n)) + k - 1) / 144;
            next = next - (e4 * forms_[n - 1]).scaled(c);
        }
        if (next.has_z_terms())
            throw NonModularResidue("ZagierSequence: Z-terms survived at index " +
                                    std::to_string(n + 1));
        forms_.push_back(std::move(next));
    }
}

IsobaricPoly dn_via_zagier(const IsobaricPoly& f, unsigned n)
{
    ZagierSequence seq(f, n);
    Rational k = make_rational(f.weight().twice(), 2);
    Rational top = Rational(long(n)) + k - 1;
    IsobaricPoly e2_over_12 = IsobaricPoly::e2().scaled(Rational(1, 12));
    IsobaricPoly e2_power = IsobaricPoly::one();
    IsobaricPoly acc(f.weight() + 2 * long(n));
    for (unsigned i = 0; i <= n; ++i) {
        Int binom;
        mpz_bin_uiui(binom.get_mpz_t(), n, i);
        Rational coeff = Rational(binom) * falling_factorial(top, top - long(i));
        acc = acc + (seq.form(n - i) * e2_power).scaled(coeff);
        if (i < n)
            e2_power = e2_power * e2_over_12;
    }
    return acc;
}

unsigned cm_support_exponent(HalfInt weight)
{
    long h = weight.twice() % 8;
    if (h < 0)
        h += 8;
    return unsigned((5 * h) % 8);
}

AlgebraicNumber cm_eval(const IsobaricPoly& g)
{
    // X -> t^5, Y -> t^4/8, Z -> -6 t^4, so a monomial contributes
    // coeff * (-6)^c / 8^b * t^(5a+4b+4c) folded through t^8 = 2.
    AlgebraicNumber acc;
    for (const auto& [m, v] : g.terms()) {
        unsigned long e = 5UL * m.a + 4UL * m.b + 4UL * m.c;
        Rational scale = v * make_rational(pow_int(Int(-6), m.c), pow_int(Int(8), m.b));
        acc = acc + AlgebraicNumber::t_power(e).scaled(scale);
    }
    if (!acc.supported_only_on(cm_support_exponent(g.weight())))
        throw UnexpectedSupport("cm_eval: value of a weight-" + g.weight().str() +
                                " polynomial off the predicted power of t");
    return acc;
}

AlgebraicNumber cn_value(const IsobaricPoly& f, unsigned n)
{
    return cm_eval(d_poly_iter(f, n));
}

namespace {

// d(n) from the CM value of the 2n-th derivative of the theta model.
Int extract_romik(const AlgebraicNumber& c2n, unsigned n)
{
    if (!c2n.supported_only_on(5))
        throw UnexpectedSupport("romik_d: c_(2n) not supported on t^5 at n = " +
                                std::to_string(n));
    // 2^(-5/8) * r t^5 = r
    const Rational& r = c2n.coord(5);
    if (!is_integer(r))
        throw NonIntegerResult("romik_d: d(" + std::to_string(n) + ") = " + r.get_str() +
                               " is not an integer");
    return r.get_num();
}

} // namespace

Int romik_d(unsigned n)
{
    return extract_romik(cn_value(IsobaricPoly::theta(), 2 * n), n);
}

std::vector<Int> romik_sequence(unsigned n_max)
{
    std::vector<Int> out;
    out.reserve(n_max + 1);
    IsobaricPoly cur = IsobaricPoly::theta();
    for (unsigned j = 0; j <= 2 * n_max; ++j) {
        if (j % 2 == 0)
            out.push_back(extract_romik(cm_eval(cur), j / 2));
        if (j < 2 * n_max)
            cur = d_poly(cur);
    }
    return out;
}

bool CongruenceReport::all_satisfied() const
{
    for (const auto& e : entries)
        if (!e.satisfied)
            return false;
    return true;
}

CongruenceReport romik_ord_scan(const Int& p, unsigned m, unsigned n_lo, unsigned n_hi)
{
    if (n_hi < n_lo)
        throw Error("romik_ord_scan: empty range");
    CongruenceReport rep{p, m, "d(n)", {}};
    rep.entries.reserve(n_hi - n_lo + 1);
    IsobaricPoly cur = IsobaricPoly::theta();
    for (unsigned j = 0; j <= 2 * n_hi; ++j) {
        if (j % 2 == 0 && j / 2 >= n_lo) {
            unsigned n = j / 2;
            Int d = extract_romik(cm_eval(cur), n);
            PadicOrder ord = d == 0 ? PadicOrder::infinity()
                                    : PadicOrder::of(Rational(ord_p_rational(Rational(d), p)));
            rep.entries.push_back({n, ord, ord >= long(m)});
        }
        if (j < 2 * n_hi)
            cur = d_poly(cur);
    }
    return rep;
}

CongruenceReport cn_ord_scan(const IsobaricPoly& f, const Int& p, unsigned m, unsigned n_lo,
                             unsigned n_hi)
{
    if (n_hi < n_lo)
        throw Error("cn_ord_scan: empty range");
    CongruenceReport rep{p, m, "c_n", {}};
    rep.entries.reserve(n_hi - n_lo + 1);
    IsobaricPoly cur = f;
    for (unsigned n = 0; n <= n_hi; ++n) {
        if (n >= n_lo) {
            AlgebraicNumber cn = cm_eval(cur);
            PadicOrder ord = ord_p_alg(cn, p);
            if (!(ord >= 0))
                throw InternalError("cn_ord_scan: c_n not p-integral at n = " +
                                    std::to_string(n));
            rep.entries.push_back({n, ord, ord >= long(m)});
        }
        if (n < n_hi)
            cur = d_poly(cur);
    }
    return rep;
}

CongruenceReport hasse_cn_scan(const Int& p, unsigned n_lo, unsigned n_hi)
{
    CongruenceReport rep = cn_ord_scan(hasse_poly(p), p, 1, n_lo, n_hi);
    rep.target = "c_n(E_(p-1))";
    return rep;
}

} // namespace qmf
