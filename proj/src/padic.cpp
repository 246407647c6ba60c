#include "qmf/padic.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace qmf {

ModPoly::ModPoly(Int p, unsigned m, HalfInt weight)
    : p_(std::move(p)), m_(m), pm_(pow_int(p_, m)), w_(weight)
{
    if (p_ < 2 || m_ == 0)
        throw Error("ModPoly: modulus must be p^m with m >= 1");
}

Int ModPoly::coeff(const Monomial& m) const
{
    auto it = t_.find(m);
    return it == t_.end() ? Int(0) : it->second;
}

unsigned ModPoly::x_degree() const
{
    unsigned d = 0;
    for (const auto& [m, v] : t_)
        d = std::max(d, m.a);
    return d;
}

void ModPoly::add_term(const Monomial& m, const Int& value)
{
    if (m.weight_halves() != w_.twice())
        throw WeightMismatch("ModPoly: monomial grade mismatch at weight " + w_.str());
    Int v;
    mpz_mod(v.get_mpz_t(), value.get_mpz_t(), pm_.get_mpz_t());
    if (v == 0)
        return;
    auto [it, inserted] = t_.try_emplace(m, v);
    if (!inserted) {
        it->second += v;
        mpz_mod(it->second.get_mpz_t(), it->second.get_mpz_t(), pm_.get_mpz_t());
        if (it->second == 0)
            t_.erase(it);
    }
}

void ModPoly::check_compatible(const ModPoly& o, const char* what) const
{
    if (p_ != o.p_ || m_ != o.m_)
        throw Error(std::string("ModPoly: ") + what + " across different moduli");
}

ModPoly operator+(const ModPoly& p, const ModPoly& q)
{
    p.check_compatible(q, "addition");
    if (p.w_ != q.w_)
        throw WeightMismatch("ModPoly: cannot add different weights");
    ModPoly r = p;
    for (const auto& [m, v] : q.t_)
        r.add_term(m, v);
    return r;
}

ModPoly operator-(const ModPoly& p, const ModPoly& q)
{
    p.check_compatible(q, "subtraction");
    if (p.w_ != q.w_)
        throw WeightMismatch("ModPoly: cannot subtract different weights");
    ModPoly r = p;
    for (const auto& [m, v] : q.t_)
        r.add_term(m, p.pm_ - v);
    return r;
}

ModPoly operator*(const ModPoly& p, const ModPoly& q)
{
    p.check_compatible(q, "multiplication");
    ModPoly r(p.p_, p.m_, p.w_ + q.w_);
    for (const auto& [mp, vp] : p.t_)
        for (const auto& [mq, vq] : q.t_)
            r.add_term({mp.a + mq.a, mp.b + mq.b, mp.c + mq.c}, vp * vq);
    return r;
}

ModPoly ModPoly::pow(unsigned long e) const
{
    ModPoly acc(p_, m_, HalfInt::whole(0));
    acc.add_term({0, 0, 0}, 1);
    if (e == 0)
        return acc;
    ModPoly base = *this;
    while (true) {
        if (e & 1)
            acc = acc * base;
        e >>= 1;
        if (e == 0)
            break;
        base = base * base;
    }
    return acc;
}

bool ModPoly::operator==(const ModPoly& o) const
{
    return p_ == o.p_ && m_ == o.m_ && w_ == o.w_ && t_ == o.t_;
}

std::string ModPoly::str() const
{
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        if (!first)
            os << " + ";
        first = false;
        const Monomial& m = it->first;
        os << it->second;
        if (m.a)
            os << "*X^" << m.a;
        if (m.b)
            os << "*Y^" << m.b;
        if (m.c)
            os << "*Z^" << m.c;
    }
    return os.str();
}

ModPoly reduce_poly_mod(const IsobaricPoly& poly, const Int& p, unsigned m)
{
    ModPoly r(p, m, poly.weight());
    for (const auto& [mono, v] : poly.terms())
        r.add_term(mono, reduce_rational_mod(v, p, m));
    return r;
}

XDivision divide_monic_x(const ModPoly& num, const ModPoly& den)
{
    num.check_compatible(den, "division");
    if (den.is_zero())
        throw NotMonicInX("divide_monic_x: zero divisor");
    unsigned d = den.x_degree();
    for (const auto& [m, v] : den.terms())
        if (m.a == d && !(m.b == 0 && m.c == 0 && v == 1))
            throw NotMonicInX("divide_monic_x: top X-slice of divisor is not X^" +
                              std::to_string(d));

    ModPoly quotient(num.p(), num.m(), num.weight() - den.weight());
    ModPoly rem = num;
    // Peel the top X-slice of the running remainder one degree at a time.
    // The divisor's lead is the bare X^d, so each slice moves verbatim into
    // the quotient and the subtraction only touches lower X-degrees.
    while (!rem.is_zero()) {
        unsigned top = rem.x_degree();
        if (top < d)
            break;
        std::vector<std::pair<Monomial, Int>> slice;
        for (const auto& [m, v] : rem.terms())
            if (m.a == top)
                slice.emplace_back(m, v);
        for (const auto& [m, v] : slice) {
            Monomial qm{m.a - d, m.b, m.c};
            quotient.add_term(qm, v);
            for (const auto& [dm, dv] : den.terms())
                rem.add_term({qm.a + dm.a, qm.b + dm.b, qm.c + dm.c}, Int(-(dv * v)));
        }
    }
    return {std::move(quotient), std::move(rem)};
}

IsobaricPoly lift_poly(const ModPoly& poly, LiftStyle style)
{
    IsobaricPoly out(poly.weight());
    Int half = poly.modulus() / 2;
    for (const auto& [m, v] : poly.terms()) {
        Int rep = v;
        if (style == LiftStyle::Symmetric && rep > half)
            rep -= poly.modulus();
        out.add_term(m, Rational(rep));
    }
    return out;
}

FiltrationResult filtration_bound(const QSeries& f, HalfInt k, const Int& p, unsigned m,
                                  std::size_t precision)
{
    if (precision == 0 || precision > f.precision())
        precision = f.precision();
    IsobaricPoly model = decompose_gamma14(f.truncated(precision), k);
    ModPoly reduced = reduce_poly_mod(model, p, m);

    FiltrationResult res;
    if (reduced.is_zero()) {
        res.zero_reduction = true;
        res.bound = k;
        return res;
    }

    unsigned long step = mpz_get_ui(pow_int(p, m - 1).get_mpz_t());
    ModPoly hasse_power = reduce_poly_mod(hasse_poly(p), p, m).pow(step);
    long weight_step = (p.get_si() - 1) * long(step);

    res.bound = k;
    while (true) {
        XDivision div = divide_monic_x(reduced, hasse_power);
        if (!div.remainder.is_zero())
            break;
        reduced = std::move(div.quotient);
        res.bound = res.bound - weight_step;
        ++res.drops;
        if (reduced.is_zero())
            break; // only happens for the zero class, caught above
    }
    res.witness = std::move(reduced);
    return res;
}

namespace {

// g must have p-unit denominators; divides every coefficient by p exactly.
IsobaricPoly divide_exactly_by_p(const IsobaricPoly& g, const Int& p)
{
    IsobaricPoly out(g.weight());
    for (const auto& [m, v] : g.terms()) {
        if (!mpz_divisible_p(v.get_num().get_mpz_t(), p.get_mpz_t()))
            throw InternalError("ideal_membership: expected divisibility by p failed");
        out.add_term(m, v / Rational(p));
    }
    return out;
}

bool membership_rec(const IsobaricPoly& g, unsigned n, const Int& p,
                    const IsobaricPoly& hasse, std::vector<IsobaricPoly>& hasse_powers,
                    const ModPoly& hasse_bar, LiftStyle lift)
{
    if (g.is_zero() || n == 0)
        return true;
    ModPoly gbar = reduce_poly_mod(g, p, 1);
    unsigned long pn = mpz_get_ui(p.get_mpz_t()) * n;
    if (gbar.is_zero()) {
        // g = p * (g/p), and p * I^(n-1) lies inside I^n.
        return membership_rec(divide_exactly_by_p(g, p), n - 1, p, hasse, hasse_powers,
                              hasse_bar, lift);
    }
    XDivision div = divide_monic_x(gbar, hasse_bar.pow(pn));
    if (!div.remainder.is_zero())
        return false;
    while (hasse_powers.size() <= pn)
        hasse_powers.push_back(hasse_powers.back() * hasse);
    IsobaricPoly lifted = lift_poly(div.quotient, lift);
    IsobaricPoly next = divide_exactly_by_p(g - hasse_powers[pn] * lifted, p);
    return membership_rec(next, n - 1, p, hasse, hasse_powers, hasse_bar, lift);
}

} // namespace

bool ideal_membership(const IsobaricPoly& g, unsigned n, const Int& p, LiftStyle lift)
{
    if (g.is_zero() || n == 0)
        return true;
    IsobaricPoly hasse = hasse_poly(p);
    std::vector<IsobaricPoly> hasse_powers{IsobaricPoly::one()};
    ModPoly hasse_bar = reduce_poly_mod(hasse, p, 1);
    return membership_rec(g, n, p, hasse, hasse_powers, hasse_bar, lift);
}

unsigned NuValue::finite_value() const
{
    if (kind_ != Kind::Finite)
        throw Error("NuValue: no finite value");
    return v_;
}

unsigned NuValue::established() const
{
    if (kind_ == Kind::Infinite)
        throw Error("NuValue: infinite");
    return v_;
}

bool NuValue::operator>=(unsigned bound) const
{
    return kind_ == Kind::Infinite || v_ >= bound;
}

std::string NuValue::str() const
{
    switch (kind_) {
    case Kind::Infinite:
        return "inf";
    case Kind::AtLeastCap:
        return ">=" + std::to_string(v_);
    default:
        return std::to_string(v_);
    }
}

NuValue nu_p(const IsobaricPoly& g, const Int& p, unsigned cap, LiftStyle lift)
{
    if (g.is_zero())
        return NuValue::infinity();
    if (cap == 0)
        throw Error("nu_p: cap must be positive");
    IsobaricPoly hasse = hasse_poly(p);
    std::vector<IsobaricPoly> hasse_powers{IsobaricPoly::one()};
    ModPoly hasse_bar = reduce_poly_mod(hasse, p, 1);
    for (unsigned n = 1; n <= cap; ++n) {
        if (!membership_rec(g, n, p, hasse, hasse_powers, hasse_bar, lift))
            return NuValue::finite(n - 1);
    }
    return NuValue::at_least(cap);
}

} // namespace qmf
