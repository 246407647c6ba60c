#include "qmf/exactnum.hpp"

#include <sstream>

namespace qmf {

Rational make_rational(Int num, Int den)
{
    if (den == 0)
        throw Error("make_rational: zero denominator");
    Rational r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& r)
{
    return r.get_den() == 1;
}

Int pow_int(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

long ord_p_rational(const Rational& r, const Int& p)
{
    if (r == 0)
        throw Error("ord_p_rational: zero has no finite order");
    Int tmp;
    long vnum = static_cast<long>(
        mpz_remove(tmp.get_mpz_t(), r.get_num().get_mpz_t(), p.get_mpz_t()));
    long vden = static_cast<long>(
        mpz_remove(tmp.get_mpz_t(), r.get_den().get_mpz_t(), p.get_mpz_t()));
    return vnum - vden;
}

const Rational& PadicOrder::value() const
{
    if (infinite_)
        throw Error("PadicOrder: infinite order has no value");
    return v_;
}

bool PadicOrder::operator==(const PadicOrder& o) const
{
    if (infinite_ || o.infinite_)
        return infinite_ == o.infinite_;
    return v_ == o.v_;
}

bool PadicOrder::operator>=(long bound) const
{
    return infinite_ || v_ >= bound;
}

bool PadicOrder::operator>=(const PadicOrder& o) const
{
    if (infinite_)
        return true;
    if (o.infinite_)
        return false;
    return v_ >= o.v_;
}

PadicOrder operator+(const PadicOrder& a, const PadicOrder& b)
{
    if (a.infinite_ || b.infinite_)
        return PadicOrder::infinity();
    return PadicOrder::of(a.v_ + b.v_);
}

PadicOrder min(const PadicOrder& a, const PadicOrder& b)
{
    if (a.infinite_)
        return b;
    if (b.infinite_)
        return a;
    return a.v_ <= b.v_ ? a : b;
}

std::string PadicOrder::str() const
{
    if (infinite_)
        return "inf";
    std::ostringstream os;
    os << v_;
    return os.str();
}

AlgebraicNumber AlgebraicNumber::from_rational(Rational r)
{
    AlgebraicNumber a;
    a.c_[0] = std::move(r);
    return a;
}

AlgebraicNumber AlgebraicNumber::t_power(unsigned long e)
{
    AlgebraicNumber a;
    a.c_[e % 8] = Rational(pow_int(Int(2), e / 8));
    return a;
}

bool AlgebraicNumber::is_zero() const
{
    for (const auto& x : c_)
        if (x != 0)
            return false;
    return true;
}

bool AlgebraicNumber::supported_only_on(unsigned j) const
{
    for (unsigned i = 0; i < 8; ++i)
        if (i != j && c_[i] != 0)
            return false;
    return true;
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b)
{
    AlgebraicNumber r;
    for (unsigned i = 0; i < 8; ++i)
        r.c_[i] = a.c_[i] + b.c_[i];
    return r;
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b)
{
    AlgebraicNumber r;
    for (unsigned i = 0; i < 8; ++i)
        r.c_[i] = a.c_[i] - b.c_[i];
    return r;
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b)
{
    // Convolve, then fold t^(8+j) = 2 t^j.
    std::array<Rational, 15> acc{};
    for (unsigned i = 0; i < 8; ++i) {
        if (a.c_[i] == 0)
            continue;
        for (unsigned j = 0; j < 8; ++j) {
            if (b.c_[j] == 0)
                continue;
            acc[i + j] += a.c_[i] * b.c_[j];
        }
    }
    AlgebraicNumber r;
    for (unsigned e = 0; e < 8; ++e)
        r.c_[e] = acc[e];
    for (unsigned e = 8; e < 15; ++e)
        r.c_[e - 8] += 2 * acc[e];
    return r;
}

AlgebraicNumber AlgebraicNumber::operator-() const
{
    AlgebraicNumber r;
    for (unsigned i = 0; i < 8; ++i)
        r.c_[i] = -c_[i];
    return r;
}

AlgebraicNumber AlgebraicNumber::scaled(const Rational& s) const
{
    AlgebraicNumber r;
    if (s == 0)
        return r;
    for (unsigned i = 0; i < 8; ++i)
        r.c_[i] = c_[i] * s;
    return r;
}

std::string AlgebraicNumber::str() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (unsigned j = 0; j < 8; ++j) {
        if (c_[j] == 0)
            continue;
        Rational v = c_[j];
        if (first) {
            if (v < 0) {
                os << "-";
                v = -v;
            }
            first = false;
        } else if (v < 0) {
            os << " - ";
            v = -v;
        } else {
            os << " + ";
        }
        if (j == 0) {
            os << v;
        } else {
            if (v != 1)
                os << v << "*";
            os << "t";
            if (j > 1)
                os << "^" << j;
        }
    }
    return os.str();
}

PadicOrder ord_p_alg(const AlgebraicNumber& alpha, const Int& p)
{
    if (p == 2)
        throw Error("ord_p_alg: p = 2 is ramified in Q(2^(1/8)) and unsupported");
    if (p < 3 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw Error("ord_p_alg: p must be an odd prime");
    PadicOrder best = PadicOrder::infinity();
    for (unsigned j = 0; j < 8; ++j) {
        const Rational& x = alpha.coord(j);
        if (x == 0)
            continue;
        best = min(best, PadicOrder::of(Rational(ord_p_rational(x, p))));
    }
    return best;
}

Int reduce_rational_mod(const Rational& r, const Int& p, unsigned m)
{
    if (m == 0)
        throw Error("reduce_rational_mod: m must be positive");
    if (mpz_divisible_p(r.get_den().get_mpz_t(), p.get_mpz_t()))
        throw DenominatorNotPUnit("reduce_rational_mod: denominator " +
                                  r.get_den().get_str() + " is divisible by " + p.get_str());
    Int modulus = pow_int(p, m);
    Int den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), r.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0)
        throw DenominatorNotPUnit("reduce_rational_mod: denominator not invertible mod " +
                                  modulus.get_str());
    Int out = r.get_num() * den_inv;
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), modulus.get_mpz_t());
    return out;
}

} // namespace qmf
