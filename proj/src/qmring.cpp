#include "qmf/qmring.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace qmf {

namespace {

HalfInt monomial_weight(const Monomial& m)
{
    return HalfInt::halves(m.weight_halves());
}

void append_term(std::ostringstream& os, bool& first, Rational v, const std::string& vars)
{
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
    if (vars.empty()) {
        os << v;
        return;
    }
    if (v != 1)
        os << v << "*";
    os << vars;
}

std::string monomial_vars(const Monomial& m, const char* names)
{
    std::ostringstream os;
    const unsigned exps[3] = {m.a, m.b, m.c};
    bool first = true;
    for (int i = 0; i < 3; ++i) {
        if (exps[i] == 0)
            continue;
        if (!first)
            os << "*";
        os << names[i];
        if (exps[i] > 1)
            os << "^" << exps[i];
        first = false;
    }
    return os.str();
}

} // namespace

IsobaricPoly IsobaricPoly::theta()
{
    return monomial({1, 0, 0}, 1);
}

IsobaricPoly IsobaricPoly::f2()
{
    return monomial({0, 1, 0}, 1);
}

IsobaricPoly IsobaricPoly::e2()
{
    return monomial({0, 0, 1}, 1);
}

IsobaricPoly IsobaricPoly::one()
{
    return monomial({0, 0, 0}, 1);
}

IsobaricPoly IsobaricPoly::constant(Rational value)
{
    return monomial({0, 0, 0}, std::move(value));
}

IsobaricPoly IsobaricPoly::monomial(Monomial m, Rational coeff)
{
    IsobaricPoly p(monomial_weight(m));
    p.add_term(m, coeff);
    return p;
}

Rational IsobaricPoly::coeff(const Monomial& m) const
{
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
}

unsigned IsobaricPoly::x_degree() const
{
    unsigned d = 0;
    for (const auto& [m, v] : t_)
        d = std::max(d, m.a);
    return d;
}

bool IsobaricPoly::has_z_terms() const
{
    for (const auto& [m, v] : t_)
        if (m.c > 0)
            return true;
    return false;
}

void IsobaricPoly::add_term(const Monomial& m, const Rational& coeff)
{
    if (coeff == 0)
        return;
    if (m.weight_halves() != w_.twice())
        throw WeightMismatch("IsobaricPoly: monomial of weight " +
                             monomial_weight(m).str() + " in a polynomial of weight " +
                             w_.str());
    auto [it, inserted] = t_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            t_.erase(it);
    }
}

IsobaricPoly operator+(const IsobaricPoly& p, const IsobaricPoly& q)
{
    if (p.w_ != q.w_)
        throw WeightMismatch("IsobaricPoly: cannot add weight " + p.w_.str() +
                             " to weight " + q.w_.str());
    IsobaricPoly r = p;
    for (const auto& [m, v] : q.t_)
        r.add_term(m, v);
    return r;
}

IsobaricPoly operator-(const IsobaricPoly& p, const IsobaricPoly& q)
{
    if (p.w_ != q.w_)
        throw WeightMismatch("IsobaricPoly: cannot subtract weight " + q.w_.str() +
                             " from weight " + p.w_.str());
    IsobaricPoly r = p;
    for (const auto& [m, v] : q.t_)
        r.add_term(m, -v);
    return r;
}

IsobaricPoly operator*(const IsobaricPoly& p, const IsobaricPoly& q)
{
    IsobaricPoly r(p.w_ + q.w_);
    for (const auto& [mp, vp] : p.t_)
        for (const auto& [mq, vq] : q.t_)
            r.add_term({mp.a + mq.a, mp.b + mq.b, mp.c + mq.c}, vp * vq);
    return r;
}

IsobaricPoly IsobaricPoly::operator-() const
{
    IsobaricPoly r(w_);
    for (const auto& [m, v] : t_)
        r.t_.emplace(m, -v);
    return r;
}

IsobaricPoly IsobaricPoly::scaled(const Rational& s) const
{
    IsobaricPoly r(w_);
    if (s == 0)
        return r;
    for (const auto& [m, v] : t_)
        r.t_.emplace(m, v * s);
    return r;
}

IsobaricPoly IsobaricPoly::pow(unsigned long e) const
{
    if (e == 0)
        return one();
    IsobaricPoly acc = *this;
    IsobaricPoly base = *this;
    // binary powering; weights multiply out automatically
    --e;
    while (e > 0) {
        if (e & 1)
            acc = acc * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return acc;
}

std::string IsobaricPoly::str() const
{
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    // highest X-degree first
    for (auto it = t_.rbegin(); it != t_.rend(); ++it)
        append_term(os, first, it->second, monomial_vars(it->first, "XYZ"));
    return os.str();
}

void Gamma1Poly::add_term(const Monomial& m, const Rational& coeff)
{
    if (coeff == 0)
        return;
    if (4L * m.a + 6L * m.b + 2L * m.c != w_)
        throw WeightMismatch("Gamma1Poly: monomial grade mismatch at weight " +
                             std::to_string(w_));
    auto [it, inserted] = t_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            t_.erase(it);
    }
}

std::string Gamma1Poly::str() const
{
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it)
        append_term(os, first, it->second, monomial_vars(it->first, "XYZ"));
    return os.str();
}

QSeries eval_to_qseries(const IsobaricPoly& p, std::size_t precision)
{
    if (precision == 0)
        throw Error("eval_to_qseries: precision must be at least 1");
    // Powers of each generator are cached incrementally; exponents repeat a
    // lot across the monomials of one polynomial.
    std::vector<QSeries> xp{QSeries::constant(1, precision)};
    std::vector<QSeries> yp{QSeries::constant(1, precision)};
    std::vector<QSeries> zp{QSeries::constant(1, precision)};
    QSeries xg = theta_series(precision);
    QSeries yg = f2_series(precision);
    QSeries zg = eisenstein_series(2, precision);
    auto power = [](std::vector<QSeries>& cache, const QSeries& gen, unsigned e) -> const QSeries& {
        while (cache.size() <= e)
            cache.push_back(cache.back() * gen);
        return cache[e];
    };
    QSeries acc = QSeries::zero(precision);
    for (const auto& [m, v] : p.terms()) {
        QSeries term = power(xp, xg, m.a) * power(yp, yg, m.b) * power(zp, zg, m.c);
        acc = acc + term.scaled(v);
    }
    return acc;
}

IsobaricPoly d_poly(const IsobaricPoly& p)
{
    IsobaricPoly r(p.weight() + 2);
    for (const auto& [m, v] : p.terms()) {
        if (m.a > 0) {
            // a X^(a-1) (DX) Y^b Z^c
            Rational s = v * Rational(m.a) / 24;
            r.add_term({m.a, m.b, m.c + 1}, s);
            r.add_term({m.a + 4, m.b, m.c}, -s);
            r.add_term({m.a, m.b + 1, m.c}, 80 * s);
        }
        if (m.b > 0) {
            Rational s = v * Rational(m.b) / 6;
            r.add_term({m.a, m.b, m.c + 1}, s);
            r.add_term({m.a + 4, m.b, m.c}, 5 * s);
            r.add_term({m.a, m.b + 1, m.c}, -16 * s);
        }
        if (m.c > 0) {
            Rational s = v * Rational(m.c) / 12;
            r.add_term({m.a, m.b, m.c + 1}, s);
            r.add_term({m.a + 8, m.b, m.c - 1}, -s);
            r.add_term({m.a + 4, m.b + 1, m.c - 1}, -224 * s);
            r.add_term({m.a, m.b + 2, m.c - 1}, -256 * s);
        }
    }
    return r;
}

IsobaricPoly d_poly_iter(IsobaricPoly p, unsigned long n)
{
    for (unsigned long i = 0; i < n; ++i)
        p = d_poly(p);
    return p;
}

IsobaricPoly modular_part(const IsobaricPoly& p)
{
    IsobaricPoly r(p.weight());
    for (const auto& [m, v] : p.terms())
        if (m.c == 0)
            r.add_term(m, v);
    return r;
}

IsobaricPoly decompose_gamma14(const QSeries& f, HalfInt k)
{
    if (k.twice() < 0)
        throw Error("decompose_gamma14: negative weight");
    // basis X^(2k-4b) Y^b, b = 0..floor(k/2)
    long dim = k.twice() / 4 + 1;
    if (f.precision() < std::size_t(dim) + kDecomposeGuard)
        throw InsufficientPrecision(
            "decompose_gamma14: need precision >= " + std::to_string(dim + long(kDecomposeGuard)) +
            " for weight " + k.str() + ", have " + std::to_string(f.precision()));

    std::size_t prec = f.precision();
    QSeries residual = f;
    IsobaricPoly out(k);
    for (long b = 0; b < dim; ++b) {
        // X^a Y^b leads with coefficient 1 at q^b, so c_b reads off directly.
        Rational cb = residual.coeff(b);
        if (cb != 0) {
            unsigned a = unsigned(k.twice() - 4 * b);
            Monomial m{a, unsigned(b), 0};
            out.add_term(m, cb);
            residual = residual - eval_to_qseries(IsobaricPoly::monomial(m, cb), prec);
        }
    }
    if (!(residual == QSeries::zero(prec)))
        throw NotInSpan("decompose_gamma14: residual nonzero; input is not a weight-" +
                        k.str() + " form of level 4 to precision " + std::to_string(prec));
    return out;
}

Gamma1Poly decompose_gamma1(const QSeries& f, long k)
{
    if (k < 0 || k % 2 != 0)
        throw Error("decompose_gamma1: weight must be even and non-negative");
    // basis E4^a E6^b with 4a + 6b = k
    std::vector<Monomial> basis;
    for (long b = 0; 6 * b <= k; ++b)
        if ((k - 6 * b) % 4 == 0)
            basis.push_back({unsigned((k - 6 * b) / 4), unsigned(b), 0});
    std::size_t dim = basis.size();
    if (f.precision() < dim + kDecomposeGuard)
        throw InsufficientPrecision("decompose_gamma1: need precision >= " +
                                    std::to_string(dim + kDecomposeGuard));
    std::size_t prec = f.precision();

    Gamma1Poly out(k);
    if (dim == 0) {
        if (!(f == QSeries::zero(prec)))
            throw NotInSpan("decompose_gamma1: no forms of weight " + std::to_string(k) +
                            " at level 1, but input is nonzero");
        return out;
    }

    QSeries e4 = eisenstein_series(4, prec);
    QSeries e6 = eisenstein_series(6, prec);
    std::vector<QSeries> col;
    col.reserve(dim);
    for (const auto& m : basis)
        col.push_back(e4.pow(m.a) * e6.pow(m.b));

    // Exact Gaussian elimination on the dim x dim system matching q^0..q^(dim-1).
    std::vector<std::vector<Rational>> mat(dim, std::vector<Rational>(dim + 1));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c)
            mat[r][c] = col[c].coeff(r);
        mat[r][dim] = f.coeff(r);
    }
    for (std::size_t c = 0; c < dim; ++c) {
        std::size_t pivot = c;
        while (pivot < dim && mat[pivot][c] == 0)
            ++pivot;
        if (pivot == dim)
            throw InternalError("decompose_gamma1: singular expansion matrix");
        std::swap(mat[c], mat[pivot]);
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == c || mat[r][c] == 0)
                continue;
            Rational factor = mat[r][c] / mat[c][c];
            for (std::size_t cc = c; cc <= dim; ++cc)
                mat[r][cc] -= factor * mat[c][cc];
        }
    }

    QSeries residual = f;
    for (std::size_t c = 0; c < dim; ++c) {
        Rational coeff = mat[c][dim] / mat[c][c];
        if (coeff != 0) {
            out.add_term(basis[c], coeff);
            residual = residual - col[c].scaled(coeff);
        }
    }
    if (!(residual == QSeries::zero(prec)))
        throw NotInSpan("decompose_gamma1: residual nonzero; input is not a weight-" +
                        std::to_string(k) + " form of level 1 to precision " +
                        std::to_string(prec));
    return out;
}

IsobaricPoly e4_poly()
{
    IsobaricPoly p(HalfInt::whole(4));
    p.add_term({8, 0, 0}, 1);
    p.add_term({4, 1, 0}, 224);
    p.add_term({0, 2, 0}, 256);
    return p;
}

IsobaricPoly e6_poly()
{
    IsobaricPoly p(HalfInt::whole(6));
    p.add_term({12, 0, 0}, 1);
    p.add_term({8, 1, 0}, -528);
    p.add_term({4, 2, 0}, -8448);
    p.add_term({0, 3, 0}, 4096);
    return p;
}

IsobaricPoly gamma1_to_gamma14(const Gamma1Poly& g)
{
    IsobaricPoly out(HalfInt::whole(g.weight()));
    std::vector<IsobaricPoly> p4{IsobaricPoly::one()};
    std::vector<IsobaricPoly> p6{IsobaricPoly::one()};
    auto power = [](std::vector<IsobaricPoly>& cache, const IsobaricPoly& base,
                    unsigned e) -> const IsobaricPoly& {
        while (cache.size() <= e)
            cache.push_back(cache.back() * base);
        return cache[e];
    };
    for (const auto& [m, v] : g.terms()) {
        if (m.c != 0)
            throw Error("gamma1_to_gamma14: input must be free of the E2 variable");
        out = out + (power(p4, e4_poly(), m.a) * power(p6, e6_poly(), m.b)).scaled(v);
    }
    return out;
}

IsobaricPoly hasse_poly(const Int& p, std::size_t precision)
{
    if (p < 5 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw Error("hasse_poly: p must be a prime >= 5");
    long k = p.get_si() - 1;
    if (precision == 0)
        precision = std::size_t(k / 2 + 1) + kDecomposeGuard + 3;
    QSeries ek = eisenstein_series(unsigned(k), precision);
    IsobaricPoly direct = decompose_gamma14(ek, HalfInt::whole(k));
    IsobaricPoly via_level1 = gamma1_to_gamma14(decompose_gamma1(ek, k));
    if (!(direct == via_level1))
        throw InternalError("hasse_poly: level-4 and level-1 decompositions disagree at p = " +
                            p.get_str());
    if (direct.x_degree() != unsigned(2 * k) || direct.coeff({unsigned(2 * k), 0, 0}) != 1)
        throw InternalError("hasse_poly: result is not monic of X-degree 2(p-1)");
    return direct;
}

} // namespace qmf
