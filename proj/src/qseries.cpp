#include "qmf/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace qmf {

QSeries::QSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    if (c_.empty())
        throw Error("QSeries: precision must be at least 1");
}

QSeries QSeries::zero(std::size_t precision)
{
    return QSeries(std::vector<Rational>(precision));
}

QSeries QSeries::constant(Rational value, std::size_t precision)
{
    std::vector<Rational> c(precision);
    c.at(0) = std::move(value);
    return QSeries(std::move(c));
}

const Rational& QSeries::coeff(std::size_t n) const
{
    if (n >= c_.size())
        throw Error("QSeries: coefficient index " + std::to_string(n) +
                    " beyond precision " + std::to_string(c_.size()));
    return c_[n];
}

QSeries QSeries::truncated(std::size_t precision) const
{
    if (precision == 0 || precision > c_.size())
        throw Error("QSeries::truncated: invalid precision");
    return QSeries(std::vector<Rational>(c_.begin(), c_.begin() + precision));
}

QSeries operator+(const QSeries& f, const QSeries& g)
{
    std::size_t n = std::min(f.precision(), g.precision());
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i)
        c[i] = f.c_[i] + g.c_[i];
    return QSeries(std::move(c));
}

QSeries operator-(const QSeries& f, const QSeries& g)
{
    std::size_t n = std::min(f.precision(), g.precision());
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i)
        c[i] = f.c_[i] - g.c_[i];
    return QSeries(std::move(c));
}

QSeries operator*(const QSeries& f, const QSeries& g)
{
    std::size_t n = std::min(f.precision(), g.precision());
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (f.c_[i] == 0)
            continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (g.c_[j] == 0)
                continue;
            c[i + j] += f.c_[i] * g.c_[j];
        }
    }
    return QSeries(std::move(c));
}

QSeries QSeries::operator-() const
{
    std::vector<Rational> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        c[i] = -c_[i];
    return QSeries(std::move(c));
}

QSeries QSeries::scaled(const Rational& s) const
{
    std::vector<Rational> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        c[i] = c_[i] * s;
    return QSeries(std::move(c));
}

QSeries QSeries::pow(unsigned long e) const
{
    QSeries acc = QSeries::constant(1, precision());
    QSeries base = *this;
    while (e > 0) {
        if (e & 1)
            acc = acc * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return acc;
}

bool QSeries::agrees_with(const QSeries& o) const
{
    std::size_t n = std::min(precision(), o.precision());
    for (std::size_t i = 0; i < n; ++i)
        if (c_[i] != o.c_[i])
            return false;
    return true;
}

std::string QSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t n = 0; n < c_.size(); ++n) {
        Rational v = c_[n];
        if (v == 0)
            continue;
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
        if (n == 0) {
            os << v;
        } else {
            if (v != 1)
                os << v << (is_integer(v) ? "" : "*");
            os << "q";
            if (n > 1)
                os << "^" << n;
        }
    }
    if (first)
        os << "0";
    return os.str();
}

Rational bernoulli(unsigned k)
{
    // sum_{j=0}^{k} C(k+1, j) B_j = 0 with B_0 = 1 gives each B_k in turn.
    std::vector<Rational> b(k + 1);
    b[0] = 1;
    for (unsigned n = 1; n <= k; ++n) {
        Rational acc(0);
        for (unsigned j = 0; j < n; ++j) {
            if (b[j] == 0)
                continue;
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), n + 1, j);
            acc += Rational(binom) * b[j];
        }
        b[n] = -acc / Rational(n + 1);
    }
    return b[k];
}

Int sigma(unsigned j, unsigned long n)
{
    if (n == 0)
        throw Error("sigma: n must be positive");
    Int acc(0);
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        acc += pow_int(Int(d), j);
        unsigned long q = n / d;
        if (q != d)
            acc += pow_int(Int(q), j);
    }
    return acc;
}

QSeries theta_series(std::size_t precision)
{
    std::vector<Rational> c(precision);
    c.at(0) = 1;
    for (unsigned long m = 1; m * m < precision; ++m)
        c[m * m] = 2;
    return QSeries(std::move(c));
}

QSeries f2_series(std::size_t precision)
{
    std::vector<Rational> c(precision);
    if (c.empty())
        throw Error("f2_series: precision must be at least 1");
    for (std::size_t n = 1; n < precision; n += 2)
        c[n] = Rational(sigma(1, n));
    return QSeries(std::move(c));
}

QSeries eisenstein_series(unsigned k, std::size_t precision)
{
    if (k < 2 || k % 2 != 0)
        throw Error("eisenstein_series: weight must be even and >= 2");
    Rational factor = Rational(-2 * long(k)) / bernoulli(k);
    std::vector<Rational> c(precision);
    c.at(0) = 1;
    for (std::size_t n = 1; n < precision; ++n)
        c[n] = factor * Rational(sigma(k - 1, n));
    return QSeries(std::move(c));
}

QSeries d_series(const QSeries& f)
{
    std::vector<Rational> c(f.precision());
    for (std::size_t n = 1; n < f.precision(); ++n)
        c[n] = Rational(long(n)) * f.coeff(n);
    return QSeries(std::move(c));
}

} // namespace qmf
