#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qmf/exactnum.hpp"

namespace qmf {

// Truncated q-expansion sum c_n q^n, 0 <= n < precision, with exact rational
// coefficients. Arithmetic results carry the minimum precision of the
// operands; equality is decidable only on the common prefix and the API keeps
// full structural equality (operator==) separate from agrees_with().
class QSeries {
public:
    explicit QSeries(std::vector<Rational> coeffs);
    static QSeries zero(std::size_t precision);
    static QSeries constant(Rational value, std::size_t precision);

    std::size_t precision() const { return c_.size(); }
    const Rational& coeff(std::size_t n) const;
    QSeries truncated(std::size_t precision) const;

    friend QSeries operator+(const QSeries& f, const QSeries& g);
    friend QSeries operator-(const QSeries& f, const QSeries& g);
    friend QSeries operator*(const QSeries& f, const QSeries& g); // Cauchy product
    QSeries operator-() const;
    QSeries scaled(const Rational& s) const;
    QSeries pow(unsigned long e) const;

    // Structural: same precision and same coefficients.
    bool operator==(const QSeries& o) const { return c_ == o.c_; }
    // Coefficients agree on the overlap min(precision(), o.precision()).
    bool agrees_with(const QSeries& o) const;

    std::string str() const;

private:
    std::vector<Rational> c_;
};

// k-th Bernoulli number, B_1 = -1/2 convention.
Rational bernoulli(unsigned k);

// Divisor power sum over positive divisors of n (n >= 1).
Int sigma(unsigned j, unsigned long n);

// The weight-1/2 theta generator: 1 + 2 sum_{m>=1} q^(m^2).
QSeries theta_series(std::size_t precision);

// The weight-2 generator sum over odd n of sigma_1(n) q^n.
QSeries f2_series(std::size_t precision);

// Normalized Eisenstein series 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k even >= 2.
QSeries eisenstein_series(unsigned k, std::size_t precision);

// D = q d/dq acting on series; keeps the precision.
QSeries d_series(const QSeries& f);

} // namespace qmf
