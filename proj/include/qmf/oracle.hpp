#pragma once

#include <string>
#include <vector>

#include <mpfr.h>

#include "qmf/exactnum.hpp"
#include "qmf/qseries.hpp"

namespace qmf::oracle {

// Arbitrary-precision real number; thin RAII wrapper over mpfr_t with the
// working precision carried per value. Shares no code with the exact engine.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(BigFloat o);
    ~BigFloat();

    static BigFloat from_long(long v, mpfr_prec_t prec);
    static BigFloat from_double(double v, mpfr_prec_t prec);
    static BigFloat from_int(const Int& v, mpfr_prec_t prec);
    static BigFloat from_rational(const Rational& v, mpfr_prec_t prec);
    static BigFloat pi(mpfr_prec_t prec);
    // Gamma function at an exact rational argument.
    static BigFloat gamma(const Rational& x, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    BigFloat operator-() const;

    BigFloat sqrt() const;
    BigFloat exp() const;
    BigFloat abs() const;
    // x^(num/den) for exact rational exponents (x > 0).
    BigFloat pow(const Rational& e) const;
    BigFloat pow_ui(unsigned long e) const;

    bool is_zero() const { return mpfr_zero_p(v_); }
    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
    // floor(log2 |x|) + 1; very negative for zero.
    long exponent() const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string str(std::size_t digits = 30) const;

private:
    mpfr_t v_;
};

// Complex value over BigFloat. sqrt takes the branch with argument in
// (-pi/2, pi/2].
struct BigComplex {
    BigFloat re, im;

    explicit BigComplex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    BigComplex scaled(const BigFloat& s) const;
    BigComplex conj() const;
    BigComplex exp() const;
    BigComplex sqrt_branch() const;
    BigComplex invert() const;
    BigFloat abs() const;
};

mpfr_prec_t bits_for_digits(unsigned digits);

// a = Gamma(1/4) / (2^(1/2) pi^(3/4)): the value of the theta generator at
// the CM point. digits >= 20.
BigFloat numeric_constant_a(unsigned digits);

// Classical theta constants at z = i/2 (nome e^(-pi/2)) by direct summation;
// which selects theta_2, theta_3 or theta_4.
BigFloat theta_constant_half_i(int which, unsigned digits);

// theta_3(i) = sum over n of e^(-pi n^2), summed directly.
BigFloat theta3_at_i(unsigned digits);

// Evaluate an exact q-series numerically at q = e^(-pi) (i.e. at z = i/2).
BigFloat qseries_at_half_i(const QSeries& series, unsigned digits);

struct NumericValue {
    BigFloat value;
    BigFloat error_bound; // difference between the two sample counts
};

// Taylor coefficients around w = 0 of the disk transplant of the theta
// series, F(w) = (1-w)^(-1/2) theta_3(i(1+w)/(1-w)), extracted by trapezoidal
// contour sums on |w| = radius. Each coefficient is computed from M and 2M
// sample points; the disagreement is the reported error bound and
// PrecisionExhausted is raised when it exceeds the target tolerance.
std::vector<NumericValue> taylor_coefficients(unsigned j_max, unsigned digits, double radius);

// d(n) solved from the w^(2n) Taylor coefficient:
// d(n) = coeff * (2n)! / (theta_3(i) * kappa^(2n)), kappa = Gamma(1/4)^4/(8 pi^2 sqrt 2).
NumericValue numeric_d(unsigned n, unsigned digits, double radius = 0.5);

// Batch version sharing one contour evaluation.
std::vector<NumericValue> numeric_d_batch(unsigned n_max, unsigned digits, double radius = 0.5);

} // namespace qmf::oracle
