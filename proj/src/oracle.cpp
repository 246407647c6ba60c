#include "qmf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qmf::oracle {

namespace {

mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b)
{
    return std::max(a.prec(), b.prec());
}

} // namespace

BigFloat::BigFloat(mpfr_prec_t prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(BigFloat o)
{
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat()
{
    mpfr_clear(v_);
}

BigFloat BigFloat::from_long(long v, mpfr_prec_t prec)
{
    BigFloat r(prec);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_double(double v, mpfr_prec_t prec)
{
    BigFloat r(prec);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_int(const Int& v, mpfr_prec_t prec)
{
    BigFloat r(prec);
    mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_rational(const Rational& v, mpfr_prec_t prec)
{
    BigFloat r(prec);
    mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec)
{
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::gamma(const Rational& x, mpfr_prec_t prec)
{
    BigFloat r = from_rational(x, prec);
    mpfr_gamma(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-() const
{
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt() const
{
    BigFloat r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::exp() const
{
    BigFloat r(prec());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const
{
    BigFloat r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow(const Rational& e) const
{
    BigFloat ex = from_rational(e, prec());
    BigFloat r(prec());
    mpfr_pow(r.v_, v_, ex.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow_ui(unsigned long e) const
{
    BigFloat r(prec());
    mpfr_pow_ui(r.v_, v_, e, MPFR_RNDN);
    return r;
}

long BigFloat::exponent() const
{
    if (mpfr_zero_p(v_))
        return -(1L << 30);
    return mpfr_get_exp(v_);
}

std::string BigFloat::str(std::size_t digits) const
{
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", int(digits), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b)
{
    return {a.re + b.re, a.im + b.im};
}

BigComplex operator-(const BigComplex& a, const BigComplex& b)
{
    return {a.re - b.re, a.im - b.im};
}

BigComplex operator*(const BigComplex& a, const BigComplex& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex BigComplex::scaled(const BigFloat& s) const
{
    return {re * s, im * s};
}

BigComplex BigComplex::conj() const
{
    return {re, -im};
}

BigComplex BigComplex::exp() const
{
    mpfr_prec_t p = std::max(re.prec(), im.prec());
    BigFloat mag = re.exp();
    BigFloat c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), im.raw(), MPFR_RNDN);
    return {mag * c, mag * s};
}

BigComplex BigComplex::sqrt_branch() const
{
    // sqrt(r) e^(i theta/2) with theta = atan2(im, re) in (-pi, pi], so the
    // argument of the result lies in (-pi/2, pi/2].
    mpfr_prec_t p = std::max(re.prec(), im.prec());
    BigFloat r = abs().sqrt();
    BigFloat theta(p);
    mpfr_atan2(theta.raw(), im.raw(), re.raw(), MPFR_RNDN);
    BigFloat half(p);
    mpfr_div_ui(half.raw(), theta.raw(), 2, MPFR_RNDN);
    BigFloat c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), half.raw(), MPFR_RNDN);
    return {r * c, r * s};
}

BigComplex BigComplex::invert() const
{
    BigFloat n = re * re + im * im;
    return {re / n, -(im / n)};
}

BigFloat BigComplex::abs() const
{
    mpfr_prec_t p = std::max(re.prec(), im.prec());
    BigFloat r(p);
    mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
    return r;
}

mpfr_prec_t bits_for_digits(unsigned digits)
{
    return mpfr_prec_t(double(digits) * 3.3219280948873626) + 64;
}

BigFloat numeric_constant_a(unsigned digits)
{
    if (digits < 20)
        throw Error("numeric_constant_a: need at least 20 digits");
    mpfr_prec_t prec = bits_for_digits(digits);
    BigFloat g = BigFloat::gamma(Rational(1, 4), prec);
    BigFloat pi = BigFloat::pi(prec);
    BigFloat denom = BigFloat::from_long(2, prec).sqrt() * pi.pow(Rational(3, 4));
    return g / denom;
}

BigFloat theta_constant_half_i(int which, unsigned digits)
{
    mpfr_prec_t prec = bits_for_digits(digits);
    BigFloat pi = BigFloat::pi(prec);
    BigFloat x = (-(pi / BigFloat::from_long(2, prec))).exp(); // e^(-pi/2)
    long cutoff = -prec - 16;
    if (which == 3 || which == 4) {
        int sign = which == 3 ? 1 : -1;
        BigFloat acc = BigFloat::from_long(1, prec);
        BigFloat xn2 = x;
        BigFloat xodd = x;
        BigFloat x2 = x * x;
        int s = sign;
        while (true) {
            BigFloat term = xn2 + xn2;
            acc = s > 0 ? acc + term : acc - term;
            if (xn2.exponent() < cutoff)
                break;
            xodd = xodd * x2;
            xn2 = xn2 * xodd;
            s *= sign;
        }
        return acc;
    }
    if (which == 2) {
        // 2 x^(1/4) sum_{n>=0} x^(n(n+1))
        BigFloat acc = BigFloat::from_long(1, prec);
        BigFloat xe = x * x;  // x^(n(n+1)) at n = 1
        BigFloat step = xe * xe;
        BigFloat x2 = x * x;
        while (true) {
            acc = acc + xe;
            if (xe.exponent() < cutoff)
                break;
            xe = xe * step;       // x^(n(n+1)) -> x^((n+1)(n+2)) multiplies by x^(2(n+1))
            step = step * x2;
        }
        BigFloat front = x.pow(Rational(1, 4)) + x.pow(Rational(1, 4));
        return front * acc;
    }
    throw Error("theta_constant_half_i: which must be 2, 3 or 4");
}

BigFloat theta3_at_i(unsigned digits)
{
    mpfr_prec_t prec = bits_for_digits(digits);
    BigFloat pi = BigFloat::pi(prec);
    BigFloat x = (-pi).exp(); // e^(-pi)
    long cutoff = -prec - 16;
    BigFloat acc = BigFloat::from_long(1, prec);
    BigFloat xn2 = x;
    BigFloat xodd = x;
    BigFloat x2 = x * x;
    while (true) {
        acc = acc + xn2 + xn2;
        if (xn2.exponent() < cutoff)
            break;
        xodd = xodd * x2;
        xn2 = xn2 * xodd;
    }
    return acc;
}

BigFloat qseries_at_half_i(const QSeries& series, unsigned digits)
{
    mpfr_prec_t prec = bits_for_digits(digits);
    BigFloat q = (-BigFloat::pi(prec)).exp(); // q(i/2) = e^(-pi)
    BigFloat acc(prec);
    BigFloat qn = BigFloat::from_long(1, prec);
    for (std::size_t n = 0; n < series.precision(); ++n) {
        if (series.coeff(n) != 0)
            acc = acc + BigFloat::from_rational(series.coeff(n), prec) * qn;
        qn = qn * q;
    }
    return acc;
}

namespace {

// theta_3 of a complex argument z in the upper half-plane: 1 + 2 sum q^(n^2)
// with q = e^(pi i z).
BigComplex theta3_of(const BigComplex& z, mpfr_prec_t prec)
{
    BigFloat pi = BigFloat::pi(prec);
    BigComplex ipz{-(z.im * pi), z.re * pi}; // pi i z
    BigComplex q = ipz.exp();
    if (!(q.abs() < BigFloat::from_long(1, prec)))
        throw Error("theta3_of: |q| >= 1, argument not in the upper half-plane");
    long cutoff = -prec - 16;
    BigComplex acc{BigFloat::from_long(1, prec), BigFloat(prec)};
    BigComplex qn2 = q;
    BigComplex qodd = q;
    BigComplex q2 = q * q;
    while (true) {
        acc = acc + qn2 + qn2;
        if (qn2.abs().exponent() < cutoff)
            break;
        qodd = qodd * q2;
        qn2 = qn2 * qodd;
    }
    return acc;
}

// F(w) = (1-w)^(-1/2) theta_3(i (1+w)/(1-w)).
BigComplex disk_transplant(const BigComplex& w, mpfr_prec_t prec)
{
    BigComplex one{BigFloat::from_long(1, prec), BigFloat(prec)};
    BigComplex omw = one - w;
    BigComplex opw = one + w;
    BigComplex ratio = opw * omw.invert();
    BigComplex z{-ratio.im, ratio.re}; // i * ratio
    BigComplex theta = theta3_of(z, prec);
    return theta * omw.sqrt_branch().invert();
}

std::vector<BigComplex> contour_coefficients(unsigned j_max, mpfr_prec_t prec,
                                             const BigFloat& radius, unsigned samples)
{
    BigFloat pi = BigFloat::pi(prec);
    BigFloat two_pi = pi + pi;

    // Sample F on the circle once; the summation order is fixed for
    // reproducibility.
    std::vector<BigComplex> f_vals;
    f_vals.reserve(samples);
    std::vector<BigComplex> roots; // e^(2 pi i s / M)
    roots.reserve(samples);
    for (unsigned s = 0; s < samples; ++s) {
        BigFloat angle = (two_pi * BigFloat::from_long(long(s), prec)) /
                         BigFloat::from_long(long(samples), prec);
        BigFloat c(prec), si(prec);
        mpfr_sin_cos(si.raw(), c.raw(), angle.raw(), MPFR_RNDN);
        roots.push_back(BigComplex{c, si});
        f_vals.push_back(disk_transplant(roots.back().scaled(radius), prec));
    }

    BigFloat inv_m = BigFloat::from_long(1, prec) / BigFloat::from_long(long(samples), prec);
    std::vector<BigComplex> coeffs;
    coeffs.reserve(j_max + 1);
    BigFloat r_pow = BigFloat::from_long(1, prec);
    for (unsigned j = 0; j <= j_max; ++j) {
        BigComplex acc(prec);
        for (unsigned s = 0; s < samples; ++s) {
            // e^(-2 pi i j s / M) = conj(root[(j*s) mod M])
            const BigComplex& rot = roots[std::size_t(j) * s % samples];
            acc = acc + f_vals[s] * rot.conj();
        }
        coeffs.push_back(acc.scaled(inv_m / r_pow));
        r_pow = r_pow * radius;
    }
    return coeffs;
}

} // namespace

std::vector<NumericValue> taylor_coefficients(unsigned j_max, unsigned digits, double radius)
{
    if (!(radius > 0.0 && radius < 1.0))
        throw Error("taylor_coefficients: radius must lie in (0, 1)");
    mpfr_prec_t prec = bits_for_digits(digits);
    BigFloat r = BigFloat::from_double(radius, prec);

    // Aliasing admits coefficients j + kM damped by radius^M; size M so the
    // damping is far below the target precision, then double it for the
    // error estimate.
    double bits_per_sample = -std::log2(radius);
    unsigned samples = unsigned(double(prec + 32) / bits_per_sample) + 2 * j_max + 16;
    samples += samples % 2;

    std::vector<BigComplex> coarse = contour_coefficients(j_max, prec, r, samples);
    std::vector<BigComplex> fine = contour_coefficients(j_max, prec, r, 2 * samples);

    std::vector<NumericValue> out;
    out.reserve(j_max + 1);
    for (unsigned j = 0; j <= j_max; ++j) {
        BigFloat err = (fine[j] - coarse[j]).abs() + fine[j].im.abs();
        out.push_back({fine[j].re, std::move(err)});
    }
    return out;
}

namespace {

// kappa = Gamma(1/4)^4 / (8 pi^2 sqrt 2): the scale factor of the disk
// variable in the normalized Taylor series.
BigFloat kappa_constant(mpfr_prec_t prec)
{
    BigFloat g = BigFloat::gamma(Rational(1, 4), prec);
    BigFloat pi = BigFloat::pi(prec);
    BigFloat denom = BigFloat::from_long(8, prec) * pi * pi *
                     BigFloat::from_long(2, prec).sqrt();
    return g.pow_ui(4) / denom;
}

NumericValue coefficient_to_d(const NumericValue& coeff, unsigned n, const BigFloat& theta3i,
                              const BigFloat& kappa, mpfr_prec_t prec)
{
    // coeff of w^(2n) equals theta_3(i) d(n) kappa^(2n) / (2n)!
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), 2UL * n);
    BigFloat scale = BigFloat::from_int(fact, prec) / (theta3i * kappa.pow_ui(2UL * n));
    return {coeff.value * scale, coeff.error_bound * scale.abs()};
}

void check_tolerance(const NumericValue& v, unsigned digits, unsigned n)
{
    BigFloat scale = v.value.abs();
    BigFloat one = BigFloat::from_long(1, v.value.prec());
    if (scale < one)
        scale = one;
    // Demand quite a bit more agreement than the requested digit count.
    BigFloat tol = scale * BigFloat::from_long(10, v.value.prec())
                               .pow(Rational(-3 * long(digits) / 4));
    if (tol < v.error_bound)
        throw PrecisionExhausted("numeric_d: sample counts disagree at n = " +
                                 std::to_string(n) + " (error " + v.error_bound.str(5) + ")");
}

} // namespace

std::vector<NumericValue> numeric_d_batch(unsigned n_max, unsigned digits, double radius)
{
    mpfr_prec_t prec = bits_for_digits(digits);
    std::vector<NumericValue> coeffs = taylor_coefficients(2 * n_max, digits, radius);
    BigFloat theta3i = theta3_at_i(digits);
    BigFloat kappa = kappa_constant(prec);
    std::vector<NumericValue> out;
    out.reserve(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) {
        NumericValue d = coefficient_to_d(coeffs[2 * n], n, theta3i, kappa, prec);
        check_tolerance(d, digits, n);
        out.push_back(std::move(d));
    }
    return out;
}

NumericValue numeric_d(unsigned n, unsigned digits, double radius)
{
    return std::move(numeric_d_batch(n, digits, radius).back());
}

} // namespace qmf::oracle
