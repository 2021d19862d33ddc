#pragma once

// Rational brackets for logarithms and least-squares slope fits.
//
// Asymptotic statements are checked at finite n against tolerances of the form
// c log(n) / n.  The logarithm is bracketed by rationals,
//   log x = k log 2 + 2 atanh(z),  z = (y-1)/(y+1),  x = 2^k y,  y in [1, 2),
// summing the atanh series exactly and bounding its tail geometrically.  Fits
// of growth sequences use doubles and are reported as rational approximations.

#include <cmath>
#include <utility>
#include <vector>

#include <gmp.h>

#include <laplace/errors.hpp>
#include <laplace/rational.hpp>

namespace laplace
{

struct LogBracket {
    Rational lower, upper;
};

namespace detail
{

// Bracket of 2 atanh(z) for 0 <= z < 1.
inline LogBracket atanh2_bracket(const Rational &z, int terms)
{
    Rational sum = 0, zp = z, z2 = z * z;
    for (int i = 0; i < terms; ++i) {
        sum += zp / Rational(2 * i + 1);
        zp *= z2;
    }
    // tail <= z^{2m+1} / ((2m+1)(1 - z^2))
    Rational tail = zp / (Rational(2 * terms + 1) * (Rational(1) - z2));
    return {sum * Rational(2), (sum + tail) * Rational(2)};
}

} // namespace detail

inline LogBracket log_bracket(const Rational &x, int terms = 40)
{
    require(x.sign() > 0, "log of a non-positive number");
    // x = 2^k y with 1 <= y < 2
    long k = static_cast<long>(mpz_sizeinbase(x.numerator().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.denominator().get_mpz_t(), 2));
    Rational y = x * Rational(2).pow(-k);
    while (y >= Rational(2)) {
        y /= Rational(2);
        ++k;
    }
    while (y < Rational(1)) {
        y *= Rational(2);
        --k;
    }
    LogBracket ly = detail::atanh2_bracket((y - Rational(1)) / (y + Rational(1)), terms);
    LogBracket l2 = detail::atanh2_bracket(Rational(1, 3), terms);
    LogBracket k2 = k >= 0 ? LogBracket{l2.lower * Rational(k), l2.upper * Rational(k)}
                           : LogBracket{l2.upper * Rational(k), l2.lower * Rational(k)};
    return {k2.lower + ly.lower, k2.upper + ly.upper};
}

// c log(n)/n, evaluated with the lower log bound so that passing is never
// caused by rounding in our favour.
inline Rational log_tolerance(long n, const Rational &c = Rational(8))
{
    require(n >= 1, "tolerance needs n >= 1");
    return c * log_bracket(Rational(n)).lower / Rational(n);
}

// |w/n - target| <= c log(n)/n
inline bool within_log_tolerance(const Rational &w, long n, const Rational &target, const Rational &c = Rational(8))
{
    return (w / Rational(n) - target).abs() <= log_tolerance(n, c);
}

inline double log_integer(const Integer &n)
{
    require(n > 0, "log of a non-positive integer");
    long e = 0;
    double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

inline double log_abs(const Rational &x)
{
    require(!x.is_zero(), "log of zero");
    return log_integer(abs(x.numerator())) - log_integer(x.denominator());
}

// Rational approximation with denominator at most max_den (continued fractions).
inline Rational rational_approximation(double v, long max_den = 1000000)
{
    require(std::isfinite(v), "cannot approximate a non-finite value");
    mpq_class q(v);
    Rational exact(q);
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Integer num = exact.numerator(), den = exact.denominator();
    while (den != 0) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Integer r = num - a * den;
        num = den;
        den = r;
    }
    return Rational(p1, q1);
}

// Least-squares slope of ys against xs.
inline double ls_slope(const std::vector<double> &xs, const std::vector<double> &ys)
{
    require(xs.size() == ys.size() && xs.size() >= 2, "slope fit needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    require(sxx > 0, "degenerate slope fit");
    return sxy / sxx;
}

// Growth-class test on a sequence sampled at increasing n: fit the front half
// and the back half separately.  The sequence is taken to grow at most
// linearly when the back slope does not exceed the front slope by more than
// margin.
struct SlopeFit {
    double front_slope = 0, back_slope = 0;
    bool bounded = false;
};

inline SlopeFit split_slope_fit(const std::vector<double> &xs, const std::vector<double> &ys, double margin = 0.1)
{
    require(xs.size() == ys.size() && xs.size() >= 4, "slope fit needs at least four points");
    std::size_t h = xs.size() / 2;
    std::vector<double> fx(xs.begin(), xs.begin() + h), fy(ys.begin(), ys.begin() + h);
    std::vector<double> bx(xs.begin() + h, xs.end()), by(ys.begin() + h, ys.end());
    SlopeFit f;
    f.front_slope = ls_slope(fx, fy);
    f.back_slope = ls_slope(bx, by);
    f.bounded = std::isfinite(f.back_slope) && f.back_slope <= f.front_slope + margin;
    return f;
}

} // namespace laplace
