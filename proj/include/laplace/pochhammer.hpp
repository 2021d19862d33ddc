#pragma once

// Pochhammer symbols and denominators.
//
// The exported pochhammer() follows the convention (g)_0 = g and
// (g)_n = g(g+1)...(g+n-1) for n >= 1, so (g)_0 and (g)_1 coincide.  Formulas
// that need the empty product use detail::rising instead.

#include <vector>

#include <laplace/errors.hpp>
#include <laplace/multi_index.hpp>
#include <laplace/rational.hpp>

namespace laplace
{

namespace detail
{

// g(g+1)...(g+n-1), equal to 1 when n = 0.
inline Rational rising(const Rational &g, long n)
{
    require(n >= 0, "rising factorial needs n >= 0");
    Rational r = 1;
    for (long t = 0; t < n; ++t) {
        r *= g + Rational(t);
    }
    return r;
}

} // namespace detail

inline Rational pochhammer(const Rational &gamma, long n)
{
    require(n >= 0, "pochhammer needs n >= 0");
    if (n == 0) {
        return gamma;
    }
    return detail::rising(gamma, n);
}

inline Rational multi_pochhammer(const std::vector<Rational> &gamma, const MultiIndex &alpha)
{
    require(gamma.size() == alpha.size(), "multi_pochhammer: length mismatch");
    require(alpha.is_nonnegative(), "multi_pochhammer: negative index");
    Rational r = 1;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        r *= pochhammer(gamma[i], alpha[i]);
    }
    return r;
}

inline Integer lcd(const std::vector<Rational> &xs)
{
    require(!xs.empty(), "lcd of an empty list");
    Integer l = 1;
    for (const auto &x : xs) {
        l = lcm(l, x.denominator());
    }
    return l;
}

} // namespace laplace
