#pragma once

#include <compare>
#include <optional>
#include <string>

#include <laplace/errors.hpp>
#include <laplace/rational.hpp>

namespace laplace
{

// Exact valuation: a rational number or +infinity (the valuation of zero).
class Valuation
{
public:
    Valuation() : inf_(true) {}
    Valuation(const Rational &w) : w_(w), inf_(false) {}
    Valuation(long w) : w_(w), inf_(false) {}

    static Valuation infinity() { return Valuation(); }

    bool is_infinite() const noexcept { return inf_; }
    const Rational &value() const
    {
        require(!inf_, "finite valuation expected");
        return w_;
    }

    friend Valuation operator+(const Valuation &a, const Valuation &b)
    {
        if (a.inf_ || b.inf_) {
            return infinity();
        }
        return Valuation(a.w_ + b.w_);
    }
    friend Valuation operator-(const Valuation &a, const Valuation &b)
    {
        require(!b.inf_, "cannot subtract an infinite valuation");
        if (a.inf_) {
            return infinity();
        }
        return Valuation(a.w_ - b.w_);
    }
    friend bool operator==(const Valuation &a, const Valuation &b)
    {
        return a.inf_ == b.inf_ && (a.inf_ || a.w_ == b.w_);
    }
    friend std::strong_ordering operator<=>(const Valuation &a, const Valuation &b)
    {
        if (a.inf_ || b.inf_) {
            return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
        }
        return a.w_ <=> b.w_;
    }

    std::string to_string() const { return inf_ ? std::string("inf") : w_.to_string(); }

private:
    Rational w_;
    bool inf_;
};

inline Valuation vmin(const Valuation &a, const Valuation &b) { return a <= b ? a : b; }

// The residue characteristic of the place.  pi_v is represented by its exact
// valuation 1/(p-1).
class PadicContext
{
public:
    explicit PadicContext(long p) : p_(p)
    {
        require(p >= 2, "p must be at least 2");
        require(mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) > 0, "p must be prime");
    }

    long p() const noexcept { return p_; }
    Rational pi_valuation() const { return Rational(1, p_ - 1); }

    // Exponent of p in a nonzero integer.
    long ord(const Integer &n) const
    {
        require(n != 0, "ord of zero");
        Integer rest;
        Integer pp(p_);
        return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
    }

    Valuation val(const Rational &x) const
    {
        if (x.is_zero()) {
            return Valuation::infinity();
        }
        return Valuation(ord(x.numerator()) - ord(x.denominator()));
    }

private:
    long p_;
};

inline Valuation val_p(const Rational &x, const PadicContext &ctx) { return ctx.val(x); }

} // namespace laplace
