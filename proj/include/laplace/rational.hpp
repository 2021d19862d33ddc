#pragma once

// Exact rational scalar used throughout the library.  Backed by GMP; always
// kept in lowest terms with a positive denominator, zero is 0/1.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <laplace/errors.hpp>

namespace laplace
{

using Integer = mpz_class;

class Rational
{
public:
    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(const Integer &n) : v_(n) {}
    Rational(const Integer &num, const Integer &den)
    {
        if (den == 0) {
            throw precondition_error("rational with zero denominator");
        }
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(const mpq_class &q) : v_(q) { v_.canonicalize(); }

    // Accepts "a", "-a", "a/b" with optional surrounding whitespace.
    static Rational parse(std::string_view text)
    {
        std::string s;
        for (char c : text) {
            if (c != ' ' && c != '\t' && c != '\n') {
                s.push_back(c);
            }
        }
        if (s.empty()) {
            throw parse_error("empty rational literal");
        }
        auto slash = s.find('/');
        auto valid_int = [](const std::string &t) {
            std::size_t i = (t.size() > 0 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
            if (i >= t.size()) {
                return false;
            }
            for (; i < t.size(); ++i) {
                if (t[i] < '0' || t[i] > '9') {
                    return false;
                }
            }
            return true;
        };
        auto to_int = [](std::string t) {
            if (!t.empty() && t[0] == '+') {
                t.erase(0, 1);
            }
            return Integer(t, 10);
        };
        if (slash == std::string::npos) {
            if (!valid_int(s)) {
                throw parse_error("malformed rational literal '" + s + "'");
            }
            return Rational(to_int(s));
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den)) {
            throw parse_error("malformed rational literal '" + s + "'");
        }
        Integer d = to_int(den);
        if (d == 0) {
            throw parse_error("zero denominator in '" + s + "'");
        }
        return Rational(to_int(num), d);
    }

    Integer numerator() const { return v_.get_num(); }
    Integer denominator() const { return v_.get_den(); }
    const mpq_class &raw() const noexcept { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const { return Rational(::abs(v_)); }
    Rational inverse() const
    {
        if (is_zero()) {
            throw precondition_error("inverse of zero");
        }
        return Rational(mpq_class(1) / v_);
    }
    Rational pow(long e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        Integer n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    // Largest integer not exceeding the value.
    Integer floor() const
    {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    std::string to_string() const
    {
        if (is_integer()) {
            return v_.get_num().get_str();
        }
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational &operator+=(const Rational &o)
    {
        v_ += o.v_;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        v_ -= o.v_;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        v_ *= o.v_;
        return *this;
    }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero()) {
            throw precondition_error("division by zero");
        }
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

private:
    mpq_class v_;
};

inline Integer integer_from(long n) { return Integer(n); }

inline Integer gcd(const Integer &a, const Integer &b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer &a, const Integer &b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer factorial(unsigned long n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

// Exact conversion to a machine integer; throws when out of range.
inline long to_long(const Integer &n)
{
    if (!n.fits_slong_p()) {
        throw precondition_error("integer does not fit in a machine word");
    }
    return n.get_si();
}

} // namespace laplace
