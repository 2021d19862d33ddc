#pragma once

// Finite sums  sum c * x^(gamma+alpha) (log x)^j  with coefficients in a ring R.
//
// A series stores a reference exponent gamma and integer offsets alpha that
// all lie in one orthant.  Derivation and monomial multiplication may push an
// offset out of its orthant; the reference is then moved by an integer vector
// so that the represented function is unchanged.  Equality compares absolute
// exponents, so two series that differ only in their reference are equal.
//
// Series are combined termwise only.  There is deliberately no series by
// series product.

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/multi_index.hpp>
#include <laplace/rational.hpp>

namespace laplace
{

inline bool is_zero(const Rational &r) { return r.is_zero(); }

enum class Orthant { positive, negative };

inline Orthant opposite(Orthant o) { return o == Orthant::positive ? Orthant::negative : Orthant::positive; }

inline bool in_orthant(const MultiIndex &a, Orthant o)
{
    return o == Orthant::positive ? a.is_nonnegative() : a.is_nonpositive();
}

struct TermKey {
    MultiIndex alpha;
    MultiIndex logpow;
    friend auto operator<=>(const TermKey &, const TermKey &) = default;
    friend bool operator==(const TermKey &, const TermKey &) = default;
};

// Integer vector a - b; throws when some difference is not an integer.
inline MultiIndex integer_difference(const std::vector<Rational> &a, const std::vector<Rational> &b)
{
    require(a.size() == b.size(), "exponent vectors of different length");
    MultiIndex m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational d = a[i] - b[i];
        require(d.is_integer(), "exponents do not differ by an integer vector");
        m[i] = to_long(d.numerator());
    }
    return m;
}

inline std::vector<Rational> add_offset(std::vector<Rational> g, const MultiIndex &a)
{
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] += Rational(a[i]);
    }
    return g;
}

template <class R>
class LogLaurentSeries
{
public:
    using coefficient_type = R;

    LogLaurentSeries() = default;
    explicit LogLaurentSeries(std::vector<Rational> gamma, Orthant orthant = Orthant::positive)
        : gamma_(std::move(gamma)), orthant_(orthant)
    {
        require(!gamma_.empty(), "series dimension must be at least 1");
    }

    // Build from terms whose offsets may leave the orthant; the reference is
    // moved minimally so that every offset fits.
    static LogLaurentSeries from_raw(std::vector<Rational> gamma, Orthant orthant,
                                     const std::vector<std::tuple<MultiIndex, MultiIndex, R>> &raw)
    {
        std::size_t d = gamma.size();
        MultiIndex shift(d);
        for (const auto &[a, j, c] : raw) {
            for (std::size_t i = 0; i < d; ++i) {
                if (orthant == Orthant::positive) {
                    shift[i] = std::min(shift[i], a[i]);
                } else {
                    shift[i] = std::max(shift[i], a[i]);
                }
            }
        }
        LogLaurentSeries s(add_offset(std::move(gamma), shift), orthant);
        for (const auto &[a, j, c] : raw) {
            s.add_term(a - shift, j, c);
        }
        return s;
    }

    std::size_t dim() const noexcept { return gamma_.size(); }
    const std::vector<Rational> &gamma() const noexcept { return gamma_; }
    Orthant orthant() const noexcept { return orthant_; }
    const std::map<TermKey, R> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    std::vector<Rational> exponent(const MultiIndex &alpha) const { return add_offset(gamma_, alpha); }

    void add_term(const MultiIndex &alpha, const MultiIndex &logpow, const R &c)
    {
        require(alpha.size() == dim() && logpow.size() == dim(), "term dimension mismatch");
        require(logpow.is_nonnegative(), "log powers must be nonnegative");
        if (!in_orthant(alpha, orthant_)) {
            throw precondition_error("mixed orthant support: offset " + alpha.to_string() + " outside the declared orthant");
        }
        if (c.is_zero()) {
            return;
        }
        TermKey key{alpha, logpow};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    R coefficient(const MultiIndex &alpha, const MultiIndex &logpow) const
    {
        auto it = terms_.find(TermKey{alpha, logpow});
        return it == terms_.end() ? R() : it->second;
    }

    // Coefficient of x^exponent (log x)^logpow, by absolute exponent.
    R coefficient_at(const std::vector<Rational> &exponent, const MultiIndex &logpow) const
    {
        MultiIndex a = integer_difference(exponent, gamma_);
        return coefficient(a, logpow);
    }

    // Same function over another reference exponent; throws when an offset would
    // leave the orthant.
    LogLaurentSeries with_reference(const std::vector<Rational> &ref) const
    {
        MultiIndex delta = integer_difference(gamma_, ref);
        LogLaurentSeries s(ref, orthant_);
        for (const auto &[k, c] : terms_) {
            s.add_term(k.alpha + delta, k.logpow, c);
        }
        return s;
    }

    std::vector<std::tuple<MultiIndex, MultiIndex, R>> raw_terms() const
    {
        std::vector<std::tuple<MultiIndex, MultiIndex, R>> raw;
        for (const auto &[k, c] : terms_) {
            raw.emplace_back(k.alpha, k.logpow, c);
        }
        return raw;
    }

    // Absolute exponent -> coefficient.
    std::map<std::pair<std::vector<Rational>, MultiIndex>, R> absolute() const
    {
        std::map<std::pair<std::vector<Rational>, MultiIndex>, R> m;
        for (const auto &[k, c] : terms_) {
            m.emplace(std::make_pair(exponent(k.alpha), k.logpow), c);
        }
        return m;
    }

    LogLaurentSeries &operator+=(const LogLaurentSeries &o)
    {
        merge(o, false);
        return *this;
    }
    LogLaurentSeries &operator-=(const LogLaurentSeries &o)
    {
        merge(o, true);
        return *this;
    }
    friend LogLaurentSeries operator+(LogLaurentSeries a, const LogLaurentSeries &b) { return a += b; }
    friend LogLaurentSeries operator-(LogLaurentSeries a, const LogLaurentSeries &b) { return a -= b; }
    friend LogLaurentSeries operator*(const LogLaurentSeries &a, const Rational &s)
    {
        LogLaurentSeries r(a.gamma_, a.orthant_);
        for (const auto &[k, c] : a.terms_) {
            r.add_term(k.alpha, k.logpow, c * s);
        }
        return r;
    }

    friend bool operator==(const LogLaurentSeries &a, const LogLaurentSeries &b)
    {
        if (a.dim() != b.dim()) {
            return a.is_zero() && b.is_zero();
        }
        return a.absolute() == b.absolute();
    }

    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        bool first = true;
        for (const auto &[k, c] : terms_) {
            if (!first) {
                s += " + ";
            }
            first = false;
            s += "(" + coefficient_string(c) + ")*x^[";
            auto e = exponent(k.alpha);
            for (std::size_t i = 0; i < e.size(); ++i) {
                s += (i ? "," : "") + e[i].to_string();
            }
            s += "]";
            if (!k.logpow.is_zero()) {
                s += "*log^" + k.logpow.to_string();
            }
        }
        return s;
    }

private:
    static std::string coefficient_string(const R &c) { return c.to_string(); }

    void merge(const LogLaurentSeries &o, bool negate)
    {
        if (o.is_zero()) {
            return;
        }
        if (gamma_.empty()) {
            gamma_ = o.gamma_;
            orthant_ = o.orthant_;
        }
        require(o.dim() == dim(), "series dimension mismatch");
        require(o.orthant_ == orthant_ || is_zero(), "adding series from different orthants");
        if (is_zero()) {
            orthant_ = o.orthant_;
        }
        auto raw = raw_terms();
        MultiIndex delta = integer_difference(o.gamma_, gamma_);
        for (const auto &[k, c] : o.terms_) {
            raw.emplace_back(k.alpha + delta, k.logpow, negate ? c * Rational(-1) : c);
        }
        *this = from_raw(gamma_, orthant_, raw);
    }

    std::vector<Rational> gamma_;
    Orthant orthant_ = Orthant::positive;
    std::map<TermKey, R> terms_;
};

// d/dx_i acting on every term, Leibniz rule on x^e (log x)^j.
template <class R>
LogLaurentSeries<R> derive(const LogLaurentSeries<R> &s, std::size_t i)
{
    require(i < s.dim(), "derive: variable index out of range");
    std::vector<std::tuple<MultiIndex, MultiIndex, R>> raw;
    for (const auto &[k, c] : s.terms()) {
        MultiIndex a = k.alpha;
        a[i] -= 1;
        Rational e = s.gamma()[i] + Rational(k.alpha[i]);
        raw.emplace_back(a, k.logpow, c * e);
        if (k.logpow[i] > 0) {
            MultiIndex j = k.logpow;
            j[i] -= 1;
            raw.emplace_back(a, j, c * Rational(k.logpow[i]));
        }
    }
    return LogLaurentSeries<R>::from_raw(s.gamma(), s.orthant(), raw);
}

template <class R>
LogLaurentSeries<R> derive(const LogLaurentSeries<R> &s, const MultiIndex &beta)
{
    require(beta.size() == s.dim() && beta.is_nonnegative(), "derive: bad multi-index");
    LogLaurentSeries<R> r = s;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        for (long t = 0; t < beta[i]; ++t) {
            r = derive(r, i);
        }
    }
    return r;
}

// x^beta * s
template <class R>
LogLaurentSeries<R> monomial_mul(const LogLaurentSeries<R> &s, const MultiIndex &beta)
{
    require(beta.size() == s.dim(), "monomial_mul: dimension mismatch");
    require(beta.is_nonnegative(), "monomial_mul: beta must be nonnegative");
    std::vector<std::tuple<MultiIndex, MultiIndex, R>> raw;
    for (const auto &[k, c] : s.terms()) {
        raw.emplace_back(k.alpha + beta, k.logpow, c);
    }
    return LogLaurentSeries<R>::from_raw(s.gamma(), s.orthant(), raw);
}

// Region of absolute exponents ref + alpha where a truncated series is known.
// In the positive orthant the known offsets are alpha_i <= radius_i, and
// offsets with a negative entry are known zeros.  The negative orthant is the
// mirror image.
struct Window {
    std::vector<Rational> ref;
    Orthant orthant = Orthant::positive;
    std::vector<long> radius;

    bool contains(const std::vector<Rational> &exponent) const
    {
        MultiIndex a = integer_difference(exponent, ref);
        for (std::size_t i = 0; i < a.size(); ++i) {
            long v = orthant == Orthant::positive ? a[i] : -a[i];
            if (v > radius[i]) {
                return false;
            }
        }
        return true;
    }

    // offsets strictly outside the orthant carry known zeros
    bool known_zero(const std::vector<Rational> &exponent) const
    {
        MultiIndex a = integer_difference(exponent, ref);
        for (std::size_t i = 0; i < a.size(); ++i) {
            long v = orthant == Orthant::positive ? a[i] : -a[i];
            if (v < 0) {
                return true;
            }
        }
        return false;
    }
};

template <class R>
std::pair<LogLaurentSeries<R>, LogLaurentSeries<R>> split_by_window(const LogLaurentSeries<R> &s, const Window &w)
{
    LogLaurentSeries<R> in(s.gamma(), s.orthant()), out(s.gamma(), s.orthant());
    for (const auto &[k, c] : s.terms()) {
        (w.contains(s.exponent(k.alpha)) ? in : out).add_term(k.alpha, k.logpow, c);
    }
    return {in, out};
}

} // namespace laplace
