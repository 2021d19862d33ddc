#pragma once

// Weyl algebra Q[x_1..x_d, D_1..D_d] in x-left normal order, the
// Fourier-Laplace automorphism F_tau, and the action on series.

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/log_series.hpp>
#include <laplace/matrix_series.hpp>
#include <laplace/multi_index.hpp>
#include <laplace/rational.hpp>

namespace laplace
{

class WeylOperator
{
public:
    using Key = std::pair<MultiIndex, MultiIndex>; // (x exponents, D exponents)

    WeylOperator() = default;
    explicit WeylOperator(std::size_t d) : d_(d) { require(d >= 1, "operator dimension must be at least 1"); }

    static WeylOperator constant(std::size_t d, const Rational &c)
    {
        WeylOperator w(d);
        w.add_term(MultiIndex::zero(d), MultiIndex::zero(d), c);
        return w;
    }
    static WeylOperator x(std::size_t d, std::size_t i)
    {
        WeylOperator w(d);
        w.add_term(MultiIndex::unit(d, i), MultiIndex::zero(d), 1);
        return w;
    }
    static WeylOperator dx(std::size_t d, std::size_t i)
    {
        WeylOperator w(d);
        w.add_term(MultiIndex::zero(d), MultiIndex::unit(d, i), 1);
        return w;
    }
    static WeylOperator monomial(const MultiIndex &xe, const MultiIndex &de, const Rational &c = 1)
    {
        WeylOperator w(xe.size());
        w.add_term(xe, de, c);
        return w;
    }

    std::size_t dim() const noexcept { return d_; }
    const std::map<Key, Rational> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const MultiIndex &xe, const MultiIndex &de, const Rational &c)
    {
        require(xe.size() == d_ && de.size() == d_, "operator term dimension mismatch");
        require(xe.is_nonnegative() && de.is_nonnegative(), "operator exponents must be nonnegative");
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.emplace(Key{xe, de}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    WeylOperator &operator+=(const WeylOperator &o)
    {
        adopt(o);
        for (const auto &[k, c] : o.terms_) {
            add_term(k.first, k.second, c);
        }
        return *this;
    }
    WeylOperator &operator-=(const WeylOperator &o)
    {
        adopt(o);
        for (const auto &[k, c] : o.terms_) {
            add_term(k.first, k.second, -c);
        }
        return *this;
    }
    WeylOperator operator-() const
    {
        WeylOperator r(d_);
        for (const auto &[k, c] : terms_) {
            r.add_term(k.first, k.second, -c);
        }
        return r;
    }
    friend WeylOperator operator+(WeylOperator a, const WeylOperator &b) { return a += b; }
    friend WeylOperator operator-(WeylOperator a, const WeylOperator &b) { return a -= b; }
    friend WeylOperator operator*(const WeylOperator &a, const Rational &s)
    {
        WeylOperator r(a.d_);
        for (const auto &[k, c] : a.terms_) {
            r.add_term(k.first, k.second, c * s);
        }
        return r;
    }
    friend WeylOperator operator*(const Rational &s, const WeylOperator &a) { return a * s; }
    friend WeylOperator operator*(const WeylOperator &a, const WeylOperator &b);

    friend bool operator==(const WeylOperator &a, const WeylOperator &b)
    {
        return a.terms_ == b.terms_ && (a.d_ == b.d_ || a.is_zero());
    }

    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        bool first = true;
        for (const auto &[k, c] : terms_) {
            s += first ? "" : " + ";
            first = false;
            s += "(" + c.to_string() + ")";
            for (std::size_t i = 0; i < d_; ++i) {
                if (k.first[i]) {
                    s += "*x" + std::to_string(i + 1) + (k.first[i] > 1 ? "^" + std::to_string(k.first[i]) : "");
                }
            }
            for (std::size_t i = 0; i < d_; ++i) {
                if (k.second[i]) {
                    s += "*Dx" + std::to_string(i + 1) + (k.second[i] > 1 ? "^" + std::to_string(k.second[i]) : "");
                }
            }
        }
        return s;
    }

private:
    void adopt(const WeylOperator &o)
    {
        if (d_ == 0) {
            d_ = o.d_;
        }
        require(o.d_ == d_ || o.is_zero(), "operator dimension mismatch");
    }

    std::size_t d_ = 0;
    std::map<Key, Rational> terms_;
};

namespace detail
{

// D^b x^c (per variable) = sum_t C(b,t) c!/(c-t)! x^{c-t} D^{b-t}, expanded over all variables,
// with extra left x^a and right D^e factors.
inline void reorder_into(WeylOperator &out, const MultiIndex &a, const MultiIndex &b, const MultiIndex &c,
                         const MultiIndex &e, const Rational &coeff)
{
    std::size_t d = a.size();
    std::vector<std::pair<MultiIndex, Rational>> choices{{MultiIndex::zero(d), coeff}};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::pair<MultiIndex, Rational>> next;
        long tmax = std::min(b[i], c[i]);
        for (const auto &[t, w] : choices) {
            Rational falling = 1;
            for (long s = 0; s <= tmax; ++s) {
                MultiIndex tt = t;
                tt[i] = s;
                next.emplace_back(tt, w * Rational(binomial(b[i], s)) * falling);
                falling *= Rational(c[i] - s);
            }
        }
        choices = std::move(next);
    }
    for (const auto &[t, w] : choices) {
        out.add_term(a + c - t, b - t + e, w);
    }
}

} // namespace detail

inline WeylOperator operator*(const WeylOperator &a, const WeylOperator &b)
{
    if (a.is_zero() || b.is_zero()) {
        return WeylOperator(a.dim() ? a.dim() : b.dim());
    }
    require(a.dim() == b.dim(), "operator dimension mismatch");
    WeylOperator r(a.dim());
    for (const auto &[ka, ca] : a.terms_) {
        for (const auto &[kb, cb] : b.terms_) {
            detail::reorder_into(r, ka.first, ka.second, kb.first, kb.second, ca * cb);
        }
    }
    return r;
}

inline WeylOperator weyl_mul(const WeylOperator &a, const WeylOperator &b) { return a * b; }

// x_i -> -D_i / tau_i, D_i -> tau_i x_i, then normal order.
inline WeylOperator fourier_laplace(const WeylOperator &op, const std::vector<Rational> &tau_in)
{
    std::size_t d = op.dim();
    if (op.is_zero()) {
        return op;
    }
    std::vector<Rational> tau = tau_in.size() == 1 ? std::vector<Rational>(d, tau_in.front()) : tau_in;
    require(tau.size() == d, "tau vector length mismatch");
    for (const auto &t : tau) {
        require(!t.is_zero(), "tau must be nonzero");
    }
    WeylOperator out(d);
    MultiIndex zero = MultiIndex::zero(d);
    for (const auto &[k, c] : op.terms()) {
        Rational w = c;
        for (std::size_t i = 0; i < d; ++i) {
            w *= (-tau[i].inverse()).pow(k.first[i]) * tau[i].pow(k.second[i]);
        }
        // (D^a)(x^b)
        detail::reorder_into(out, zero, k.first, k.second, zero, w);
    }
    return out;
}

inline WeylOperator fourier_laplace(const WeylOperator &op)
{
    return fourier_laplace(op, std::vector<Rational>(op.dim(), Rational(1)));
}

// Exact action on a finite series; nothing is dropped.
template <class S>
S apply(const WeylOperator &op, const S &s)
{
    S out = s * Rational(0);
    if (op.is_zero()) {
        return out;
    }
    require(op.dim() == s.dim(), "operator and series dimensions differ");
    std::map<MultiIndex, S> derivs;
    for (const auto &[k, c] : op.terms()) {
        auto it = derivs.find(k.second);
        if (it == derivs.end()) {
            it = derivs.emplace(k.second, derive(s, k.second)).first;
        }
        out = out + monomial_mul(it->second, k.first) * c;
    }
    return out;
}

// Result of applying an operator to a truncated series: the part whose
// coefficients are determined by the known region, and the rest.
template <class R>
struct WindowedResult {
    LogLaurentSeries<R> valid;
    LogLaurentSeries<R> dropped;
    Window window;
};

template <class R>
WindowedResult<R> apply(const WeylOperator &op, const LogLaurentSeries<R> &s, const Window &w, bool strict = false)
{
    require(w.ref.size() == s.dim() && w.radius.size() == s.dim(), "window dimension mismatch");
    LogLaurentSeries<R> full = apply(op, s);
    LogLaurentSeries<R> valid(full.gamma(), full.orthant()), dropped(full.gamma(), full.orthant());
    auto determined = [&](const std::vector<Rational> &e) {
        for (const auto &[k, c] : op.terms()) {
            std::vector<Rational> src = e;
            for (std::size_t i = 0; i < e.size(); ++i) {
                src[i] += Rational(k.second[i] - k.first[i]);
            }
            if (!w.contains(src) && !w.known_zero(src)) {
                return false;
            }
        }
        return true;
    };
    for (const auto &[k, c] : full.terms()) {
        (determined(full.exponent(k.alpha)) ? valid : dropped).add_term(k.alpha, k.logpow, c);
    }
    Window shrunk = w;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        long widen = 0;
        for (const auto &[k, c] : op.terms()) {
            widen = std::max(widen, k.second[i] - k.first[i]);
        }
        shrunk.radius[i] -= widen;
    }
    if (strict && !dropped.is_zero()) {
        throw truncation_overflow(dropped.to_string());
    }
    return {valid, dropped, shrunk};
}

// Infix form such as "x1*Dx1^2 + (3/2)*Dx1 - 1".  Variables are 1-based.
inline WeylOperator parse_operator(std::string_view text, std::size_t d = 0)
{
    struct Parser {
        std::string_view s;
        std::size_t pos = 0;
        std::size_t d;

        [[noreturn]] void fail(const std::string &what) const
        {
            throw parse_error("operator parse error at position " + std::to_string(pos) + ": " + what);
        }
        void skip()
        {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
                ++pos;
            }
        }
        bool eat(char c)
        {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        Integer integer()
        {
            skip();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                ++pos;
            }
            if (start == pos) {
                fail("expected an integer");
            }
            return Integer(std::string(s.substr(start, pos - start)), 10);
        }
        std::size_t var_index()
        {
            Integer n = integer();
            if (n < 1 || (d && n > static_cast<long>(d))) {
                fail("variable index out of range");
            }
            return static_cast<std::size_t>(n.get_ui()) - 1;
        }
        WeylOperator expr()
        {
            WeylOperator acc = term();
            while (true) {
                if (eat('+')) {
                    acc += term();
                } else if (eat('-')) {
                    acc -= term();
                } else {
                    return acc;
                }
            }
        }
        WeylOperator term()
        {
            WeylOperator acc = unary();
            while (eat('*')) {
                acc = acc * unary();
            }
            return acc;
        }
        WeylOperator unary()
        {
            if (eat('-')) {
                return -unary();
            }
            if (eat('+')) {
                return unary();
            }
            return power();
        }
        WeylOperator power()
        {
            WeylOperator base = primary();
            if (eat('^')) {
                Integer e = integer();
                WeylOperator r = WeylOperator::constant(d, 1);
                for (Integer i = 0; i < e; ++i) {
                    r = r * base;
                }
                return r;
            }
            return base;
        }
        WeylOperator primary()
        {
            skip();
            if (pos >= s.size()) {
                fail("unexpected end of input");
            }
            char c = s[pos];
            if (c == '(') {
                ++pos;
                WeylOperator e = expr();
                if (!eat(')')) {
                    fail("expected ')'");
                }
                return e;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                Integer num = integer();
                Integer den = 1;
                if (eat('/')) {
                    den = integer();
                    if (den == 0) {
                        fail("zero denominator");
                    }
                }
                return WeylOperator::constant(d, Rational(num, den));
            }
            if (c == 'x') {
                ++pos;
                return WeylOperator::x(d, var_index());
            }
            if (c == 'D' && pos + 1 < s.size() && s[pos + 1] == 'x') {
                pos += 2;
                return WeylOperator::dx(d, var_index());
            }
            fail(std::string("unexpected character '") + c + "'");
        }
    };
    if (d == 0) {
        // infer the dimension from the largest variable index
        std::size_t maxv = 1;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == 'x' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
                std::size_t j = i + 1;
                std::size_t v = 0;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                    v = v * 10 + static_cast<std::size_t>(text[j] - '0');
                    ++j;
                }
                maxv = std::max(maxv, v);
            }
        }
        d = maxv;
    }
    Parser p{text, 0, d};
    WeylOperator r = p.expr();
    p.skip();
    if (p.pos != text.size()) {
        p.fail("trailing input");
    }
    return r;
}

} // namespace laplace
