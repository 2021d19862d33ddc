#pragma once

// The coefficient ring Q[G_{i,j}] of normalized Gamma derivatives.
//
// Generator G_{i,j} (variable i, order j >= 1) stands for
// Gamma^{(j)}(b_i + 1) / Gamma(b_i + 1) where b is the base exponent vector
// carried by the polynomial, and G_{i,0} is the unit.  The generators are
// treated as algebraically independent.  Gamma is never evaluated.
//
// Two base-point operations are provided.  gamma_shift relabels b -> b + n,
// which is the ring isomorphism sending G_j(b) to G_j(b + n).  rebase keeps the
// value and rewrites it in generators at another base point, using
// Gamma(z + 1) = z Gamma(z) differentiated up to order K.

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/rational.hpp>

namespace laplace
{

struct Generator {
    std::size_t var = 0;
    unsigned order = 1;
    friend auto operator<=>(const Generator &, const Generator &) = default;
    friend bool operator==(const Generator &, const Generator &) = default;
};

// Sorted by generator, exponents positive.
using GammaMonomial = std::vector<std::pair<Generator, unsigned>>;

inline GammaMonomial monomial_product(const GammaMonomial &a, const GammaMonomial &b)
{
    GammaMonomial out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

class GammaPoly
{
public:
    static constexpr unsigned default_order = 8;

    // The zero element, with no base point attached.
    GammaPoly() = default;

    // Zero at a base point.
    explicit GammaPoly(std::vector<Rational> base, unsigned max_order = default_order)
        : base_(std::move(base)), K_(max_order)
    {
        for (const auto &b : base_) {
            require(!b.is_integer(), "GammaPoly base exponent must not be an integer");
        }
    }

    static GammaPoly constant(const Rational &c, std::vector<Rational> base = {}, unsigned max_order = default_order)
    {
        GammaPoly p(std::move(base), max_order);
        p.add_term({}, c);
        return p;
    }

    static GammaPoly generator(std::vector<Rational> base, std::size_t var, unsigned order,
                               unsigned max_order = default_order)
    {
        require(var < base.size(), "generator variable out of range");
        require(order <= max_order, "generator order exceeds ring bound K");
        GammaPoly p(std::move(base), max_order);
        if (order == 0) {
            p.add_term({}, 1);
        } else {
            p.add_term({{Generator{var, order}, 1u}}, 1);
        }
        return p;
    }

    const std::vector<Rational> &base() const noexcept { return base_; }
    unsigned max_order() const noexcept { return K_; }
    const std::map<GammaMonomial, Rational> &terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    Rational constant_term() const
    {
        auto it = terms_.find({});
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational coefficient(const GammaMonomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const GammaMonomial &m, const Rational &c)
    {
        for (const auto &[g, e] : m) {
            require(g.var < base_.size(), "generator variable outside the base vector");
            require(g.order >= 1 && g.order <= K_, "generator order exceeds ring bound K");
            require(e > 0, "zero exponent in stored monomial");
        }
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    GammaPoly &operator+=(const GammaPoly &o)
    {
        adopt(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }
    GammaPoly &operator-=(const GammaPoly &o)
    {
        adopt(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }
    GammaPoly &operator*=(const Rational &s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, c] : terms_) {
            c *= s;
        }
        return *this;
    }
    GammaPoly operator-() const
    {
        GammaPoly r = *this;
        for (auto &[m, c] : r.terms_) {
            c = -c;
        }
        return r;
    }
    friend GammaPoly operator+(GammaPoly a, const GammaPoly &b) { return a += b; }
    friend GammaPoly operator-(GammaPoly a, const GammaPoly &b) { return a -= b; }
    friend GammaPoly operator*(GammaPoly a, const Rational &s) { return a *= s; }
    friend GammaPoly operator*(const Rational &s, GammaPoly a) { return a *= s; }
    friend GammaPoly operator*(const GammaPoly &a, const GammaPoly &b)
    {
        GammaPoly r = a.base_.empty() ? GammaPoly(b.base_, std::max(a.K_, b.K_))
                                      : GammaPoly(a.base_, std::max(a.K_, b.K_));
        r.check_compatible(b);
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                r.add_term(monomial_product(ma, mb), ca * cb);
            }
        }
        return r;
    }
    GammaPoly &operator*=(const GammaPoly &o) { return *this = *this * o; }

    // Constants compare by value regardless of base point.
    friend bool operator==(const GammaPoly &a, const GammaPoly &b)
    {
        if (a.terms_ != b.terms_) {
            return false;
        }
        return a.is_constant() || a.base_.empty() || b.base_.empty() || a.base_ == b.base_;
    }

    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        bool first = true;
        for (const auto &[m, c] : terms_) {
            if (!first) {
                s += " + ";
            }
            first = false;
            s += c.to_string();
            for (const auto &[g, e] : m) {
                s += "*G" + std::to_string(g.var) + "_" + std::to_string(g.order);
                if (e > 1) {
                    s += "^" + std::to_string(e);
                }
            }
        }
        return s;
    }

private:
    friend GammaPoly gamma_shift(const GammaPoly &, const std::vector<long> &);

    void check_compatible(const GammaPoly &o) const
    {
        if (!o.base_.empty() && !base_.empty() && o.base_ != base_ && !o.is_constant()) {
            throw precondition_error("GammaPoly operands have different base points");
        }
    }
    void adopt(const GammaPoly &o)
    {
        check_compatible(o);
        if (base_.empty() && !o.base_.empty()) {
            base_ = o.base_;
        }
        K_ = std::max(K_, o.K_);
    }

    std::vector<Rational> base_;
    unsigned K_ = default_order;
    std::map<GammaMonomial, Rational> terms_;
};

inline bool is_zero(const GammaPoly &p) { return p.is_zero(); }

inline GammaPoly gamma_shift(const GammaPoly &p, const std::vector<long> &steps)
{
    require(steps.size() == p.base().size() || p.base().empty(), "gamma_shift: step vector length mismatch");
    GammaPoly r = p;
    for (std::size_t i = 0; i < r.base_.size(); ++i) {
        r.base_[i] += Rational(steps[i]);
    }
    return r;
}

inline GammaPoly gamma_shift(const GammaPoly &p, long steps)
{
    return gamma_shift(p, std::vector<long>(p.base().size(), steps));
}

namespace detail
{

using PowerSeries = std::vector<Rational>;

inline PowerSeries series_mul(const PowerSeries &a, const PowerSeries &b, unsigned order)
{
    PowerSeries r(order + 1);
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// Taylor coefficients in h of Gamma(b+1+h)Gamma(b'+1) / (Gamma(b'+1+h)Gamma(b+1)).
inline PowerSeries gamma_ratio_series(const Rational &b, const Rational &b_new, unsigned order)
{
    Rational diff = b - b_new;
    require(diff.is_integer(), "rebase needs base points differing by an integer");
    long n = to_long(diff.numerator());
    PowerSeries acc(order + 1);
    acc[0] = 1;
    for (long t = 1; t <= (n >= 0 ? n : -n); ++t) {
        Rational a = n > 0 ? (b_new + Rational(t)).inverse() : (b + Rational(t)).inverse();
        PowerSeries f(order + 1);
        if (n > 0) {
            f[0] = 1;
            if (order >= 1) {
                f[1] = a;
            }
        } else {
            Rational pw = 1;
            for (unsigned i = 0; i <= order; ++i) {
                f[i] = pw;
                pw *= -a;
            }
        }
        acc = series_mul(acc, f, order);
    }
    return acc;
}

} // namespace detail

// Same value, written in generators at new_base.
inline GammaPoly rebase(const GammaPoly &p, const std::vector<Rational> &new_base)
{
    if (p.base().empty()) {
        return p;
    }
    require(new_base.size() == p.base().size(), "rebase: base length mismatch");
    unsigned K = p.max_order();
    std::vector<detail::PowerSeries> ratio;
    for (std::size_t i = 0; i < new_base.size(); ++i) {
        ratio.push_back(detail::gamma_ratio_series(p.base()[i], new_base[i], K));
    }
    std::map<Generator, GammaPoly> image;
    auto image_of = [&](const Generator &g) -> const GammaPoly & {
        auto it = image.find(g);
        if (it != image.end()) {
            return it->second;
        }
        GammaPoly q(new_base, K);
        Rational falling = 1; // m!/(m-t)!
        for (unsigned t = 0; t <= g.order; ++t) {
            Rational coeff = falling * ratio[g.var][t];
            unsigned rest = g.order - t;
            if (rest == 0) {
                q.add_term({}, coeff);
            } else {
                q.add_term({{Generator{g.var, rest}, 1u}}, coeff);
            }
            falling *= Rational(static_cast<long>(g.order - t));
        }
        return image.emplace(g, std::move(q)).first->second;
    };
    GammaPoly out(new_base, K);
    for (const auto &[m, c] : p.terms()) {
        GammaPoly prod = GammaPoly::constant(c, new_base, K);
        for (const auto &[g, e] : m) {
            for (unsigned k = 0; k < e; ++k) {
                prod = prod * image_of(g);
            }
        }
        out += prod;
    }
    return out;
}

// rho^{(k)}_{gamma,j} = (-1)^j C(k,j) G_{k-j}: the coefficient of (log x)^j in the
// transform of x^gamma (log x)^k after dividing by Gamma(gamma+1) x^{-gamma-1}.
inline GammaPoly rho_closed_form(unsigned k, unsigned j, const std::vector<Rational> &base, std::size_t var = 0,
                                 unsigned max_order = GammaPoly::default_order)
{
    require(j <= k, "rho_closed_form needs j <= k");
    require(k <= max_order, "rho_closed_form needs k <= K");
    Rational c = Rational(binomial(k, j)) * Rational(j % 2 ? -1 : 1);
    return GammaPoly::generator(base, var, k - j, max_order) * c;
}

inline GammaPoly rho_closed_form(unsigned k, unsigned j, const Rational &gamma,
                                 unsigned max_order = GammaPoly::default_order)
{
    return rho_closed_form(k, j, std::vector<Rational>{gamma}, 0, max_order);
}

} // namespace laplace
