#pragma once

// Operator/solution pairs and the duality checks: if phi annihilates s, then
// F_tau(phi) annihilates the formal image of s, and F(phi) annihilates the
// standard image.  Truncated solutions are only annihilated inside a window,
// so every check is made on the part of the result the window determines.

#include <optional>
#include <string>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/formal_laplace.hpp>
#include <laplace/log_series.hpp>
#include <laplace/pochhammer.hpp>
#include <laplace/standard_laplace.hpp>
#include <laplace/weyl.hpp>

namespace laplace
{

struct DualityPair {
    std::string name;
    WeylOperator op;
    LogLaurentSeries<Rational> solution;
    Window window;
};

// Operator in d variables acting like op on variable i (op has dimension 1).
inline WeylOperator embed(const WeylOperator &op, std::size_t d, std::size_t i)
{
    require(op.dim() == 1 && i < d, "embed: needs a one-variable operator and a valid slot");
    WeylOperator out(d);
    for (const auto &[k, c] : op.terms()) {
        MultiIndex xe = MultiIndex::zero(d), de = MultiIndex::zero(d);
        xe[i] = k.first[0];
        de[i] = k.second[0];
        out.add_term(xe, de, c);
    }
    return out;
}

// x d - gamma annihilates x^gamma.
inline DualityPair euler_pair(const Rational &gamma)
{
    WeylOperator op = WeylOperator::x(1, 0) * WeylOperator::dx(1, 0) - WeylOperator::constant(1, gamma);
    LogLaurentSeries<Rational> s({gamma});
    s.add_term(MultiIndex{0}, MultiIndex{0}, 1);
    return {"euler", op, s, Window{{gamma}, Orthant::positive, {0}}};
}

// x d^2 + (1 - gamma) d - 1 annihilates sum x^{n+gamma} / (n! (gamma+1)(gamma+2)...(gamma+n)).
inline WeylOperator hypergeometric_operator(const Rational &gamma)
{
    WeylOperator x = WeylOperator::x(1, 0), dx = WeylOperator::dx(1, 0);
    return x * dx * dx + dx * (Rational(1) - gamma) - WeylOperator::constant(1, 1);
}

inline DualityPair hypergeometric_pair(const Rational &gamma, long n_max)
{
    LogLaurentSeries<Rational> s({gamma});
    Rational a = 1;
    for (long n = 0; n <= n_max; ++n) {
        if (n > 0) {
            a /= Rational(n) * (gamma + Rational(n));
        }
        s.add_term(MultiIndex{n}, MultiIndex{0}, a);
    }
    return {"hypergeometric", hypergeometric_operator(gamma), s, Window{{gamma}, Orthant::positive, {n_max}}};
}

// s1(x1) s2(x2) for one-variable series.
inline LogLaurentSeries<Rational> tensor_series(const LogLaurentSeries<Rational> &a, const LogLaurentSeries<Rational> &b)
{
    require(a.dim() == 1 && b.dim() == 1 && a.orthant() == b.orthant(), "tensor_series: one-variable series of one orthant");
    LogLaurentSeries<Rational> s({a.gamma()[0], b.gamma()[0]}, a.orthant());
    for (const auto &[ka, ca] : a.terms()) {
        for (const auto &[kb, cb] : b.terms()) {
            s.add_term(MultiIndex{ka.alpha[0], kb.alpha[0]}, MultiIndex{ka.logpow[0], kb.logpow[0]}, ca * cb);
        }
    }
    return s;
}

// The d = 2 pairs built from two one-variable pairs: phi1 (x) 1, 1 (x) phi2 and
// their sum, all acting on the product solution.
inline std::vector<DualityPair> tensor_pairs(const DualityPair &p, const DualityPair &q)
{
    LogLaurentSeries<Rational> s = tensor_series(p.solution, q.solution);
    Window w{{p.window.ref[0], q.window.ref[0]}, p.window.orthant, {p.window.radius[0], q.window.radius[0]}};
    WeylOperator a = embed(p.op, 2, 0), b = embed(q.op, 2, 1);
    return {{p.name + "(x)1", a, s, w}, {"1(x)" + q.name, b, s, w}, {p.name + "(+)" + q.name, a + b, s, w}};
}

inline Window reflect_window(const Window &w)
{
    return {detail::reflected(w.ref), opposite(w.orthant), w.radius};
}

struct DualityReport {
    bool source_annihilated = false;
    bool standard_checked = false; // standard transform only exists for tau = 1
    bool standard_annihilated = true;
    bool standard_identity = true; // F(phi) L(s) = L(phi s), untruncated
    bool formal_annihilated = false;
    bool formal_identity = false; // F_tau(phi) L_tau(s) = L_tau(phi s), untruncated
    std::size_t standard_valid_terms = 0, formal_valid_terms = 0;
    std::string residual; // first nonzero residual, for diagnostics
    bool passed() const
    {
        return source_annihilated && standard_annihilated && standard_identity && formal_annihilated && formal_identity;
    }
};

template <class R>
inline std::string first_term(const LogLaurentSeries<R> &s)
{
    if (s.is_zero()) {
        return {};
    }
    LogLaurentSeries<R> one(s.gamma(), s.orthant());
    const auto &[k, c] = *s.terms().begin();
    one.add_term(k.alpha, k.logpow, c);
    return one.to_string();
}

inline DualityReport duality_check(const WeylOperator &op, const LogLaurentSeries<Rational> &s,
                                   const std::vector<Rational> &tau_in, const Window &w)
{
    std::size_t d = s.dim();
    std::vector<Rational> tau = broadcast_tau(tau_in, d);
    DualityReport r;
    if (op.is_zero()) {
        r.source_annihilated = r.standard_annihilated = r.formal_annihilated = r.formal_identity = true;
        return r;
    }
    require(op.dim() == d, "duality_check: dimension mismatch");
    auto src = apply(op, s, w);
    r.source_annihilated = src.valid.is_zero();
    if (!r.source_annihilated) {
        r.residual = "source: " + first_term(src.valid);
    }
    Window img_w = reflect_window(w);
    LogLaurentSeries<Rational> phis = apply(op, s);

    bool tau_one = true;
    for (const auto &t : tau) {
        tau_one = tau_one && t == Rational(1);
    }
    if (tau_one) {
        r.standard_checked = true;
        WeylOperator f = fourier_laplace(op);
        LaplaceImage img = laplace_series(s);
        auto res = apply(f, img.series, img_w);
        r.standard_valid_terms = res.valid.size() + res.dropped.size();
        r.standard_annihilated = res.valid.is_zero();
        if (!r.standard_annihilated && r.residual.empty()) {
            r.residual = "standard: " + first_term(res.valid);
        }
        LaplaceImage rhs = laplace_series(phis, s.gamma());
        r.standard_identity = apply(f, img.series) == rhs.series;
    }

    WeylOperator ft = fourier_laplace(op, tau);
    MatrixSeries m = matrix_series_from_scalar(s);
    LogLaurentSeries<Rational> fimg = scalar_series(formal_transform(m, tau));
    auto fres = apply(ft, fimg, img_w);
    r.formal_valid_terms = fres.valid.size() + fres.dropped.size();
    r.formal_annihilated = fres.valid.is_zero();
    if (!r.formal_annihilated && r.residual.empty()) {
        r.residual = "formal: " + first_term(fres.valid);
    }
    std::vector<Matrix> ref;
    for (const auto &g : s.gamma()) {
        ref.push_back(Matrix{{g}});
    }
    LogLaurentSeries<Rational> lhs = apply(ft, fimg);
    LogLaurentSeries<Rational> rhs =
        phis.is_zero() ? lhs * Rational(0) : scalar_series(formal_transform(matrix_series_from_scalar(phis), tau, ref));
    r.formal_identity = lhs == rhs;
    return r;
}

inline DualityReport duality_check(const DualityPair &p, const std::vector<Rational> &tau)
{
    return duality_check(p.op, p.solution, tau, p.window);
}

} // namespace laplace
