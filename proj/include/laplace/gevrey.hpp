#pragma once

// Arithmetic Gevrey classification of truncated series.
//
// A coefficient family a_alpha has order s when the normalized family
// a_alpha / (alpha!)^s has geometrically bounded sizes and denominators.
// On a window |alpha| <= N this is tested through two sequences indexed by n:
//   size(n)  = max_{|alpha| <= n} log |a_alpha / (alpha!)^s|
//   denom(n) = log lcd { a_alpha / (alpha!)^s : |alpha| <= n }
// and each must pass the split slope fit (back-half slope at most front-half
// slope + 0.1).  Factorial excess shows up as a slope that keeps rising.

#include <map>
#include <string>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/log_series.hpp>
#include <laplace/numeric_fit.hpp>
#include <laplace/standard_laplace.hpp>
#include <laplace/weyl.hpp>

namespace laplace
{

struct GevreyCertificate {
    long s = 0;
    Rational size_slope, denom_slope;
    SlopeFit size_fit, denom_fit;
    long window = 0;
    bool passed = false;
    std::string detail;
};

inline Integer abs_factorial(const MultiIndex &a)
{
    Integer f = 1;
    for (long x : a) {
        f *= factorial(x < 0 ? -x : x);
    }
    return f;
}

inline long abs_total(const MultiIndex &a)
{
    long t = 0;
    for (long x : a) {
        t += x < 0 ? -x : x;
    }
    return t;
}

inline GevreyCertificate certify_gevrey(const std::map<MultiIndex, Rational> &coeffs, long s, long window)
{
    require(window >= 4, "certify_gevrey: window too small for a slope fit");
    GevreyCertificate c;
    c.s = s;
    c.window = window;
    std::vector<std::vector<Rational>> by_degree(static_cast<std::size_t>(window) + 1);
    bool any = false;
    for (const auto &[alpha, a] : coeffs) {
        long n = abs_total(alpha);
        require(n <= window, "certify_gevrey: support exceeds the window");
        if (a.is_zero()) {
            continue;
        }
        Rational f(abs_factorial(alpha));
        by_degree[static_cast<std::size_t>(n)].push_back(a * f.pow(-s));
        any = true;
    }
    require(any, "certify_gevrey: empty support");

    std::vector<double> xs, size, den;
    Integer L = 1;
    bool seen = false;
    double best = 0;
    for (long n = 0; n <= window; ++n) {
        for (const auto &v : by_degree[static_cast<std::size_t>(n)]) {
            double lv = log_abs(v);
            best = seen ? std::max(best, lv) : lv;
            seen = true;
            L = lcm(L, v.denominator());
        }
        if (!seen) {
            continue;
        }
        xs.push_back(static_cast<double>(n));
        size.push_back(best);
        den.push_back(log_integer(L));
    }
    if (xs.size() < 4) {
        c.detail = "fewer than four populated degrees";
        return c;
    }
    c.size_fit = split_slope_fit(xs, size);
    c.denom_fit = split_slope_fit(xs, den);
    c.size_slope = rational_approximation(c.size_fit.back_slope);
    c.denom_slope = rational_approximation(c.denom_fit.back_slope);
    c.passed = c.size_fit.bounded && c.denom_fit.bounded;
    if (!c.size_fit.bounded) {
        c.detail = "size slope rises across the window";
    } else if (!c.denom_fit.bounded) {
        c.detail = "denominator slope rises across the window";
    }
    return c;
}

inline GevreyCertificate certify_gevrey(const LogLaurentSeries<Rational> &f, long s, long window)
{
    std::map<MultiIndex, Rational> coeffs;
    for (const auto &[k, c] : f.terms()) {
        coeffs[k.alpha] += c;
    }
    return certify_gevrey(coeffs, s, window);
}

// One summand f(x) x^gamma (log x)^k of a Nilson-Gevrey element.
struct NgaSummand {
    std::map<MultiIndex, Rational> coeffs;
    std::vector<Rational> gamma;
    MultiIndex k;
    Orthant orthant = Orthant::positive;

    LogLaurentSeries<Rational> series() const
    {
        LogLaurentSeries<Rational> s(gamma, orthant);
        for (const auto &[a, c] : coeffs) {
            s.add_term(a, k, c);
        }
        return s;
    }
};

struct NgaElement {
    std::vector<NgaSummand> summands;

    void validate() const
    {
        for (const auto &t : summands) {
            require(t.gamma.size() == t.k.size(), "NGA summand: gamma and k lengths differ");
            for (const auto &g : t.gamma) {
                require(!g.is_integer(), "NGA summand: exponent must not be an integer");
            }
            require(t.k.is_nonnegative(), "NGA summand: log orders must be nonnegative");
        }
    }
};

struct CoordinateCertificate {
    MultiIndex logpow;
    std::string monomial;
    GevreyCertificate certificate;
};

struct OrderShiftReport {
    long source_order = 0, target_order = 0;
    std::vector<GevreyCertificate> source;
    std::vector<std::vector<CoordinateCertificate>> image;
    std::vector<LaplaceImage> images;
    bool source_passed = true;
    bool image_passed = true;
    bool image_nonzero = true;
    bool passed() const { return source_passed && image_passed && image_nonzero; }
};

// Split a transform image into rational coefficient families, one per pair
// (log power, Gamma-monomial), indexed by the offset from the image reference.
inline std::map<std::pair<MultiIndex, GammaMonomial>, std::map<MultiIndex, Rational>>
image_coordinates(const LaplaceImage &img)
{
    std::vector<Rational> ref = detail::reflected(img.gamma_ref);
    std::map<std::pair<MultiIndex, GammaMonomial>, std::map<MultiIndex, Rational>> out;
    for (const auto &[k, c] : img.series.terms()) {
        MultiIndex off = integer_difference(img.series.exponent(k.alpha), ref);
        for (const auto &[m, q] : c.terms()) {
            out[{k.logpow, m}][off] += q;
        }
    }
    return out;
}

// Order s in the x direction maps to s+1 in the 1/x direction, and order s in
// the 1/x direction maps to s-1.  Each summand is certified at s first.
inline OrderShiftReport transform_order_shift(const NgaElement &e, long s, long window)
{
    e.validate();
    OrderShiftReport r;
    r.source_order = s;
    for (const auto &t : e.summands) {
        long target = t.orthant == Orthant::positive ? s + 1 : s - 1;
        r.target_order = target;
        if (t.coeffs.empty()) {
            continue;
        }
        GevreyCertificate src = certify_gevrey(t.coeffs, s, window);
        r.source.push_back(src);
        if (!src.passed) {
            r.source_passed = false;
            continue;
        }
        LaplaceImage img = laplace_series(t.series(), t.gamma);
        r.image_nonzero = r.image_nonzero && !img.series.is_zero();
        std::vector<CoordinateCertificate> coords;
        for (const auto &[key, coeffs] : image_coordinates(img)) {
            GammaPoly label(t.gamma);
            label.add_term(key.second, 1);
            GevreyCertificate c = certify_gevrey(coeffs, target, window);
            r.image_passed = r.image_passed && c.passed;
            coords.push_back({key.first, label.to_string(), std::move(c)});
        }
        r.image.push_back(std::move(coords));
        r.images.push_back(std::move(img));
    }
    if (e.summands.empty()) {
        r.target_order = s + 1;
    }
    return r;
}

struct HolonomicityProbe {
    std::vector<bool> annihilates;
    std::vector<std::string> residual;
};

// Evidence only: reports whether each supplied operator kills the truncation
// inside the window.  A nonzero residual is a result, not an error.
inline HolonomicityProbe holonomicity_probe(const LogLaurentSeries<Rational> &f, const std::vector<WeylOperator> &ops,
                                            const Window &w)
{
    HolonomicityProbe p;
    for (const auto &op : ops) {
        auto res = apply(op, f, w);
        p.annihilates.push_back(res.valid.is_zero());
        p.residual.push_back(res.valid.is_zero() ? std::string() : res.valid.to_string());
    }
    return p;
}

} // namespace laplace
