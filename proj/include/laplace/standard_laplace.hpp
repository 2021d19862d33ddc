#pragma once

// The standard Laplace transform on terms x^(g+m) (log x)^k.
//
// Every result is written as Gamma(ref) times a log series whose coefficients
// live in the Gamma-derivative ring at base ref, so the transcendental factor
// is never evaluated.  For one variable
//
//   L(x^g (log x)^k) = Gamma(g+1) x^(-g-1) sum_j rho^{(k)}_{g,j} (log x)^j,
//
// and moving the exponent by one step changes rho through
//
//   rho_{g+1,j-1} = eps (rho_{g,j-1} - j/(g+1) rho_{g,j}),   rho_{g+1,k} = eps rho_{g,k}.
//
// Differentiating the closed form fixes eps = +1 (see detect_recurrence_sign);
// the opposite overall sign does not reproduce the closed form at g+1 and
// breaks the commutation with derivations.  The r-tables express rho at a
// shifted exponent in the basis of rho at the reference exponent.  Shift 0 is
// the Kronecker row in both directions.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/gamma_ring.hpp>
#include <laplace/log_series.hpp>
#include <laplace/pochhammer.hpp>

namespace laplace
{

constexpr int rho_sign = +1;

using RhoRow = std::vector<GammaPoly>;

inline RhoRow closed_form_row(unsigned k, const std::vector<Rational> &base, std::size_t var = 0)
{
    unsigned K = std::max(k, GammaPoly::default_order);
    RhoRow row;
    for (unsigned j = 0; j <= k; ++j) {
        row.push_back(rho_closed_form(k, j, base, var, K));
    }
    return row;
}

// Row at g+1 from the row at g.
inline RhoRow rho_recurrence_step(const RhoRow &row, const Rational &gamma_current, int eps = rho_sign)
{
    require(!gamma_current.is_integer(), "rho recurrence needs a non-integral exponent");
    require(!row.empty(), "empty rho row");
    std::size_t k = row.size() - 1;
    Rational e(eps);
    Rational inv = (gamma_current + Rational(1)).inverse();
    RhoRow next(k + 1);
    next[k] = row[k] * e;
    for (std::size_t j = 1; j <= k; ++j) {
        next[j - 1] = (row[j - 1] - row[j] * (Rational(static_cast<long>(j)) * inv)) * e;
    }
    return next;
}

// Row at g-1 from the row at g: rho_{g-1,j-1} = eps rho_{g,j-1} + j/g rho_{g-1,j}.
inline RhoRow rho_recurrence_step_down(const RhoRow &row, const Rational &gamma_current, int eps = rho_sign)
{
    require(!gamma_current.is_integer(), "rho recurrence needs a non-integral exponent");
    require(!row.empty(), "empty rho row");
    std::size_t k = row.size() - 1;
    Rational e(eps);
    Rational inv = gamma_current.inverse();
    RhoRow prev(k + 1);
    prev[k] = row[k] * e;
    for (std::size_t j = k; j >= 1; --j) {
        prev[j - 1] = row[j - 1] * e + prev[j] * (Rational(static_cast<long>(j)) * inv);
    }
    return prev;
}

// Returns the sign eps for which one recurrence step from the closed-form row
// at gamma reproduces the closed form at gamma+1, or 0 when neither does.
inline int detect_recurrence_sign(unsigned k, const Rational &gamma)
{
    std::vector<Rational> base{gamma};
    RhoRow start = closed_form_row(k, base);
    RhoRow target;
    for (const auto &p : closed_form_row(k, {gamma + Rational(1)})) {
        target.push_back(rebase(p, base));
    }
    for (int eps : {+1, -1}) {
        if (rho_recurrence_step(start, gamma, eps) == target) {
            return eps;
        }
    }
    return 0;
}

// rho^{(k)}_{gamma+n, j} for |n| <= n_max, all written at base gamma.
class RhoTable
{
public:
    RhoTable(unsigned k, const Rational &gamma, long n_max, int eps = rho_sign) : k_(k), gamma_(gamma), n_max_(n_max)
    {
        require(!gamma.is_integer(), "RhoTable needs a non-integral exponent");
        require(n_max >= 0, "RhoTable needs n_max >= 0");
        RhoRow base = closed_form_row(k, {gamma});
        up_.push_back(base);
        down_.push_back(base);
        for (long n = 0; n < n_max; ++n) {
            up_.push_back(rho_recurrence_step(up_.back(), gamma + Rational(n), eps));
            down_.push_back(rho_recurrence_step_down(down_.back(), gamma - Rational(n), eps));
        }
    }

    unsigned k() const noexcept { return k_; }
    const Rational &gamma() const noexcept { return gamma_; }
    long n_max() const noexcept { return n_max_; }

    const RhoRow &row(long n) const
    {
        require(n >= -n_max_ && n <= n_max_, "RhoTable shift out of range");
        return n >= 0 ? up_[n] : down_[-n];
    }
    const GammaPoly &entry(long n, unsigned j) const { return row(n).at(j); }

private:
    unsigned k_;
    Rational gamma_;
    long n_max_;
    std::vector<RhoRow> up_, down_;
};

// Coordinates r^{(k,l)}_{gamma+n, j}: rho_{gamma+n,j} = sum_{l=j}^{k} rho_{gamma,l} r^{(k,l)}_{gamma+n,j}.
// Built from the unrolled sums
//   r_{g+n,j-1}^{(l)} = -j sum_{i=0}^{n-1} eps^{n-i} r_{g+i,j}^{(l)} / (g+i+1),
//   r_{g-n,j-1}^{(l)} =  j sum_{i=1}^{n}   eps^{n-i} r_{g-i,j}^{(l)} / (g-i+1),
// with diagonal r_{g+-n,j}^{(j)} = eps^n and zero below the diagonal.
class RTable
{
public:
    RTable(unsigned k, const Rational &gamma, long n_max, int eps = rho_sign) : k_(k), gamma_(gamma), eps_(eps)
    {
        require(!gamma.is_integer(), "RTable needs a non-integral exponent");
        require(eps == 1 || eps == -1, "sign must be +1 or -1");
        Grid kron = zero_grid();
        for (unsigned j = 0; j <= k; ++j) {
            kron[j][j] = 1;
        }
        fwd_.push_back(kron);
        bwd_.push_back(kron);
        S_ = zero_grid();
        T_ = zero_grid();
        extend_to(n_max);
    }

    unsigned k() const noexcept { return k_; }
    const Rational &gamma() const noexcept { return gamma_; }
    int sign() const noexcept { return eps_; }
    long n_max() const noexcept { return static_cast<long>(fwd_.size()) - 1; }

    const Rational &r(long n, unsigned j, unsigned l) const
    {
        require(n >= -n_max() && n <= n_max(), "RTable shift out of range");
        require(j <= k_ && l <= k_, "RTable index out of range");
        return n >= 0 ? fwd_[n][j][l] : bwd_[-n][j][l];
    }

    // Extends the table in place, continuing the partial sums.
    void extend_to(long n_max)
    {
        Rational e(eps_);
        while (this->n_max() < n_max) {
            long n = this->n_max();
            Rational epsn = e.pow(n + 1);
            Grid up = zero_grid(), down = zero_grid();
            up[k_][k_] = epsn;
            down[k_][k_] = epsn;
            Rational inv_up = (gamma_ + Rational(n + 1)).inverse();
            Rational inv_down = (gamma_ - Rational(n)).inverse();
            for (unsigned j = k_; j >= 1; --j) {
                for (unsigned l = j; l <= k_; ++l) {
                    S_[j][l] = e * (S_[j][l] + fwd_[n][j][l] * inv_up);
                    T_[j][l] = e * T_[j][l] + down[j][l] * inv_down;
                    up[j - 1][l] = -Rational(static_cast<long>(j)) * S_[j][l];
                    down[j - 1][l] = Rational(static_cast<long>(j)) * T_[j][l];
                }
                up[j - 1][j - 1] = epsn;
                down[j - 1][j - 1] = epsn;
            }
            fwd_.push_back(std::move(up));
            bwd_.push_back(std::move(down));
        }
    }

    // Nonzero entries as (n, j, l, r), for audit dumps.
    std::vector<std::tuple<long, unsigned, unsigned, Rational>> rows() const
    {
        std::vector<std::tuple<long, unsigned, unsigned, Rational>> out;
        for (long n = -n_max(); n <= n_max(); ++n) {
            for (unsigned j = 0; j <= k_; ++j) {
                for (unsigned l = j; l <= k_; ++l) {
                    const Rational &v = r(n, j, l);
                    if (!v.is_zero()) {
                        out.emplace_back(n, j, l, v);
                    }
                }
            }
        }
        return out;
    }

private:
    using Grid = std::vector<std::vector<Rational>>;
    Grid zero_grid() const { return Grid(k_ + 1, std::vector<Rational>(k_ + 1)); }

    unsigned k_;
    Rational gamma_;
    int eps_;
    std::vector<Grid> fwd_, bwd_;
    Grid S_, T_;
};

inline RTable build_r_table(unsigned k, const Rational &gamma, long n_max, int eps = rho_sign)
{
    return RTable(k, gamma, n_max, eps);
}

namespace detail
{

struct RTableCache {
    std::mutex mu;
    std::map<std::pair<unsigned, Rational>, std::shared_ptr<const RTable>> tables;
};

inline RTableCache &r_table_cache()
{
    static RTableCache cache;
    return cache;
}

} // namespace detail

// Shared, immutable table covering at least |n| <= n_max.  Extension publishes
// a new snapshot, so earlier handles stay valid.
inline std::shared_ptr<const RTable> cached_r_table(unsigned k, const Rational &gamma, long n_max)
{
    auto &cache = detail::r_table_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    auto &slot = cache.tables[{k, gamma}];
    if (!slot || slot->n_max() < n_max) {
        RTable t = slot ? *slot : RTable(k, gamma, 0);
        t.extend_to(std::max(n_max, slot ? 2 * slot->n_max() : n_max));
        slot = std::make_shared<const RTable>(std::move(t));
    }
    return slot;
}

// Eq. (rho1) in table form: RhoTable rows equal r-weighted combinations of the base row.
inline bool check_rho_r_consistency(const RhoTable &rho, const RTable &r)
{
    require(rho.k() == r.k() && rho.gamma() == r.gamma(), "tables describe different (k, gamma)");
    long n_max = std::min(rho.n_max(), r.n_max());
    const RhoRow &base = rho.row(0);
    for (long n = -n_max; n <= n_max; ++n) {
        for (unsigned j = 0; j <= rho.k(); ++j) {
            GammaPoly acc(base[0].base(), base[0].max_order());
            for (unsigned l = j; l <= rho.k(); ++l) {
                acc += base[l] * r.r(n, j, l);
            }
            if (!(acc == rho.entry(n, j))) {
                return false;
            }
        }
    }
    return true;
}

// Gamma(g+m+1)/Gamma(g) as an explicit product.
inline Rational shift_prefactor(const Rational &g, long m)
{
    if (m >= 0) {
        return detail::rising(g, m + 1);
    }
    long n = -m;
    Rational sign = n % 2 ? -1 : 1;
    return sign * g / detail::rising(-g, n);
}

inline Rational shift_prefactor(const std::vector<Rational> &g, const MultiIndex &m)
{
    require(g.size() == m.size(), "prefactor length mismatch");
    Rational p = 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
        p *= shift_prefactor(g[i], m[i]);
    }
    return p;
}

// Value = Gamma(gamma_ref_1) ... Gamma(gamma_ref_d) * series.
struct LaplaceImage {
    LogLaurentSeries<GammaPoly> series;
    std::vector<Rational> gamma_ref;

    friend bool operator==(const LaplaceImage &a, const LaplaceImage &b)
    {
        return a.gamma_ref == b.gamma_ref && a.series == b.series;
    }
};

namespace detail
{

inline unsigned ring_order(const MultiIndex &k)
{
    unsigned K = GammaPoly::default_order;
    for (long x : k) {
        K = std::max<unsigned>(K, static_cast<unsigned>(x));
    }
    return K;
}

// sum_j rho^{(k)}_{ref+m, j} (log x)^j for one variable, at base ref (tagged var i).
inline std::vector<GammaPoly> shifted_log_polynomial(const std::vector<Rational> &ref, std::size_t i, unsigned k,
                                                     long m, unsigned K)
{
    auto table = cached_r_table(k, ref[i], m >= 0 ? m : -m);
    std::vector<GammaPoly> base;
    for (unsigned l = 0; l <= k; ++l) {
        base.push_back(rho_closed_form(k, l, ref, i, K));
    }
    std::vector<GammaPoly> out;
    for (unsigned j = 0; j <= k; ++j) {
        GammaPoly acc(ref, K);
        for (unsigned l = j; l <= k; ++l) {
            acc += base[l] * table->r(m, j, l);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

inline std::vector<std::tuple<MultiIndex, MultiIndex, GammaPoly>>
laplace_term_raw(const std::vector<Rational> &ref, const MultiIndex &k, const MultiIndex &m, const Rational &scale)
{
    std::size_t d = ref.size();
    unsigned K = ring_order(k);
    Rational pref = shift_prefactor(ref, m) * scale;
    std::vector<std::vector<GammaPoly>> per_var;
    for (std::size_t i = 0; i < d; ++i) {
        per_var.push_back(shifted_log_polynomial(ref, i, static_cast<unsigned>(k[i]), m[i], K));
    }
    std::vector<std::tuple<MultiIndex, MultiIndex, GammaPoly>> raw;
    for (const auto &j : box(k)) {
        GammaPoly c = GammaPoly::constant(pref, ref, K);
        for (std::size_t i = 0; i < d; ++i) {
            c = c * per_var[i][j[i]];
            if (c.is_zero()) {
                break;
            }
        }
        if (!c.is_zero()) {
            raw.emplace_back(-m, j, std::move(c));
        }
    }
    return raw;
}

inline std::vector<Rational> reflected(const std::vector<Rational> &g)
{
    std::vector<Rational> out;
    for (const auto &x : g) {
        out.push_back(-x - Rational(1));
    }
    return out;
}

} // namespace detail

// L(x^(ref+m) (log x)^k) / Gamma(ref), for signed shifts m.
inline LogLaurentSeries<GammaPoly> laplace_term(const std::vector<Rational> &gamma_ref, const MultiIndex &k,
                                                 const MultiIndex &m)
{
    require(gamma_ref.size() == k.size() && k.size() == m.size(), "laplace_term: length mismatch");
    require(k.is_nonnegative(), "laplace_term: log orders must be nonnegative");
    for (const auto &g : gamma_ref) {
        require(!g.is_integer(), "laplace_term: integral exponent");
    }
    Orthant o = m.is_nonnegative() ? Orthant::negative : Orthant::positive;
    return LogLaurentSeries<GammaPoly>::from_raw(detail::reflected(gamma_ref), o,
                                                 detail::laplace_term_raw(gamma_ref, k, m, Rational(1)));
}

// Termwise transform.  ref defaults to the series reference exponent and may be
// any exponent differing from it by an integer vector.
inline LaplaceImage laplace_series(const LogLaurentSeries<Rational> &s,
                                   const std::optional<std::vector<Rational>> &ref = std::nullopt)
{
    std::vector<Rational> r = ref ? *ref : s.gamma();
    require(r.size() == s.dim(), "laplace_series: reference length mismatch");
    for (const auto &g : r) {
        require(!g.is_integer(), "laplace_series: integral exponent");
    }
    MultiIndex base_shift = integer_difference(s.gamma(), r);
    std::vector<std::tuple<MultiIndex, MultiIndex, GammaPoly>> raw;
    for (const auto &[key, c] : s.terms()) {
        auto part = detail::laplace_term_raw(r, key.logpow, key.alpha + base_shift, c);
        raw.insert(raw.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return {LogLaurentSeries<GammaPoly>::from_raw(detail::reflected(r), opposite(s.orthant()), raw), r};
}

// One row of the log-filtration certificate: for the term at (alpha, k) with k
// maximal among the log powers at alpha, the image coefficient at log power k
// is (-1)^{|k|} * prefactor * c and nothing else contributes to it.
struct InjectivityEntry {
    MultiIndex alpha, logpow;
    Rational input, diagonal;
    GammaPoly image;
    bool ok;
};

struct InjectivityCertificate {
    std::vector<InjectivityEntry> entries;
    bool triangular = true;
    bool certified() const
    {
        if (!triangular || entries.empty()) {
            return false;
        }
        for (const auto &e : entries) {
            if (!e.ok) {
                return false;
            }
        }
        return true;
    }
};

inline InjectivityCertificate injectivity_certificate(const LogLaurentSeries<Rational> &s)
{
    InjectivityCertificate cert;
    LaplaceImage img = laplace_series(s);
    const auto &ref = img.gamma_ref;
    std::map<MultiIndex, std::vector<MultiIndex>> logs;
    for (const auto &[key, c] : s.terms()) {
        logs[key.alpha].push_back(key.logpow);
        // triangularity: laplace_term only produces log powers j <= k
        auto term = laplace_term(ref, key.logpow, key.alpha);
        for (const auto &[tk, tc] : term.terms()) {
            if (!leq(tk.logpow, key.logpow)) {
                cert.triangular = false;
            }
        }
    }
    for (const auto &[alpha, ks] : logs) {
        // the lexicographic maximum is maximal for the componentwise order
        MultiIndex top = *std::max_element(ks.begin(), ks.end());
        bool maximal = true;
        for (const auto &k : ks) {
            maximal = maximal && !lt(top, k);
        }
        Rational c = s.coefficient(alpha, top);
        Rational diag = shift_prefactor(ref, alpha) * Rational(top.total() % 2 ? -1 : 1);
        std::vector<Rational> exponent;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            exponent.push_back(-ref[i] - Rational(alpha[i]) - Rational(1));
        }
        GammaPoly image = img.series.coefficient_at(exponent, top);
        bool ok = maximal && !diag.is_zero() && image.is_constant() && image.constant_term() == diag * c &&
                  !image.is_zero();
        cert.entries.push_back({alpha, top, c, diag, image, ok});
    }
    return cert;
}

} // namespace laplace
