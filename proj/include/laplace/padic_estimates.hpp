#pragma once

// v-adic estimates in valuation space.  A norm |M|_v = max |m_ij|_v becomes the
// minimum entry valuation, and pi_v becomes the exact valuation 1/(p-1).
// Limit statements are checked at the last sample with tolerance 8 log(n)/n.
//
// Envelopes for the coefficient matrices use the Jordan decomposition
// Lambda = U J U^{-1}.  With D_j(n) the valuation of the diagonal entry of the
// Jordan block j and M_j(n) the largest valuation of a single factor,
//
//   vU + vU^{-1} + min_j (D_j - (s_j - 1) M_j)  <=  v C(n)  <=  min_j D_j - vU - vU^{-1},
//
// where s_j is the block size.  The polynomial factor of the existential
// bounds appears here as p^{M_j(n)} <= theta_j n, theta_j = |a_j| + b_j for
// gamma_j = a_j / b_j.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/formal_laplace.hpp>
#include <laplace/matrix.hpp>
#include <laplace/matrix_series.hpp>
#include <laplace/numeric_fit.hpp>
#include <laplace/padic.hpp>
#include <laplace/pochhammer.hpp>
#include <laplace/standard_laplace.hpp>

namespace laplace
{

inline Valuation matrix_vnorm(const Matrix &m, const PadicContext &ctx)
{
    Valuation v = Valuation::infinity();
    for (const auto &x : m.data()) {
        v = vmin(v, ctx.val(x));
    }
    return v;
}

struct ValuationReport {
    std::string sequence;
    long p = 2;
    std::vector<std::pair<long, Valuation>> samples;
    // optional bracketing envelopes, aligned with samples
    std::vector<Rational> lower, upper;
    Rational target;
    Rational tolerance;
    bool envelopes_hold = true;
    bool limit_holds = false;
    bool passed = false;
    std::string detail;
};

inline void require_in_Zp_not_Z(const Rational &g, const PadicContext &ctx)
{
    require(!g.is_integer(), "exponent must not be an integer");
    Valuation v = ctx.val(g);
    require(v >= Valuation(0), "exponent must lie in Z_p (nonnegative valuation)");
}

// w_n = val((gamma)_{n+1}) = sum_{m=0}^{n} val(gamma + m),  w_n / n -> 1/(p-1).
inline ValuationReport pochhammer_valuation_profile(const Rational &gamma, long n_max, const PadicContext &ctx)
{
    require_in_Zp_not_Z(gamma, ctx);
    require(n_max >= 1, "n_max must be positive");
    ValuationReport r;
    r.sequence = "pochhammer";
    r.p = ctx.p();
    r.target = ctx.pi_valuation();
    Rational w = ctx.val(gamma).value();
    for (long n = 1; n <= n_max; ++n) {
        w += ctx.val(gamma + Rational(n)).value();
        r.samples.emplace_back(n, Valuation(w));
    }
    r.tolerance = log_tolerance(n_max);
    r.limit_holds = within_log_tolerance(w, n_max, r.target);
    r.passed = r.limit_holds;
    return r;
}

enum class Direction { plus, minus };

struct CNormStructure {
    JordanDecomposition jordan;
    Valuation vU, vUinv;
    // per distinct eigenvalue: largest block size and theta
    std::map<Rational, std::size_t> max_block;
};

inline CNormStructure c_norm_structure(const Matrix &lambda, const PadicContext &ctx)
{
    CNormStructure s;
    s.jordan = jordan_decomposition(lambda);
    s.vU = matrix_vnorm(s.jordan.U, ctx);
    s.vUinv = matrix_vnorm(s.jordan.U_inv, ctx);
    for (const auto &b : s.jordan.blocks) {
        require_in_Zp_not_Z(b.eigenvalue, ctx);
        auto &m = s.max_block[b.eigenvalue];
        m = std::max(m, b.size);
    }
    return s;
}

// Valuations of |C(+-n)|_v for n = 1..n_max with envelopes at every n and the
// limit  +-(1/(p-1) - val tau)  at n_max.
inline ValuationReport c_norm_profile(const Matrix &lambda, const Rational &tau, Direction dir, long n_max,
                                      const PadicContext &ctx)
{
    require(!tau.is_zero(), "tau must be nonzero");
    require(n_max >= 1, "n_max must be positive");
    CNormStructure st = c_norm_structure(lambda, ctx);
    std::size_t nu = lambda.rows();
    Rational vtau = ctx.val(tau).value();
    Rational conj = st.vU.value() + st.vUinv.value();

    ValuationReport r;
    r.sequence = dir == Direction::plus ? "C_norm_plus" : "C_norm_minus";
    r.p = ctx.p();
    r.target = dir == Direction::plus ? ctx.pi_valuation() - vtau : vtau - ctx.pi_valuation();

    struct Track {
        Rational gamma;
        std::size_t block;
        Rational sum = 0;
        long maxv = 0;
        Integer theta;
    };
    std::vector<Track> tracks;
    for (const auto &[g, b] : st.max_block) {
        tracks.push_back({g, b, 0, 0, abs(g.numerator()) + g.denominator()});
    }

    Matrix cur = Matrix::identity(nu);
    Rational tau_inv = tau.inverse();
    bool theta_ok = true;
    for (long n = 1; n <= n_max; ++n) {
        if (dir == Direction::plus) {
            cur = (lambda + Matrix::scalar(nu, Rational(n))) * cur * tau_inv;
        } else {
            cur = (lambda - Matrix::scalar(nu, Rational(n - 1))).inverse() * cur * tau;
        }
        Valuation w = matrix_vnorm(cur, ctx);
        r.samples.emplace_back(n, w);

        Rational lo, hi;
        bool first = true;
        for (auto &t : tracks) {
            Rational factor = dir == Direction::plus ? t.gamma + Rational(n) : t.gamma - Rational(n - 1);
            long v = to_long(ctx.val(factor).value().numerator());
            t.sum += Rational(v);
            t.maxv = std::max(t.maxv, v);
            Integer pm;
            mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(ctx.p()), static_cast<unsigned long>(t.maxv));
            theta_ok = theta_ok && pm <= t.theta * n;
            Rational D = dir == Direction::plus ? t.sum - Rational(n) * vtau : Rational(n) * vtau - t.sum;
            Rational low = D - Rational(static_cast<long>(t.block) - 1) * Rational(t.maxv);
            if (first) {
                lo = low;
                hi = D;
                first = false;
            } else {
                lo = std::min(lo, low);
                hi = std::min(hi, D);
            }
        }
        lo += conj;
        hi -= conj;
        r.lower.push_back(lo);
        r.upper.push_back(hi);
        if (w.is_infinite() || w.value() < lo || w.value() > hi) {
            if (r.envelopes_hold) {
                r.detail = "envelope violated at n=" + std::to_string(n);
            }
            r.envelopes_hold = false;
        }
    }
    if (!theta_ok) {
        r.envelopes_hold = false;
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("factor valuation bound p^M <= theta n violated");
    }
    r.tolerance = log_tolerance(n_max);
    r.limit_holds = within_log_tolerance(r.samples.back().second.value(), n_max, r.target);
    r.passed = r.envelopes_hold && r.limit_holds;
    return r;
}

struct NormInequalityReport {
    Valuation vY, vYinv, vZ, vZinv, vYZ, vdetY, vdetZ;
    bool norm1_lower = false, norm1_upper = false, norm2_lower = false, norm2_upper = false;
    bool passed() const { return norm1_lower && norm1_upper && norm2_lower && norm2_upper; }
};

// In valuation space:
//   vY + vY^{-1} <= 0,   vY^{-1} >= (nu-1) vY - v det Y,
//   vY + v det Z + (1-nu) vZ  >=  vYZ  >=  vY + vZ.
inline NormInequalityReport norm_inequality_check(const Matrix &Y, const Matrix &Z, const PadicContext &ctx)
{
    require(Y.is_square() && Z.is_square() && Y.rows() == Z.rows(), "norm inequalities need square matrices of one size");
    Rational detY = Y.determinant(), detZ = Z.determinant();
    require(!detY.is_zero() && !detZ.is_zero(), "norm inequalities need invertible matrices");
    NormInequalityReport r;
    Rational nu(static_cast<long>(Y.rows()));
    r.vY = matrix_vnorm(Y, ctx);
    r.vYinv = matrix_vnorm(Y.inverse(), ctx);
    r.vZ = matrix_vnorm(Z, ctx);
    r.vZinv = matrix_vnorm(Z.inverse(), ctx);
    r.vYZ = matrix_vnorm(Y * Z, ctx);
    r.vdetY = ctx.val(detY);
    r.vdetZ = ctx.val(detZ);
    Rational vY = r.vY.value(), vYi = r.vYinv.value(), vZ = r.vZ.value(), vYZ = r.vYZ.value();
    Rational dY = r.vdetY.value(), dZ = r.vdetZ.value();
    r.norm1_lower = vY + vYi <= Rational(0);
    r.norm1_upper = vYi >= (nu - Rational(1)) * vY - dY;
    r.norm2_upper = vYZ >= vY + vZ;
    r.norm2_lower = vY + dZ + (Rational(1) - nu) * vZ >= vYZ;
    return r;
}

struct RaySample {
    MultiIndex alpha;
    Valuation vY, vZ;
};

struct GrowthReport {
    long p = 2;
    Rational shift; // +-(1/(p-1) - val tau)
    std::vector<std::pair<MultiIndex, std::vector<RaySample>>> rays;
    bool passed = true;
    std::string detail;
};

// Slopes of |Z_alpha|_v against |Y_alpha|_v along coordinate and diagonal rays:
// slope(Z) >= slope(Y) + shift - 8 log|alpha| / |alpha| at the end of each ray.
inline GrowthReport z_coefficient_growth(const MatrixSeries &m, const Rational &tau, long n_max, const PadicContext &ctx)
{
    require(!tau.is_zero(), "tau must be nonzero");
    for (const auto &l : m.lambda()) {
        for (const auto &ev : rational_eigenvalues(l)) {
            require_in_Zp_not_Z(ev.value, ctx);
        }
    }
    GrowthReport g;
    g.p = ctx.p();
    Rational base = ctx.pi_valuation() - ctx.val(tau).value();
    int sgn = m.orthant() == Orthant::positive ? 1 : -1;
    g.shift = base * Rational(sgn);
    if (m.is_zero()) {
        return g;
    }
    MatrixSeries z = formal_transform(m, {tau});
    std::size_t d = m.dim();
    std::vector<MultiIndex> dirs;
    for (std::size_t i = 0; i < d; ++i) {
        dirs.push_back(MultiIndex::unit(d, i));
    }
    if (d > 1) {
        dirs.push_back(MultiIndex::constant(d, 1));
    }
    // the image of offset alpha sits at -alpha from -Lambda-I
    std::vector<Matrix> zref;
    std::vector<CoeffMatrixFn> coeff;
    for (const auto &l : m.lambda()) {
        zref.push_back(-l - Matrix::identity(m.nu()));
        coeff.emplace_back(l, tau, false);
    }
    MultiIndex c = z.offset_from(zref);
    for (const auto &dir : dirs) {
        std::vector<RaySample> samples;
        for (long n = 1; n * dir.total() <= n_max; ++n) {
            MultiIndex alpha = MultiIndex::zero(d);
            for (std::size_t i = 0; i < d; ++i) {
                alpha[i] = sgn * n * dir[i];
            }
            Matrix y = m.coefficient(alpha);
            Matrix zz = z.coefficient(-alpha - c);
            RaySample rs{alpha, matrix_vnorm(y, ctx), matrix_vnorm(zz, ctx)};
            // exact form: |Y C_1 ... C_d| <= |Y| |C_1| ... |C_d|
            if (!rs.vY.is_infinite()) {
                Valuation bound = rs.vY;
                for (std::size_t i = 0; i < d; ++i) {
                    bound = bound + matrix_vnorm(coeff[i](alpha[i]), ctx);
                }
                if (!rs.vZ.is_infinite() && rs.vZ.value() < bound.value()) {
                    g.passed = false;
                    g.detail = "ultrametric bound violated at alpha=" + alpha.to_string();
                }
            }
            samples.push_back(std::move(rs));
        }
        if (!samples.empty()) {
            const auto &last = samples.back();
            if (!last.vY.is_infinite() && !last.vZ.is_infinite()) {
                long len = std::abs(last.alpha.total());
                Rational L(len);
                if (last.vZ.value() / L < last.vY.value() / L + g.shift - log_tolerance(len)) {
                    g.passed = false;
                    g.detail = "slope bound violated along ray " + dir.to_string();
                }
            }
        }
        g.rays.emplace_back(dir, std::move(samples));
    }
    return g;
}

struct LcdGrowthReport {
    std::vector<std::pair<long, Integer>> lcd;
    long factorial_exponent = 0;
    SlopeFit fit;
    bool passed = false;
};

// lcd of prod (a_i)_n / prod (b_j)_n for n <= N, with n!^{max(d'-d,0)} divided out.
inline LcdGrowthReport lcd_growth_check(const std::vector<Rational> &a, const std::vector<Rational> &b, long n_max)
{
    for (const auto &x : a) {
        require(!(x.is_integer() && x <= Rational(0)), "parameters must avoid nonpositive integers");
    }
    for (const auto &x : b) {
        require(!(x.is_integer() && x <= Rational(0)), "parameters must avoid nonpositive integers");
    }
    require(n_max >= 8, "n_max too small for a slope fit");
    LcdGrowthReport r;
    long d = static_cast<long>(a.size()), dp = static_cast<long>(b.size());
    r.factorial_exponent = std::max(dp - d, 0L);
    Integer L = 1;
    std::vector<Rational> num(a.size()), den(b.size());
    std::vector<double> xs, ys;
    double logfact = 0;
    for (long n = 0; n <= n_max; ++n) {
        Rational v = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
            v *= pochhammer(a[i], n);
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            v /= pochhammer(b[j], n);
        }
        L = lcm(L, v.denominator());
        if (n >= 1) {
            logfact += std::log(static_cast<double>(n));
        }
        r.lcd.emplace_back(n, L);
        xs.push_back(static_cast<double>(n));
        ys.push_back(log_integer(L) - static_cast<double>(r.factorial_exponent) * logfact);
    }
    r.fit = split_slope_fit(xs, ys);
    r.passed = r.fit.bounded;
    return r;
}

// Archimedean and v-adic growth of r-tables: log max |r| over shift n, and the
// minimum valuation over shift n.
struct RTableGrowth {
    SlopeFit size_fit, denominator_fit;
    std::vector<std::pair<long, Valuation>> min_valuation;
};

inline RTableGrowth r_table_growth(unsigned k, const Rational &gamma, long n_max, int sign_dir,
                                   const PadicContext *ctx = nullptr)
{
    RTable t(k, gamma, n_max);
    RTableGrowth g;
    std::vector<double> xs, size, den;
    Integer L = 1;
    double best = 0;
    for (long n = 1; n <= n_max; ++n) {
        long s = sign_dir * n;
        Valuation vmin_n = Valuation::infinity();
        for (unsigned j = 0; j <= k; ++j) {
            for (unsigned l = j; l <= k; ++l) {
                const Rational &x = t.r(s, j, l);
                if (x.is_zero()) {
                    continue;
                }
                best = std::max(best, log_abs(x));
                L = lcm(L, x.denominator());
                if (ctx) {
                    vmin_n = vmin(vmin_n, ctx->val(x));
                }
            }
        }
        xs.push_back(static_cast<double>(n));
        size.push_back(best);
        den.push_back(log_integer(L));
        if (ctx) {
            g.min_valuation.emplace_back(n, vmin_n);
        }
    }
    g.size_fit = split_slope_fit(xs, size);
    g.denominator_fit = split_slope_fit(xs, den);
    return g;
}

} // namespace laplace
