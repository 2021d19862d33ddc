#include <gtest/gtest.h>

#include <random>

#include <laplace/numeric_fit.hpp>
#include <laplace/padic.hpp>
#include <laplace/padic_estimates.hpp>
#include <laplace/pochhammer.hpp>
#include <laplace/standard_laplace.hpp>

#include "numeric_oracle.hpp"

using namespace laplace;

namespace
{

using Series = LogLaurentSeries<Rational>;
const Rational half(1, 2);

GammaPoly constant(const Rational &c, const std::vector<Rational> &base) { return GammaPoly::constant(c, base); }

Series random_series(std::mt19937_64 &rng, const std::vector<Rational> &gamma, Orthant o)
{
    Series s(gamma, o);
    for (int t = 0; t < 5; ++t) {
        MultiIndex a(gamma.size()), k(gamma.size());
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            long v = static_cast<long>(rng() % 4);
            a[i] = o == Orthant::positive ? v : -v;
            k[i] = static_cast<long>(rng() % 3);
        }
        s.add_term(a, k, Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1));
    }
    return s;
}

} // namespace

TEST(LaplaceTerm, PrefactorsRelativeToGamma)
{
    // Gamma(g+1) = g Gamma(g): coefficient 1 against Gamma(g+1) is g against Gamma(g).
    auto t0 = laplace_term({half}, MultiIndex{0}, MultiIndex{0});
    EXPECT_EQ(t0.size(), 1u);
    EXPECT_EQ(t0.coefficient_at({Rational(-3, 2)}, MultiIndex{0}), constant(half, {half}));

    auto t2 = laplace_term({half}, MultiIndex{0}, MultiIndex{2});
    EXPECT_EQ(t2.coefficient_at({Rational(-7, 2)}, MultiIndex{0}), constant(Rational(15, 8), {half}));
    EXPECT_EQ(Rational(15, 8), pochhammer(half, 3));

    std::vector<Rational> g2{half, Rational(1, 3)};
    auto td = laplace_term(g2, MultiIndex{0, 0}, MultiIndex{0, 0});
    EXPECT_EQ(td.coefficient_at({Rational(-3, 2), Rational(-4, 3)}, MultiIndex{0, 0}), constant(Rational(1, 6), g2));

    // negative shift: Gamma(g-n+1)/Gamma(g) = 1/((g-1)...(g-n+1))
    auto tm = laplace_term({half}, MultiIndex{0}, MultiIndex{-3});
    Rational want = (Rational(-1, 2) * Rational(-3, 2)).inverse();
    EXPECT_EQ(tm.coefficient_at({Rational(3, 2)}, MultiIndex{0}), constant(want, {half}));
    EXPECT_EQ(shift_prefactor(half, -3), want);
    EXPECT_THROW(laplace_term({Rational(2)}, MultiIndex{0}, MultiIndex{0}), precondition_error);
}

TEST(LaplaceTerm, TopLogCoefficient)
{
    for (unsigned k = 0; k <= 4; ++k) {
        for (long m : {-2L, 0L, 3L}) {
            auto t = laplace_term({Rational(-2, 5)}, MultiIndex{static_cast<long>(k)}, MultiIndex{m});
            Rational top = shift_prefactor(Rational(-2, 5), m) * Rational(k % 2 ? -1 : 1);
            EXPECT_EQ(t.coefficient_at({Rational(2, 5) - Rational(m) - Rational(1)}, MultiIndex{static_cast<long>(k)}),
                      constant(top, {Rational(-2, 5)}));
            EXPECT_FALSE(t.is_zero());
        }
    }
}

TEST(LaplaceTerm, AgreesWithNumericTransform)
{
    for (const auto &c : oracle::transform_samples()) {
        Rational g(c.num, c.den);
        auto t = laplace_term({g}, MultiIndex{static_cast<long>(c.k)}, MultiIndex{c.m});
        double got = oracle::gamma_value(g) * oracle::evaluate(t, c.x);
        EXPECT_NEAR(got, c.value, 1e-11 * std::max(1.0, std::abs(c.value)))
            << "gamma=" << g << " k=" << c.k << " m=" << c.m << " x=" << c.x;
    }
}

TEST(LaplaceTerm, ClosedFormLogLinear)
{
    // L(x^{1/2} log x) = Gamma(1/2) (1/2) (G1 - log x) x^{-3/2}
    auto t = laplace_term({half}, MultiIndex{1}, MultiIndex{0});
    GammaPoly g1 = GammaPoly::generator({half}, 0, 1);
    EXPECT_EQ(t.coefficient_at({Rational(-3, 2)}, MultiIndex{0}), g1 * half);
    EXPECT_EQ(t.coefficient_at({Rational(-3, 2)}, MultiIndex{1}), constant(-half, {half}));
}

TEST(LaplaceSeries, ExponentialTruncation)
{
    std::vector<Rational> g{half, Rational(1, 3)};
    Series f(g);
    for (long a = 0; a <= 2; ++a) {
        f.add_term(MultiIndex{a, 0}, MultiIndex{0, 0}, Rational(factorial(a)).inverse());
    }
    LaplaceImage img = laplace_series(f);
    EXPECT_EQ(img.gamma_ref, g);
    EXPECT_EQ(img.series.orthant(), Orthant::negative);
    for (long a = 0; a <= 2; ++a) {
        Rational want = Rational(factorial(a)).inverse() * pochhammer(half, a + 1) * pochhammer(Rational(1, 3), 1);
        EXPECT_EQ(img.series.coefficient_at({-half - Rational(a + 1), Rational(-4, 3)}, MultiIndex{0, 0}),
                  constant(want, g));
    }
    EXPECT_EQ(img.series.size(), 3u);

    Series fl(g);
    for (long a = 0; a <= 2; ++a) {
        fl.add_term(MultiIndex{a, 0}, MultiIndex{1, 0}, Rational(factorial(a)).inverse());
    }
    LaplaceImage il = laplace_series(fl);
    for (long a = 0; a <= 2; ++a) {
        Rational want = -Rational(factorial(a)).inverse() * pochhammer(half, a + 1) * pochhammer(Rational(1, 3), 1);
        EXPECT_EQ(il.series.coefficient_at({-half - Rational(a + 1), Rational(-4, 3)}, MultiIndex{1, 0}),
                  constant(want, g));
    }
}

TEST(LaplaceSeries, SingleTermMatchesTerm)
{
    Series s({Rational(3, 4)});
    s.add_term(MultiIndex{2}, MultiIndex{2}, 1);
    EXPECT_EQ(laplace_series(s).series, laplace_term({Rational(3, 4)}, MultiIndex{2}, MultiIndex{2}));
}

TEST(LaplaceSeries, CommutesWithDerivations)
{
    std::mt19937_64 rng(99);
    for (Orthant o : {Orthant::positive, Orthant::negative}) {
        for (int t = 0; t < 15; ++t) {
            std::vector<Rational> g{Rational(1, 2), Rational(-4, 3)};
            Series s = random_series(rng, g, o);
            LaplaceImage ls = laplace_series(s);
            for (const auto &beta : simplex(2, 2)) {
                Rational sign(beta.total() % 2 ? -1 : 1);
                EXPECT_EQ(derive(ls.series, beta), laplace_series(monomial_mul(s, beta) * sign, g).series);
                EXPECT_EQ(laplace_series(derive(s, beta), g).series, monomial_mul(ls.series, beta));
            }
        }
    }
}

TEST(Rho, RecurrenceSignIsPlus)
{
    for (unsigned k = 1; k <= 4; ++k) {
        for (const Rational &g : {half, Rational(-1, 3), Rational(5, 7)}) {
            EXPECT_EQ(detect_recurrence_sign(k, g), 1);
        }
    }
    EXPECT_EQ(rho_sign, 1);
}

TEST(Rho, StepExample)
{
    RhoRow row = closed_form_row(1, {half});
    ASSERT_EQ(row.size(), 2u);
    EXPECT_EQ(row[1], constant(-1, {half}));
    RhoRow next = rho_recurrence_step(row, half);
    GammaPoly g1 = GammaPoly::generator({half}, 0, 1);
    EXPECT_EQ(next[0], g1 + constant(Rational(2, 3), {half}));
    EXPECT_EQ(next[0], rebase(GammaPoly::generator({Rational(3, 2)}, 0, 1), {half}));
    // the opposite overall sign yields -G1 - 2/3, which is not the shifted closed form
    RhoRow wrong = rho_recurrence_step(row, half, -1);
    EXPECT_NE(wrong[0], next[0]);
}

TEST(Rho, TableMatchesRebasedClosedForms)
{
    for (unsigned k = 0; k <= 3; ++k) {
        for (const Rational &g : {half, Rational(-1, 3)}) {
            RhoTable t(k, g, 6);
            for (long n = -6; n <= 6; ++n) {
                for (unsigned j = 0; j <= k; ++j) {
                    GammaPoly direct = rebase(rho_closed_form(k, j, g + Rational(n)), {g});
                    EXPECT_EQ(t.entry(n, j), direct) << "k=" << k << " n=" << n << " j=" << j;
                }
                EXPECT_EQ(t.entry(n, k), constant(k % 2 ? -1 : 1, {g}));
            }
        }
    }
}

TEST(RTable, Values)
{
    RTable t(1, half, 3);
    EXPECT_EQ(t.r(1, 0, 1), Rational(-2, 3));
    EXPECT_EQ(t.r(-1, 0, 1), Rational(2));
    EXPECT_EQ(t.r(0, 0, 1), Rational(0));
    EXPECT_EQ(t.r(0, 0, 0), Rational(1));
    // two steps: -(1/(g+1) + 1/(g+2))
    EXPECT_EQ(t.r(2, 0, 1), -(Rational(2, 3) + Rational(2, 5)));
}

TEST(RTable, TriangularWithUnitDiagonal)
{
    for (unsigned k = 0; k <= 3; ++k) {
        RTable t(k, Rational(2, 7), 10);
        for (long n = -10; n <= 10; ++n) {
            for (unsigned j = 0; j <= k; ++j) {
                EXPECT_EQ(t.r(n, j, j), Rational(1));
                for (unsigned l = 0; l < j; ++l) {
                    EXPECT_EQ(t.r(n, j, l), Rational(0));
                }
            }
        }
    }
}

TEST(RTable, ConsistentWithRhoTable)
{
    for (unsigned k = 0; k <= 3; ++k) {
        for (const Rational &g : {half, Rational(-5, 3), Rational(4, 9)}) {
            EXPECT_TRUE(check_rho_r_consistency(RhoTable(k, g, 8), RTable(k, g, 8)));
        }
    }
    // negative control: the table built with the opposite sign is inconsistent
    EXPECT_FALSE(check_rho_r_consistency(RhoTable(2, half, 4), RTable(2, half, 4, -1)));
}

TEST(RTable, IntegralSpanMembership)
{
    // Each r_{g+n,j}^{(k,l)} is an integer combination of products of at most
    // l-j factors 1/(g+m); with g = a/b, multiplying by (prod (a+bm))^{l-j} clears it.
    for (const Rational &g : {half, Rational(-2, 3), Rational(5, 4)}) {
        Integer a = g.numerator(), b = g.denominator();
        unsigned k = 3;
        RTable t(k, g, 7);
        for (long n = 1; n <= 7; ++n) {
            Integer up = 1, down = 1;
            for (long m = 1; m <= n; ++m) {
                up *= a + b * m;
            }
            for (long m = 0; m <= n - 1; ++m) {
                down *= a - b * m;
            }
            for (unsigned j = 0; j <= k; ++j) {
                for (unsigned l = j; l <= k; ++l) {
                    Rational cu = t.r(n, j, l) * Rational(up).pow(static_cast<long>(l - j));
                    Rational cd = t.r(-n, j, l) * Rational(down).pow(static_cast<long>(l - j));
                    EXPECT_TRUE(cu.is_integer()) << g << " n=" << n << " j=" << j << " l=" << l << " " << cu;
                    EXPECT_TRUE(cd.is_integer()) << g << " n=-" << n << " j=" << j << " l=" << l << " " << cd;
                }
            }
        }
    }
}

TEST(RTable, CacheExtendsMonotonically)
{
    auto a = cached_r_table(2, Rational(3, 8), 5);
    auto b = cached_r_table(2, Rational(3, 8), 12);
    EXPECT_GE(b->n_max(), 12);
    EXPECT_EQ(a->r(5, 0, 2), b->r(5, 0, 2));
    EXPECT_EQ(b->r(12, 1, 2), RTable(2, Rational(3, 8), 12).r(12, 1, 2));
}

TEST(RTable, ArchimedeanAndDenominatorGrowth)
{
    for (int dir : {1, -1}) {
        RTableGrowth g = r_table_growth(2, half, 200, dir);
        EXPECT_TRUE(g.size_fit.bounded) << g.size_fit.front_slope << " " << g.size_fit.back_slope;
        EXPECT_TRUE(g.denominator_fit.bounded) << g.denominator_fit.front_slope << " " << g.denominator_fit.back_slope;
    }
}

TEST(RTable, PadicLimsup)
{
    // p^{-vmin/n} <= exp(8 log n / n), i.e. (-vmin/n) log p <= 8 log(n)/n
    PadicContext ctx(3);
    long n = 500;
    for (int dir : {1, -1}) {
        RTableGrowth g = r_table_growth(2, half, n, dir, &ctx);
        Rational vmin = g.min_valuation.back().second.value();
        Rational lhs = -vmin / Rational(n) * log_bracket(Rational(3)).upper;
        EXPECT_LE(lhs, log_tolerance(n)) << "vmin=" << vmin;
    }
}

TEST(Injectivity, CertificateOnFixedSeries)
{
    Series s({Rational(1, 2), Rational(2, 3)});
    s.add_term(MultiIndex{0, 0}, MultiIndex{0, 0}, 3);
    s.add_term(MultiIndex{0, 0}, MultiIndex{1, 2}, -1);
    s.add_term(MultiIndex{2, 1}, MultiIndex{2, 0}, Rational(5, 2));
    auto cert = injectivity_certificate(s);
    EXPECT_TRUE(cert.certified());
    EXPECT_EQ(cert.entries.size(), 2u);
    EXPECT_FALSE(injectivity_certificate(Series({half})).certified());
}

TEST(Injectivity, NonzeroImageOfNonzeroSeries)
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 40; ++t) {
        Series s = random_series(rng, {Rational(-1, 2), Rational(3, 5)}, t % 2 ? Orthant::negative : Orthant::positive);
        if (s.is_zero()) {
            continue;
        }
        EXPECT_FALSE(laplace_series(s).series.is_zero());
        EXPECT_TRUE(injectivity_certificate(s).certified());
    }
}
