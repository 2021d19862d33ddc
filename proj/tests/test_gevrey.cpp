#include <gtest/gtest.h>

#include <laplace/duality.hpp>
#include <laplace/gevrey.hpp>
#include <laplace/padic_estimates.hpp>

using namespace laplace;

namespace
{

std::map<MultiIndex, Rational> family(long n_max, Rational (*a)(long))
{
    std::map<MultiIndex, Rational> out;
    for (long n = 0; n <= n_max; ++n) {
        out[MultiIndex{n}] = a(n);
    }
    return out;
}

Rational inv_fact(long n) { return Rational(factorial(n)).inverse(); }
Rational fact_sq(long n) { return Rational(Integer(factorial(n) * factorial(n))); }

} // namespace

TEST(Gevrey, ExponentialIsOrderMinusOne)
{
    GevreyCertificate c = certify_gevrey(family(60, inv_fact), -1, 60);
    EXPECT_TRUE(c.passed) << c.detail;
    EXPECT_EQ(c.size_slope, Rational(0));
    EXPECT_EQ(c.denom_slope, Rational(0));
}

TEST(Gevrey, ReciprocalFactorialsAreNotOrderZero)
{
    // lcd{1/k! : k <= n} = n!, whose logarithm grows like n log n; the
    // denominator fit sees the slope keep rising.
    GevreyCertificate c = certify_gevrey(family(100, inv_fact), 0, 100);
    EXPECT_TRUE(c.size_fit.bounded);
    EXPECT_FALSE(c.denom_fit.bounded);
    EXPECT_FALSE(c.passed);
    EXPECT_EQ(c.detail, "denominator slope rises across the window");
}

TEST(Gevrey, FactorialSquaresFailOnSize)
{
    GevreyCertificate c = certify_gevrey(family(60, fact_sq), 0, 60);
    EXPECT_FALSE(c.size_fit.bounded);
    EXPECT_FALSE(c.passed);
    EXPECT_TRUE(certify_gevrey(family(60, fact_sq), 2, 60).passed);
}

TEST(Gevrey, RescalingConsistency)
{
    auto a = family(50, inv_fact);
    for (long sp : {-2L, -1L, 1L}) {
        std::map<MultiIndex, Rational> b;
        for (const auto &[alpha, v] : a) {
            b[alpha] = v * Rational(abs_factorial(alpha)).pow(-sp);
        }
        for (long s : {-1L, 0L, 1L}) {
            GevreyCertificate ca = certify_gevrey(a, s, 50), cb = certify_gevrey(b, s - sp, 50);
            EXPECT_EQ(ca.passed, cb.passed);
            EXPECT_EQ(ca.size_slope, cb.size_slope);
            EXPECT_EQ(ca.denom_slope, cb.denom_slope);
        }
    }
}

TEST(Gevrey, Preconditions)
{
    EXPECT_THROW(certify_gevrey(family(10, inv_fact), 0, 3), precondition_error);
    EXPECT_THROW(certify_gevrey(family(10, inv_fact), 0, 5), precondition_error);
    EXPECT_THROW(certify_gevrey(std::map<MultiIndex, Rational>{}, 0, 10), precondition_error);
    NgaElement bad{{NgaSummand{family(5, inv_fact), {Rational(2)}, {0}, Orthant::positive}}};
    EXPECT_THROW(transform_order_shift(bad, 0, 10), precondition_error);
}

TEST(OrderShift, ExponentialImage)
{
    NgaElement e{{NgaSummand{family(100, inv_fact), {Rational(1, 2)}, {0}, Orthant::positive}}};
    OrderShiftReport r = transform_order_shift(e, -1, 100);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.target_order, 0);
    // image coefficients are (1/n!) (1/2)_{n+1}
    auto coords = image_coordinates(r.images.at(0));
    ASSERT_EQ(coords.size(), 1u);
    for (long n = 0; n <= 100; n += 10) {
        EXPECT_EQ(coords.begin()->second.at(MultiIndex{-n}), inv_fact(n) * pochhammer(Rational(1, 2), n + 1));
    }
}

TEST(OrderShift, GeometricImageInInverseDirection)
{
    std::map<MultiIndex, Rational> geo;
    for (long n = 0; n <= 100; ++n) {
        geo[MultiIndex{-n}] = 1;
    }
    NgaElement e{{NgaSummand{geo, {Rational(1, 2)}, {0}, Orthant::negative}}};
    OrderShiftReport r = transform_order_shift(e, 0, 100);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.target_order, -1);
    auto coords = image_coordinates(r.images.at(0));
    for (long n = 1; n <= 6; ++n) {
        // Gamma(1/2 - n + 1)/Gamma(1/2) = 1 / ((-1/2)(-3/2)...(1/2 - n + 1))
        Rational want = 1;
        for (long t = 1; t < n; ++t) {
            want /= Rational(1, 2) - Rational(t);
        }
        EXPECT_EQ(coords.begin()->second.at(MultiIndex{n}), want);
    }
}

TEST(OrderShift, LogTermsCertifyCoordinatewise)
{
    // The constant coordinate of the log-free part carries squared lcm-type
    // denominators; its fitted slope only settles near 3.1 beyond about 150 terms.
    NgaElement e{{NgaSummand{family(200, inv_fact), {Rational(-1, 3)}, {2}, Orthant::positive}}};
    OrderShiftReport r = transform_order_shift(e, -1, 200);
    EXPECT_TRUE(r.passed());
    // log^2: 1;  log^1: 1, G1;  log^0: 1, G1, G2
    EXPECT_EQ(r.image.at(0).size(), 6u);
}

TEST(OrderShift, TwoTransformsReturnToTheSourceOrder)
{
    NgaElement e{{NgaSummand{family(100, inv_fact), {Rational(1, 2)}, {0}, Orthant::positive}}};
    OrderShiftReport first = transform_order_shift(e, -1, 100);
    ASSERT_TRUE(first.passed());
    auto coords = image_coordinates(first.images.at(0));
    NgaElement back{{NgaSummand{coords.begin()->second, detail::reflected({Rational(1, 2)}), {0}, Orthant::negative}}};
    OrderShiftReport second = transform_order_shift(back, first.target_order, 100);
    EXPECT_TRUE(second.passed());
    EXPECT_EQ(second.target_order, -1);
}

TEST(OrderShift, EmptyAndZeroElements)
{
    OrderShiftReport r = transform_order_shift(NgaElement{}, 0, 10);
    EXPECT_TRUE(r.passed());
    NgaElement z{{NgaSummand{{}, {Rational(1, 2)}, {0}, Orthant::positive}}};
    EXPECT_TRUE(transform_order_shift(z, 0, 10).passed());
}

TEST(OrderShift, ImageDenominatorsMatchLcdBound)
{
    // (1/2)_{n+1}/n! : numerator parameter 1/2, denominator parameter 1
    EXPECT_TRUE(lcd_growth_check({Rational(1, 2)}, {Rational(1)}, 100).passed);
    EXPECT_TRUE(lcd_growth_check({Rational(1, 2)}, {Rational(1, 3)}, 200).passed);
}

TEST(Holonomicity, Probe)
{
    LogLaurentSeries<Rational> exp0({Rational(1, 2)});
    for (long n = 0; n <= 12; ++n) {
        exp0.add_term(MultiIndex{n}, MultiIndex{0}, inv_fact(n));
    }
    WeylOperator x = WeylOperator::x(1, 0), d = WeylOperator::dx(1, 0), one = WeylOperator::constant(1, 1);
    Window w{{Rational(1, 2)}, Orthant::positive, {12}};
    // x^{1/2} e^x is killed by x D - x - 1/2
    WeylOperator good = x * d - x - one * Rational(1, 2);
    WeylOperator wrong = d - one;
    HolonomicityProbe p = holonomicity_probe(exp0, {good, wrong}, w);
    ASSERT_EQ(p.annihilates.size(), 2u);
    EXPECT_TRUE(p.annihilates[0]);
    EXPECT_FALSE(p.annihilates[1]);
    EXPECT_FALSE(p.residual[1].empty());

    DualityPair h = hypergeometric_pair(Rational(2, 5), 15);
    EXPECT_TRUE(holonomicity_probe(h.solution, {h.op}, h.window).annihilates.at(0));
}
