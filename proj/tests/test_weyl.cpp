#include <gtest/gtest.h>

#include <random>

#include <laplace/duality.hpp>
#include <laplace/weyl.hpp>

using namespace laplace;

namespace
{

using Series = LogLaurentSeries<Rational>;

WeylOperator X(std::size_t d = 1, std::size_t i = 0) { return WeylOperator::x(d, i); }
WeylOperator D(std::size_t d = 1, std::size_t i = 0) { return WeylOperator::dx(d, i); }
WeylOperator one(std::size_t d = 1) { return WeylOperator::constant(d, 1); }

WeylOperator random_operator(std::mt19937_64 &rng, std::size_t d)
{
    WeylOperator op(d);
    for (int t = 0; t < 3; ++t) {
        MultiIndex xe(d), de(d);
        for (std::size_t i = 0; i < d; ++i) {
            xe[i] = static_cast<long>(rng() % 3);
            de[i] = static_cast<long>(rng() % 3);
        }
        op.add_term(xe, de, Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 2) + 1));
    }
    return op;
}

Series monomial(const Rational &g, long m)
{
    Series s({g});
    s.add_term(MultiIndex{m}, MultiIndex{0}, 1);
    return s;
}

} // namespace

TEST(Weyl, NormalOrdering)
{
    EXPECT_EQ(D() * X(), X() * D() + one());
    EXPECT_EQ(X() * D(), WeylOperator::monomial(MultiIndex{1}, MultiIndex{1}));
    EXPECT_EQ(D() * D() * X(), X() * D() * D() + D() * Rational(2));
    // different variables commute
    EXPECT_EQ(D(2, 0) * X(2, 1), X(2, 1) * D(2, 0));
    EXPECT_THROW(X(1) * X(2), precondition_error);
}

TEST(Weyl, NormalOrderingAgreesWithActionOnMonomials)
{
    // D^2 x and x D^2 + 2 D act identically on x^m, m <= 5 (brute force)
    WeylOperator lhs = D() * D() * X(), rhs = X() * D() * D() + D() * Rational(2);
    for (long m = 0; m <= 5; ++m) {
        Series s = monomial(Rational(0), m);
        Series direct = derive(derive(monomial_mul(s, MultiIndex{1}), 0), 0);
        EXPECT_EQ(apply(rhs, s), direct);
        EXPECT_EQ(apply(lhs, s), direct);
    }
}

TEST(Weyl, Associativity)
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 60; ++t) {
        WeylOperator a = random_operator(rng, 2), b = random_operator(rng, 2), c = random_operator(rng, 2);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(FourierLaplace, Generators)
{
    std::vector<Rational> tau{Rational(3)};
    EXPECT_EQ(fourier_laplace(X(), tau), D() * Rational(-1, 3));
    EXPECT_EQ(fourier_laplace(D(), tau), X() * Rational(3));
    EXPECT_EQ(fourier_laplace(X() * D()), -(X() * D()) - one());
    EXPECT_EQ(fourier_laplace(one()), one());
    EXPECT_EQ(fourier_laplace(fourier_laplace(X(), tau), tau), -X());
    EXPECT_EQ(fourier_laplace(fourier_laplace(D(), tau), tau), -D());
    EXPECT_THROW(fourier_laplace(X(), {Rational(0)}), precondition_error);
}

TEST(FourierLaplace, Multiplicative)
{
    std::mt19937_64 rng(9);
    std::vector<Rational> tau{Rational(2), Rational(-1, 3)};
    for (int t = 0; t < 60; ++t) {
        WeylOperator a = random_operator(rng, 2), b = random_operator(rng, 2);
        EXPECT_EQ(fourier_laplace(a * b, tau), fourier_laplace(a, tau) * fourier_laplace(b, tau));
        EXPECT_EQ(fourier_laplace(a + b, tau), fourier_laplace(a, tau) + fourier_laplace(b, tau));
    }
}

TEST(Apply, EulerAndDelegation)
{
    Rational g(1, 2);
    EXPECT_TRUE(apply(X() * D() - WeylOperator::constant(1, g), monomial(g, 0)).is_zero());
    Series l({g});
    l.add_term(MultiIndex{0}, MultiIndex{1}, 1);
    EXPECT_EQ(apply(D(), l), derive(l, 0));
    // F(x D) = -x D - 1 acting on x^{1/2}
    EXPECT_EQ(apply(fourier_laplace(X() * D()), monomial(g, 0)), monomial(g, 0) * Rational(-3, 2));
}

TEST(Apply, ModuleAction)
{
    std::mt19937_64 rng(10);
    for (int t = 0; t < 40; ++t) {
        WeylOperator a = random_operator(rng, 2), b = random_operator(rng, 2);
        Series s({Rational(1, 3), Rational(-1, 2)});
        for (int u = 0; u < 4; ++u) {
            s.add_term(MultiIndex{static_cast<long>(rng() % 3), static_cast<long>(rng() % 3)},
                       MultiIndex{static_cast<long>(rng() % 2), 0}, Rational(static_cast<long>(rng() % 5) + 1));
        }
        EXPECT_EQ(apply(a * b, s), apply(a, apply(b, s)));
    }
}

TEST(Apply, WindowedAndStrict)
{
    DualityPair h = hypergeometric_pair(Rational(1, 3), 6);
    auto res = apply(h.op, h.solution, h.window);
    EXPECT_TRUE(res.valid.is_zero());
    EXPECT_FALSE(res.dropped.is_zero());
    EXPECT_EQ(res.window.radius[0], 5);
    EXPECT_THROW(apply(h.op, h.solution, h.window, true), truncation_overflow);
}

TEST(Apply, MisprintedHypergeometricOperatorFails)
{
    // x D^2 + (gamma+1) D - 1 does not annihilate the series; 1 - gamma is needed.
    Rational g(1, 3);
    DualityPair h = hypergeometric_pair(g, 8);
    WeylOperator wrong = X() * D() * D() + D() * (g + Rational(1)) - one();
    EXPECT_FALSE(apply(wrong, h.solution, h.window).valid.is_zero());
    EXPECT_TRUE(apply(h.op, h.solution, h.window).valid.is_zero());
}

TEST(Parser, InfixForms)
{
    EXPECT_EQ(parse_operator("x1*Dx1^2 + (3/2)*Dx1 - 1"),
              X() * D() * D() + D() * Rational(3, 2) - one());
    EXPECT_EQ(parse_operator("Dx1*x1"), X() * D() + one());
    EXPECT_EQ(parse_operator("x2 - 2*Dx1", 2), X(2, 1) - D(2, 0) * Rational(2));
    EXPECT_EQ(parse_operator("-(x1 + 1)^2"), -(X() * X() + X() * Rational(2) + one()));
    EXPECT_THROW(parse_operator("x1 +"), parse_error);
    EXPECT_THROW(parse_operator("y1"), parse_error);
    EXPECT_THROW(parse_operator("x3", 2), parse_error);
}

TEST(Duality, EulerPair)
{
    DualityPair e = euler_pair(Rational(2, 5));
    DualityReport r = duality_check(e, {Rational(1)});
    EXPECT_TRUE(r.passed()) << r.residual;
    EXPECT_TRUE(r.standard_checked);
    // F(x D - g) = -(x D + 1 + g) annihilates x^{-g-1}
    EXPECT_EQ(fourier_laplace(e.op), -(X() * D()) - WeylOperator::constant(1, Rational(7, 5)));
    EXPECT_TRUE(apply(fourier_laplace(e.op), monomial(Rational(-7, 5), 0)).is_zero());
}

TEST(Duality, HypergeometricAndTensorPairs)
{
    for (const Rational &tau : {Rational(1), Rational(2), Rational(-3, 4)}) {
        DualityPair h = hypergeometric_pair(Rational(-1, 3), 10);
        DualityReport r = duality_check(h, {tau});
        EXPECT_TRUE(r.passed()) << tau << " " << r.residual;
        EXPECT_EQ(r.standard_checked, tau == Rational(1));
        for (const auto &p : tensor_pairs(euler_pair(Rational(1, 2)), hypergeometric_pair(Rational(1, 4), 6))) {
            DualityReport t = duality_check(p, {tau, Rational(1)});
            EXPECT_TRUE(t.passed()) << p.name << " " << t.residual;
        }
    }
    DualityReport z = duality_check(WeylOperator(1), euler_pair(Rational(1, 2)).solution, {Rational(1)},
                                    euler_pair(Rational(1, 2)).window);
    EXPECT_TRUE(z.passed());
}

TEST(Duality, WrongTauIsDetected)
{
    // the image under tau = 1 is not annihilated by F_2(phi)
    DualityPair h = hypergeometric_pair(Rational(2, 7), 10);
    LogLaurentSeries<Rational> img = scalar_series(formal_transform(matrix_series_from_scalar(h.solution), {Rational(1)}));
    auto good = apply(fourier_laplace(h.op, {Rational(1)}), img, reflect_window(h.window));
    auto bad = apply(fourier_laplace(h.op, {Rational(2)}), img, reflect_window(h.window));
    EXPECT_TRUE(good.valid.is_zero());
    EXPECT_FALSE(bad.valid.is_zero());
}
