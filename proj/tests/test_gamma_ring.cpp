#include <gtest/gtest.h>

#include <random>

#include <laplace/gamma_ring.hpp>

#include "numeric_oracle.hpp"

using namespace laplace;

namespace
{

const std::vector<Rational> half{Rational(1, 2)};

GammaPoly G(unsigned j, const std::vector<Rational> &base = half, std::size_t var = 0)
{
    return GammaPoly::generator(base, var, j);
}

GammaPoly random_poly(std::mt19937_64 &rng, const std::vector<Rational> &base)
{
    GammaPoly p(base);
    int terms = static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        GammaMonomial m;
        for (std::size_t v = 0; v < base.size(); ++v) {
            unsigned order = static_cast<unsigned>(rng() % 4);
            if (order > 0) {
                m.emplace_back(Generator{v, order}, static_cast<unsigned>(rng() % 2) + 1);
            }
        }
        p.add_term(m, Rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1));
    }
    return p;
}

} // namespace

TEST(GammaRing, ClosedFormRho)
{
    EXPECT_EQ(rho_closed_form(0, 0, Rational(1, 2)), GammaPoly::constant(1, half));
    EXPECT_EQ(rho_closed_form(2, 2, Rational(1, 2)), GammaPoly::constant(1, half));
    EXPECT_EQ(rho_closed_form(2, 1, Rational(1, 2)), G(1) * Rational(-2));
    EXPECT_EQ(rho_closed_form(3, 1, Rational(1, 2)), G(2) * Rational(-3));
    for (unsigned k = 0; k <= GammaPoly::default_order; ++k) {
        EXPECT_EQ(rho_closed_form(k, k, Rational(1, 2)), GammaPoly::constant(k % 2 ? -1 : 1, half));
    }
    EXPECT_THROW(rho_closed_form(1, 2, Rational(1, 2)), precondition_error);
}

TEST(GammaRing, RingAxioms)
{
    std::mt19937_64 rng(3);
    std::vector<Rational> base{Rational(1, 2), Rational(-2, 3)};
    for (int t = 0; t < 150; ++t) {
        GammaPoly a = random_poly(rng, base), b = random_poly(rng, base), c = random_poly(rng, base);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + b, b + a);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(a * GammaPoly::constant(1, base), a);
    }
}

TEST(GammaRing, NoStoredZeros)
{
    GammaPoly p = G(1) + G(2);
    p -= G(2);
    EXPECT_EQ(p.terms().size(), 1u);
    p -= G(1);
    EXPECT_TRUE(p.is_zero());
}

TEST(GammaRing, Preconditions)
{
    EXPECT_THROW(GammaPoly(std::vector<Rational>{Rational(2)}), precondition_error);
    EXPECT_THROW(GammaPoly::generator(half, 0, 9), precondition_error);
    EXPECT_THROW(G(1) + G(1, {Rational(3, 2)}), precondition_error);
}

TEST(GammaRing, ShiftIsRelabelling)
{
    GammaPoly p = G(1) * G(2) + G(3) * Rational(5);
    GammaPoly moved = gamma_shift(p, 3);
    EXPECT_EQ(moved.base(), std::vector<Rational>{Rational(7, 2)});
    EXPECT_EQ(gamma_shift(moved, -3), p);
    EXPECT_EQ(gamma_shift(gamma_shift(p, 2), 1), gamma_shift(p, 3));
    EXPECT_EQ(gamma_shift(GammaPoly::constant(1, half), 5), GammaPoly::constant(1, {Rational(11, 2)}));
}

TEST(GammaRing, RebaseFunctionalEquation)
{
    // G1(gamma+1) = G1(gamma) + 1/(gamma+1)
    GammaPoly g1_up = GammaPoly::generator({Rational(3, 2)}, 0, 1);
    EXPECT_EQ(rebase(g1_up, half), G(1) + GammaPoly::constant(Rational(2, 3), half));
    // G2(gamma+1) = G2 + 2 G1/(gamma+1)
    GammaPoly g2_up = GammaPoly::generator({Rational(3, 2)}, 0, 2);
    EXPECT_EQ(rebase(g2_up, half), G(2) + G(1) * Rational(4, 3));
    for (long a : {-7L, -1L, 5L}) {
        GammaPoly p = G(1, {Rational(a, 3)}) * G(2, {Rational(a, 3)}) + G(3, {Rational(a, 3)});
        EXPECT_EQ(rebase(rebase(p, {Rational(a + 6, 3)}), {Rational(a, 3)}), p);
    }
}

TEST(GammaRing, RebaseAgreesWithNumericValues)
{
    struct Case {
        Rational from, to;
    };
    for (const auto &c : {Case{Rational(7, 2), Rational(1, 2)}, Case{Rational(1, 2), Rational(7, 2)},
                          Case{Rational(-7, 3), Rational(-1, 3)}, Case{Rational(-3, 2), Rational(1, 2)},
                          Case{Rational(1, 2), Rational(-3, 2)}}) {
        for (unsigned j = 1; j <= 4; ++j) {
            GammaPoly p = G(j, {c.from});
            double want = oracle::g_value(c.from, j);
            double got = oracle::evaluate(rebase(p, {c.to}));
            EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, std::abs(want))) << c.from << "->" << c.to << " j=" << j;
        }
        GammaPoly prod = G(1, {c.from}) * G(1, {c.from}) * G(2, {c.from});
        double want = std::pow(oracle::g_value(c.from, 1), 2) * oracle::g_value(c.from, 2);
        EXPECT_NEAR(oracle::evaluate(rebase(prod, {c.to})), want, 1e-11 * std::max(1.0, std::abs(want)));
    }
}
