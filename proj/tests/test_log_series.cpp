#include <gtest/gtest.h>

#include <random>

#include <laplace/log_series.hpp>
#include <laplace/matrix_series.hpp>

using namespace laplace;

namespace
{

using Series = LogLaurentSeries<Rational>;

Series random_series(std::mt19937_64 &rng, std::vector<Rational> gamma, Orthant o)
{
    Series s(gamma, o);
    std::size_t d = gamma.size();
    for (int t = 0; t < 6; ++t) {
        MultiIndex a(d), k(d);
        for (std::size_t i = 0; i < d; ++i) {
            long v = static_cast<long>(rng() % 4);
            a[i] = o == Orthant::positive ? v : -v;
            k[i] = static_cast<long>(rng() % 3);
        }
        s.add_term(a, k, Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1));
    }
    return s;
}

} // namespace

TEST(LogSeries, DeriveExamples)
{
    Series s({Rational(1, 2)});
    s.add_term(MultiIndex{0}, MultiIndex{0}, 1);
    Series ds = derive(s, 0);
    EXPECT_EQ(ds.size(), 1u);
    EXPECT_EQ(ds.coefficient_at({Rational(-1, 2)}, MultiIndex{0}), Rational(1, 2));

    Series l({Rational(1, 2)});
    l.add_term(MultiIndex{0}, MultiIndex{1}, 1);
    Series dl = derive(l, 0);
    EXPECT_EQ(dl.coefficient_at({Rational(-1, 2)}, MultiIndex{1}), Rational(1, 2));
    EXPECT_EQ(dl.coefficient_at({Rational(-1, 2)}, MultiIndex{0}), Rational(1));
    EXPECT_EQ(dl.size(), 2u);

    Series two({Rational(1, 2), Rational(1, 3)});
    two.add_term(MultiIndex{0, 0}, MultiIndex{0, 0}, 2);
    two.add_term(MultiIndex{3, 0}, MultiIndex{1, 0}, 5);
    Series d2 = derive(two, 1);
    EXPECT_EQ(d2.coefficient_at({Rational(1, 2), Rational(-2, 3)}, MultiIndex{0, 0}), Rational(2, 3));
    EXPECT_EQ(d2.coefficient_at({Rational(7, 2), Rational(-2, 3)}, MultiIndex{1, 0}), Rational(5, 3));
    EXPECT_THROW(derive(two, 2), precondition_error);
}

TEST(LogSeries, MonomialMultiplication)
{
    Series s({Rational(1, 2), Rational(1, 3)});
    s.add_term(MultiIndex{0, 0}, MultiIndex{0, 0}, 1);
    Series m = monomial_mul(s, MultiIndex{1, 0});
    EXPECT_EQ(m.coefficient(MultiIndex{1, 0}, MultiIndex{0, 0}), Rational(1));

    Series empty({Rational(1, 2), Rational(1, 3)});
    EXPECT_TRUE(monomial_mul(empty, MultiIndex{4, 1}).is_zero());

    Series lin({Rational(1, 2), Rational(1, 3)});
    lin.add_term(MultiIndex{1, 0}, MultiIndex{0, 0}, 2);
    lin.add_term(MultiIndex{0, 1}, MultiIndex{0, 0}, 3);
    Series p = monomial_mul(lin, MultiIndex{1, 1});
    EXPECT_EQ(p.coefficient(MultiIndex{2, 1}, MultiIndex{0, 0}), Rational(2));
    EXPECT_EQ(p.coefficient(MultiIndex{1, 2}, MultiIndex{0, 0}), Rational(3));
    EXPECT_EQ(p.size(), 2u);
    EXPECT_THROW(monomial_mul(lin, MultiIndex{-1, 0}), precondition_error);
}

TEST(LogSeries, MixedOrthantRejected)
{
    Series s({Rational(1, 2), Rational(1, 3)});
    EXPECT_THROW(s.add_term(MultiIndex{1, -1}, MultiIndex{0, 0}, 1), precondition_error);
    Series n({Rational(1, 2)}, Orthant::negative);
    EXPECT_THROW(n.add_term(MultiIndex{1}, MultiIndex{0}, 1), precondition_error);
    EXPECT_THROW(s.add_term(MultiIndex{0, 0}, MultiIndex{-1, 0}, 1), precondition_error);
}

TEST(LogSeries, ReferenceMovesWhenDerivationLeavesOrthant)
{
    Series s({Rational(1, 2)});
    s.add_term(MultiIndex{0}, MultiIndex{0}, 1);
    Series d = derive(derive(s, 0), 0);
    EXPECT_EQ(d.gamma(), std::vector<Rational>{Rational(-3, 2)});
    EXPECT_EQ(d.coefficient(MultiIndex{0}, MultiIndex{0}), Rational(-1, 4));
    EXPECT_EQ(d, d.with_reference({Rational(-5, 2)}));
    EXPECT_THROW(d.with_reference({Rational(1, 2)}), precondition_error);
}

TEST(LogSeries, MixedPartialsCommute)
{
    std::mt19937_64 rng(17);
    for (Orthant o : {Orthant::positive, Orthant::negative}) {
        for (int t = 0; t < 50; ++t) {
            Series s = random_series(rng, {Rational(1, 2), Rational(-2, 5), Rational(4, 3)}, o);
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 3; ++j) {
                    EXPECT_EQ(derive(derive(s, i), j), derive(derive(s, j), i));
                }
            }
        }
    }
}

TEST(LogSeries, WeylRelationOnSeries)
{
    std::mt19937_64 rng(23);
    for (Orthant o : {Orthant::positive, Orthant::negative}) {
        for (int t = 0; t < 50; ++t) {
            Series s = random_series(rng, {Rational(3, 7), Rational(-1, 2)}, o);
            for (std::size_t i = 0; i < 2; ++i) {
                MultiIndex e = MultiIndex::unit(2, i);
                EXPECT_EQ(derive(monomial_mul(s, e), i) - monomial_mul(derive(s, i), e), s);
            }
        }
    }
}

TEST(LogSeries, WindowClassification)
{
    Window w{{Rational(1, 2)}, Orthant::positive, {3}};
    EXPECT_TRUE(w.contains({Rational(7, 2)}));
    EXPECT_FALSE(w.contains({Rational(9, 2)}));
    EXPECT_TRUE(w.known_zero({Rational(-1, 2)}));
    EXPECT_FALSE(w.known_zero({Rational(1, 2)}));
    Window n{{Rational(1, 2)}, Orthant::negative, {2}};
    EXPECT_TRUE(n.contains({Rational(-3, 2)}));
    EXPECT_FALSE(n.contains({Rational(-5, 2)}));
    EXPECT_TRUE(n.known_zero({Rational(3, 2)}));
}

TEST(MatrixSeries, ExpandScalar)
{
    MatrixSeries m({Matrix{{Rational(1, 2)}}}, 1);
    m.add_term(MultiIndex{0}, Matrix{{Rational(1)}});
    auto parts = expand_xLambda(m, 4);
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0].gamma(), std::vector<Rational>{Rational(1, 2)});
    EXPECT_EQ(parts[0].size(), 1u);
    EXPECT_EQ(parts[0].coefficient(MultiIndex{0}, MultiIndex{0}), Matrix{{Rational(1)}});
}

TEST(MatrixSeries, ExpandJordanBlock)
{
    Matrix lam{{Rational(1, 2), Rational(1)}, {Rational(0), Rational(1, 2)}};
    MatrixSeries m({lam}, 2);
    m.add_term(MultiIndex{0}, Matrix::identity(2));
    auto parts = expand_xLambda(m, 4);
    ASSERT_EQ(parts.size(), 1u);
    // exp(N log x) with N^2 = 0: I + N log x
    Matrix N = lam - Matrix::scalar(2, Rational(1, 2));
    EXPECT_EQ(parts[0].coefficient(MultiIndex{0}, MultiIndex{0}), Matrix::identity(2));
    EXPECT_EQ(parts[0].coefficient(MultiIndex{0}, MultiIndex{1}), N);
    EXPECT_EQ(parts[0].size(), 2u);
    EXPECT_THROW(expand_xLambda(m, 0), precondition_error);
}

TEST(MatrixSeries, ExpandDiagonal)
{
    MatrixSeries m({Matrix::diagonal({Rational(1, 2), Rational(1, 3)})}, 2);
    m.add_term(MultiIndex{0}, Matrix::identity(2));
    auto parts = expand_xLambda(m, 2);
    ASSERT_EQ(parts.size(), 2u);
    std::map<Rational, Matrix> by_exponent;
    for (const auto &p : parts) {
        ASSERT_EQ(p.size(), 1u);
        by_exponent.emplace(p.gamma()[0], p.coefficient(MultiIndex{0}, MultiIndex{0}));
    }
    EXPECT_EQ(by_exponent.at(Rational(1, 2)), Matrix::diagonal({Rational(1), Rational(0)}));
    EXPECT_EQ(by_exponent.at(Rational(1, 3)), Matrix::diagonal({Rational(0), Rational(1)}));
}

TEST(MatrixSeries, DerivationCommutesWithExpansion)
{
    Matrix lam{{Rational(1, 2), Rational(1)}, {Rational(0), Rational(1, 2)}};
    MatrixSeries m({lam}, 2);
    m.add_term(MultiIndex{0}, Matrix{{Rational(1), Rational(2)}, {Rational(-1), Rational(3)}});
    m.add_term(MultiIndex{2}, Matrix{{Rational(1, 3), Rational(0)}, {Rational(5), Rational(1)}});
    auto lhs = expand_xLambda(derive(m, 0), 4);
    auto rhs = expand_xLambda(m, 4);
    ASSERT_EQ(lhs.size(), rhs.size());
    EXPECT_EQ(lhs[0], derive(rhs[0], 0));
}

TEST(MatrixSeries, ConstructorChecks)
{
    // non-commuting
    Matrix a{{Rational(1, 2), Rational(1)}, {Rational(0), Rational(1, 3)}};
    Matrix b{{Rational(1, 2), Rational(0)}, {Rational(1), Rational(1, 3)}};
    EXPECT_THROW(MatrixSeries({a, b}, 2), precondition_error);
    // integral eigenvalue
    EXPECT_THROW(MatrixSeries({Matrix::diagonal({Rational(1), Rational(1, 2)})}, 2), precondition_error);
    // irrational eigenvalues: x^2 - 2
    EXPECT_THROW(MatrixSeries({Matrix{{Rational(0), Rational(2)}, {Rational(1), Rational(0)}}}, 2), std::exception);
}
