#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "slag/jets.hpp"
#include "test_support.hpp"

using namespace slag;
using namespace slag::jets;
using slag::test::random_jet;

namespace {

using RJet = Jet<Rational>;
using FJet = Jet<double>;

MultiIndex mi(std::array<std::uint8_t, 6> e)
{
    return MultiIndex(e);
}

RJet var(Var v, int order)
{
    return RJet::variable(v, order);
}

RJet one(int order)
{
    return RJet::constant(Rational(1), order);
}

} // namespace

TEST(MultiIndex, GradedLexOrder)
{
    EXPECT_LT(MultiIndex{}, MultiIndex::unit(Var::x1));
    EXPECT_LT(MultiIndex::unit(Var::x1), MultiIndex::unit(Var::x2));
    EXPECT_LT(MultiIndex::unit(Var::y3), MultiIndex::unit(Var::x1, 2));
    EXPECT_LT(mi({2, 0, 0, 0, 0, 0}), mi({1, 1, 0, 0, 0, 0}));
    EXPECT_FALSE(mi({1, 1, 0, 0, 0, 0}) < mi({1, 1, 0, 0, 0, 0}));
}

TEST(JetArith, ProductOfBinomials)
{
    const RJet x = var(Var::x1, 2);
    const RJet p = (one(2) + x) * (one(2) - x);
    RJet expected(2);
    expected.set(MultiIndex{}, 1);
    expected.set(MultiIndex::unit(Var::x1, 2), -1);
    EXPECT_EQ(p, expected);
}

TEST(JetArith, SelfDivisionIsOne)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const RJet a = random_jet(rng, 4, 8, true);
        EXPECT_EQ(a / a, one(4));
    }
}

TEST(JetArith, GeometricSeries)
{
    const RJet q = one(3) / (one(3) - var(Var::x2, 3));
    for (int k = 0; k <= 3; ++k)
        EXPECT_EQ(q.coeff(MultiIndex::unit(Var::x2, k)), Rational(1));
    EXPECT_EQ(q.size(), 4u);
    // multiply back
    EXPECT_EQ(q * (one(3) - var(Var::x2, 3)), one(3));
}

TEST(JetArith, IncompatibleJetsRejected)
{
    EXPECT_THROW(var(Var::x1, 2) + var(Var::x1, 3), JetError);
    RJet::Point shifted{};
    shifted[0] = 1;
    EXPECT_THROW(RJet::variable(Var::x1, 2) * RJet::variable(Var::x1, 2, shifted), JetError);
    EXPECT_THROW(one(2) / var(Var::x1, 2), DomainError);
}

TEST(JetArith, JetArithDispatch)
{
    const RJet a = one(2) + var(Var::x1, 2);
    const RJet b = one(2) - var(Var::y2, 2);
    EXPECT_EQ(jet_arith(a, b, ArithOp::add), a + b);
    EXPECT_EQ(jet_arith(a, b, ArithOp::sub), a - b);
    EXPECT_EQ(jet_arith(a, b, ArithOp::mul), a * b);
    EXPECT_EQ(jet_arith(a, b, ArithOp::div) * b, a);
}

TEST(JetArith, RingAxiomsExact)
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const RJet a = random_jet(rng, 4, 6);
        const RJet b = random_jet(rng, 4, 6);
        const RJet c = random_jet(rng, 4, 6);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * b, b * a);
    }
}

TEST(JetArith, ProductDependsOnlyOnLowerDegrees)
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const RJet a = random_jet(rng, 5, 10);
        const RJet b = random_jet(rng, 5, 10);
        for (int d = 0; d <= 5; ++d)
            ASSERT_EQ(truncate(a * b, d), truncate(a, d) * truncate(b, d));
    }
}

TEST(JetElementary, SqrtOfOnePlusX)
{
    const RJet a = one(2) + var(Var::x1, 2);
    const RJet s = jets::sqrt(a);
    RJet expected(2);
    expected.set(MultiIndex{}, 1);
    expected.set(MultiIndex::unit(Var::x1), Rational(1, 2));
    expected.set(MultiIndex::unit(Var::x1, 2), Rational(-1, 8));
    EXPECT_EQ(s, expected);
    EXPECT_EQ(s * s, a);
}

TEST(JetElementary, ExpOfZeroIsOne)
{
    EXPECT_EQ(jets::exp(RJet(4)), one(4));
    EXPECT_EQ(jets::exp(FJet(4)), FJet::constant(1.0, 4));
}

TEST(JetElementary, SinMatchesTaylorOracle)
{
    const RJet s = jets::sin(var(Var::x2, 3));
    // termwise oracle: sum_k (-1)^k x^(2k+1)/(2k+1)!
    RJet oracle(3);
    Rational fact = 1;
    for (int n = 1; n <= 3; ++n) {
        fact *= n;
        if (n % 2 == 1)
            oracle.set(MultiIndex::unit(Var::x2, n), Rational((n % 4 == 1) ? 1 : -1) / fact);
    }
    EXPECT_EQ(s, oracle);
    EXPECT_EQ(s.coeff(MultiIndex::unit(Var::x2, 3)), Rational(-1, 6));
}

TEST(JetElementary, ExpLogInverseInFloatMode)
{
    std::mt19937 rng(5);
    const FJet a = slag::test::to_float(random_jet(rng, 5, 12, true)) * 0.5 + 1.0;
    const FJet back = jets::exp(jets::log(a));
    EXPECT_LT((back - a).max_abs_coeff(), 1e-12);
}

TEST(JetElementary, CosSquaredPlusSinSquared)
{
    std::mt19937 rng(11);
    const RJet t = random_jet(rng, 5, 10) - random_jet(rng, 5, 10).constant_term();
    const RJet a = t - t.constant_term();
    const RJet c = jets::cos(a);
    const RJet s = jets::sin(a);
    EXPECT_EQ(c * c + s * s, one(5));
}

TEST(JetElementary, PowRational)
{
    const RJet a = RJet::constant(Rational(4), 3) + var(Var::y1, 3);
    const RJet r = pow_rational(a, Rational(3, 2));
    EXPECT_EQ(r.constant_term(), Rational(8));
    EXPECT_EQ(r * r, a * a * a);
    const RJet inv = pow_rational(a, Rational(-2));
    EXPECT_EQ(inv * a * a, one(3));
}

TEST(JetElementary, DomainAndExactnessErrors)
{
    EXPECT_THROW(jets::log(RJet::constant(Rational(-1), 2)), DomainError);
    EXPECT_THROW(jets::sqrt(var(Var::x1, 2)), DomainError);
    EXPECT_THROW(jets::exp(one(2)), InexactError);
    EXPECT_THROW(jets::sqrt(RJet::constant(Rational(2), 2)), InexactError);
    EXPECT_NO_THROW(jets::sqrt(FJet::constant(2.0, 2)));
}

TEST(JetPartial, Basics)
{
    const RJet p = var(Var::x1, 3) * var(Var::x2, 3);
    EXPECT_EQ(partial(p, Var::x1), var(Var::x2, 2));
    EXPECT_TRUE(partial(p, Var::y1).is_zero());
    EXPECT_EQ(partial(p, Var::y1).order(), 2);
    EXPECT_THROW(partial(one(0), Var::x1), JetError);
}

TEST(JetPartial, LeibnizRule)
{
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const RJet a = random_jet(rng, 5, 10);
        const RJet b = random_jet(rng, 5, 10);
        for (int v = 0; v < num_vars; ++v) {
            const Var var = static_cast<Var>(v);
            const RJet lhs = partial(a * b, var);
            const RJet rhs = partial(a, var) * truncate(b, 4) + truncate(a, 4) * partial(b, var);
            ASSERT_EQ(lhs, rhs);
        }
    }
}

TEST(JetSlices, SliceAndShiftRoundTrip)
{
    std::mt19937 rng(8);
    const RJet a = random_jet(rng, 5, 20);
    RJet rebuilt(5);
    for (int k = 0; k <= 5; ++k)
        rebuilt += shift(slice(a, Var::y2, k), Var::y2, k, 5);
    EXPECT_EQ(rebuilt, a);
    EXPECT_THROW(shift(truncate(slice(a, Var::y2, 1), 2), Var::y2, 1, 5), JetError);
}

TEST(HolomorphicExtend, Square)
{
    const ComplexJet<Rational> z = holomorphic_extend(var(Var::x1, 2) * var(Var::x1, 2));
    RJet re(2), im(2);
    re.set(MultiIndex::unit(Var::x1, 2), 1);
    re.set(MultiIndex::unit(Var::y1, 2), -1);
    im.set(MultiIndex::unit(Var::x1) + MultiIndex::unit(Var::y1), 2);
    EXPECT_EQ(z.re, re);
    EXPECT_EQ(z.im, im);
}

TEST(HolomorphicExtend, ConstantAndProduct)
{
    const auto c = holomorphic_extend(RJet::constant(Rational(5, 3), 3));
    EXPECT_EQ(c.re, RJet::constant(Rational(5, 3), 3));
    EXPECT_TRUE(c.im.is_zero());

    // (x2 + i y2)(x3 + i y3)
    const auto z = holomorphic_extend(var(Var::x2, 2) * var(Var::x3, 2));
    RJet re(2), im(2);
    re.set(MultiIndex::unit(Var::x2) + MultiIndex::unit(Var::x3), 1);
    re.set(MultiIndex::unit(Var::y2) + MultiIndex::unit(Var::y3), -1);
    im.set(MultiIndex::unit(Var::x2) + MultiIndex::unit(Var::y3), 1);
    im.set(MultiIndex::unit(Var::x3) + MultiIndex::unit(Var::y2), 1);
    EXPECT_EQ(z.re, re);
    EXPECT_EQ(z.im, im);
}

TEST(HolomorphicExtend, CauchyRiemannAndRestriction)
{
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
        const RJet f = random_jet(rng, 5, 15, false, 3);
        const auto z = holomorphic_extend(f);
        for (int k = 0; k < 3; ++k) {
            ASSERT_EQ(partial(z.re, x_var(k)), partial(z.im, y_var(k)));
            ASSERT_EQ(partial(z.re, y_var(k)), -partial(z.im, x_var(k)));
        }
        ASSERT_EQ(restrict_zero(z.re, {Var::y1, Var::y2, Var::y3}), f);
        ASSERT_TRUE(restrict_zero(z.im, {Var::y1, Var::y2, Var::y3}).is_zero());
    }
}

TEST(HolomorphicExtend, RejectsYDependence)
{
    EXPECT_THROW(holomorphic_extend(var(Var::y1, 2)), JetError);
}

TEST(Det3, IdentityAndDiagonal)
{
    JetMatrix<Rational> m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = RJet::constant(Rational(i == j ? 1 : 0), 3);
    EXPECT_EQ(det3_jet(m), one(3));
    m[0][0] = one(3) + var(Var::x1, 3);
    EXPECT_EQ(det3_jet(m), one(3) + var(Var::x1, 3));
}

TEST(Det3, MatchesCofactorOracle)
{
    std::mt19937 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        JetMatrix<Rational> m;
        for (auto& row : m)
            for (auto& e : row)
                e = random_jet(rng, 4, 6);
        // cofactor expansion along the second column
        auto minor = [&](int r, int c) {
            int rows[2], cols[2], ri = 0, ci = 0;
            for (int i = 0; i < 3; ++i) {
                if (i != r)
                    rows[ri++] = i;
                if (i != c)
                    cols[ci++] = i;
            }
            return m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
        };
        RJet oracle(4);
        for (int r = 0; r < 3; ++r) {
            const RJet term = m[r][1] * minor(r, 1);
            if ((r + 1) % 2 == 0)
                oracle += term;
            else
                oracle -= term;
        }
        ASSERT_EQ(det3_jet(m), oracle);
    }
}

TEST(JetDump, GradedLexText)
{
    const RJet a = one(2) + var(Var::y1, 2) * Rational(1, 2) + var(Var::x1, 2) * var(Var::x2, 2);
    EXPECT_EQ(to_text(a), "(0,0,0,0,0,0) : 1\n"
                          "(0,0,0,1,0,0) : 1/2\n"
                          "(1,1,0,0,0,0) : 1\n");
}
