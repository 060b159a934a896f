#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slag/dsl.hpp"
#include "slag/hodge.hpp"

using namespace slag;
using namespace slag::hodge;
using dsl::parse;
using families::MetricFamily;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Power series of the modified Bessel function I0.
double bessel_i0(double x)
{
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= (x / 2.0) * (x / 2.0) / (static_cast<double>(k) * k);
        sum += term;
    }
    return sum;
}

MetricFamily diag3(const std::string& a, const std::string& b, const std::string& c)
{
    return MetricFamily::from_upper(3, {parse(a), parse(b), parse(c), parse("0"), parse("0"), parse("0")});
}

MetricFamily bessel_family()
{
    return diag3("exp(-2*t*sin(2*pi*x1))", "exp(t*sin(2*pi*x1))", "exp(t*sin(2*pi*x1))");
}

MetricFamily family2(const std::string& g11, const std::string& g22, const std::string& g12)
{
    return MetricFamily::from_upper(2, {parse(g11), parse(g22), parse(g12)});
}

MetricFamily diag2_family()
{
    return family2("exp(t*cos(2*pi*x1))", "exp(-t*cos(2*pi*x1))", "0");
}

// Constant g12 = 1/4, C = (1 + 0.3 cos 2 pi x2)^2.
MetricFamily shear2_family()
{
    return family2("exp(t*cos(2*pi*x1))", "((1 + 0.3*cos(2*pi*x2))^2 + 1/16)/exp(t*cos(2*pi*x1))", "1/4");
}

// g11 dx1 + g12 dx2 = 2 dx1 + dx2/4 + d(psi), psi = 0.3 t sin(2 pi (x1 + x2)) / (2 pi).
MetricFamily exact_shift2_family()
{
    const std::string p = "0.3*t*cos(2*pi*(x1 + x2))";
    return family2("2 + " + p, "(4*(1 + 0.2*sin(2*pi*x2))^2 + (1/4 + " + p + ")^2)/(2 + " + p + ")",
                   "1/4 + " + p);
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v;
    for (int k = 0; k < n; ++k)
        v.push_back(a + (b - a) * k / (n - 1));
    return v;
}

} // namespace

TEST(PeriodicQuad, ConstantIntegratesToOne)
{
    EXPECT_EQ(periodic_quad(std::vector<double>(16, 1.0), 16), 1.0);
}

TEST(PeriodicQuad, SineVanishesForEveryN)
{
    for (std::size_t n = 2; n <= 33; ++n) {
        std::vector<double> f(n);
        for (std::size_t k = 0; k < n; ++k)
            f[k] = std::sin(two_pi * static_cast<double>(k) / static_cast<double>(n));
        EXPECT_NEAR(periodic_quad(f, n), 0.0, 1e-15) << "n=" << n;
    }
}

TEST(PeriodicQuad, ExpSineMatchesBesselSeries)
{
    const std::size_t n = 64;
    std::vector<double> f(n);
    for (std::size_t k = 0; k < n; ++k)
        f[k] = std::exp(std::sin(two_pi * static_cast<double>(k) / n));
    EXPECT_NEAR(periodic_quad(f, n), bessel_i0(1.0), 1e-12);
    EXPECT_NEAR(bessel_i0(1.0), 1.2660658777520082, 1e-15);
}

TEST(PeriodicQuad, RejectsTooFewSamples)
{
    EXPECT_THROW(periodic_quad({1.0}, 1), DomainError);
    EXPECT_THROW(periodic_quad({1.0, 2.0}, 3), DomainError);
}

TEST(HarmonicBasisDiag3, FlatMetricGivesCoordinateForms)
{
    const auto b = harmonic_basis_diag3(diag3("1", "1", "1"), 0.0);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (double v : b.theta[j][k])
                EXPECT_EQ(v, j == k ? 1.0 : 0.0);
    EXPECT_EQ(b.period_error, 0.0);
    EXPECT_EQ(b.closed_residual, 0.0);
    EXPECT_EQ(b.coclosed_residual, 0.0);
}

TEST(HarmonicBasisDiag3, BesselCoefficientAndPeriods)
{
    const auto b = harmonic_basis_diag3(bessel_family(), 1.0, 64);
    const double i0_2 = bessel_i0(2.0);
    EXPECT_NEAR(i0_2, 2.2795853023360673, 1e-15);
    for (std::size_t p = 0; p < b.grid.size(); ++p) {
        const double x1 = b.grid.coords(p)[0];
        const double expect = std::exp(-2.0 * std::sin(two_pi * x1)) / i0_2;
        EXPECT_NEAR(b.theta[0][0][p], expect, 1e-12 * expect);
    }
    EXPECT_LT(b.period_error, 1e-12);
    EXPECT_NEAR(b.periods[0][0], 1.0, 1e-12);
    EXPECT_LT(b.coclosed_residual, 1e-10);
}

TEST(HarmonicBasisDiag3, RejectsOutsideItsClass)
{
    auto shear = diag3("1", "1", "1");
    shear.set(0, 1, parse("0.1"));
    EXPECT_THROW(harmonic_basis_diag3(shear, 0.0), FamilyError);
    EXPECT_THROW(harmonic_basis_diag3(diag3("exp(sin(2*pi*x2))", "exp(-sin(2*pi*x2))", "1"), 0.0),
                 FamilyError);
    EXPECT_THROW(harmonic_basis_diag3(diag3("2", "1", "1"), 0.0), FamilyError);
    auto interval = bessel_family();
    interval.domains[0] = families::AxisDomain::interval(0.0, 1.0);
    EXPECT_THROW(harmonic_basis_diag3(interval, 0.0), FamilyError);
}

TEST(GramL2, FlatIsIdentity)
{
    const auto fam = diag3("1", "1", "1");
    const auto G = gram_L2(harmonic_basis_diag3(fam, 0.0), metric_field(fam, 0.0, 64));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_EQ(G(i, j), i == j ? 1.0 : 0.0);
    EXPECT_EQ(G.volume, 1.0);
}

TEST(GramL2, BesselClosedForms)
{
    const auto fam = bessel_family();
    const auto G = gram_L2(harmonic_basis_diag3(fam, 1.0), metric_field(fam, 1.0, 64));
    EXPECT_NEAR(G(0, 0), 1.0 / bessel_i0(2.0), 1e-12);
    EXPECT_NEAR(G(1, 1), bessel_i0(1.0), 1e-12);
    EXPECT_NEAR(G(2, 2), bessel_i0(1.0), 1e-12);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j)
                EXPECT_LT(std::abs(G(i, j)), 1e-12);
}

TEST(GramL2, RandomDiagonalFamiliesAreSymmetricPositiveAndMatchRatio)
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-0.6, 0.6);
    for (int trial = 0; trial < 8; ++trial) {
        const auto c = [&] { return std::to_string(coef(rng)); };
        const std::string a = c() + "*t*sin(2*pi*x1) + " + c() + "*cos(4*pi*x1)";
        const std::string b = c() + "*t*cos(2*pi*x1) + " + c() + "*t^2*sin(6*pi*x1)";
        const auto fam = diag3("exp(-(" + a + ") - (" + b + "))", "exp(" + a + ")", "exp(" + b + ")");
        const double t = 0.25 * trial;
        const auto m = metric_field(fam, t, 64);
        const auto G = gram_L2(harmonic_basis_diag3(fam, t), m);
        EXPECT_EQ(G.asymmetry(), 0.0);
        EXPECT_TRUE(G.positive_definite());
        EXPECT_NEAR(G.det(), diag3_closed_form(m), 1e-10);
    }
}

TEST(GramL2, CycleChangeMatchesTransformedBasis)
{
    const auto fam = bessel_family();
    const double t = 0.7;
    const auto m = metric_field(fam, t, 64);
    const auto b = harmonic_basis_diag3(fam, t);
    const auto G = gram_L2(b, m);

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pick(0, 2), mult(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix3 P{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        for (int step = 0; step < 4; ++step) {
            const int r = pick(rng), s = pick(rng);
            if (r == s)
                continue;
            const int k = mult(rng);
            for (int col = 0; col < 3; ++col)
                P[r][col] += k * P[s][col];
        }
        if (trial % 2)
            std::swap(P[0], P[1]);
        const auto GP = change_cycle_basis(G, P);
        EXPECT_NEAR(GP.det(), G.det(), 1e-12);

        // Dual basis of P Sigma, assembled directly: theta' = theta P^-1,
        // so P theta'^T has the old basis' periods.
        HarmonicBasis bp = b;
        // Solve P X = I for X = P^-1 by the adjugate.
        double det = 0.0;
        for (int j = 0; j < 3; ++j)
            det += P[0][j] * (P[1][(j + 1) % 3] * P[2][(j + 2) % 3] - P[1][(j + 2) % 3] * P[2][(j + 1) % 3]);
        Matrix3 X{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                X[i][j] = static_cast<double>(P[r0][c0] * P[r1][c1] - P[r0][c1] * P[r1][c0]) / det;
            }
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (std::size_t p = 0; p < m.size(); ++p) {
                    double s = 0.0;
                    for (int l = 0; l < 3; ++l)
                        s += b.theta[l][k][p] * X[l][j];
                    bp.theta[j][k][p] = s;
                }
        const auto direct = gram_L2(bp, m);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                EXPECT_NEAR(direct(i, j), GP(i, j), 1e-11 * std::max(1.0, std::abs(GP(i, j))));
    }
    IntMatrix3 bad{{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    EXPECT_THROW(change_cycle_basis(G, bad), FamilyError);
}

TEST(PhiCurve, FlatFamilyIsOne)
{
    const auto c = phi_curve(diag3("1", "1", "1"), linspace(0.0, 1.0, 5));
    for (double v : c.phi)
        EXPECT_EQ(v, 1.0);
    EXPECT_FALSE(c.non_constant());
}

TEST(PhiCurve, BesselFamilyMatchesSeriesOracle)
{
    const auto ts = linspace(0.0, 1.0, 11);
    const auto c = phi_curve(bessel_family(), ts);
    ASSERT_EQ(c.phi.size(), ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double t = ts[k];
        const double oracle = bessel_i0(t) * bessel_i0(t) / bessel_i0(2.0 * t);
        EXPECT_NEAR(c.phi[k], oracle, 1e-10) << "t=" << t;
        EXPECT_NEAR(c.phi[k], c.closed_form[k], 1e-10);
        EXPECT_EQ(c.phi[k], c.grams[k].det());
        EXPECT_GT(c.phi[k], 0.0);
    }
    EXPECT_NEAR(c.phi.front(), 1.0, 1e-14);
    EXPECT_NEAR(c.phi.back(), 0.70316, 1e-5);
    EXPECT_TRUE(c.non_constant());
    EXPECT_GT(c.spread(), 0.29);
    for (double d : c.derivative())
        EXPECT_LE(d, 1e-12);
}

TEST(PhiCurve, CauchySchwarzBoundIsStrictAwayFromZero)
{
    const auto fam = diag3("exp(-2*t*(sin(2*pi*x1) + 0.5*cos(6*pi*x1)))", "exp(t*(sin(2*pi*x1) + 0.5*cos(6*pi*x1)))",
                           "exp(t*(sin(2*pi*x1) + 0.5*cos(6*pi*x1)))");
    const auto ts = std::vector<double>{0.0, 0.1, 0.3, 0.6, 1.0};
    const auto c = phi_curve(fam, ts);
    EXPECT_NEAR(c.phi[0], 1.0, 1e-14);
    for (std::size_t k = 1; k < ts.size(); ++k)
        EXPECT_LT(c.phi[k], 1.0 - 1e-6) << "t=" << ts[k];
}

TEST(PhiCurve, DoublingTheGridChangesPhiBelowTolerance)
{
    const auto ts = linspace(0.0, 1.0, 6);
    PhiOptions coarse, fine;
    coarse.n = 64;
    fine.n = 128;
    const auto a = phi_curve(bessel_family(), ts, coarse);
    const auto b = phi_curve(bessel_family(), ts, fine);
    for (std::size_t k = 0; k < ts.size(); ++k)
        EXPECT_LT(std::abs(a.phi[k] - b.phi[k]), 1e-12);
}

TEST(PhiCurve, RefusesInadmissibleFamily)
{
    EXPECT_THROW(phi_curve(diag3("exp(t*sin(2*pi*x1))", "1", "1"), {0.0, 0.5}), FamilyError);
}

TEST(HarmonicBasis2d, FlatTorus)
{
    const auto fam = family2("1", "1", "0");
    const auto b = harmonic_basis_2d(fam, 0.0);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            for (double v : b.theta[j][k])
                EXPECT_EQ(v, j == k ? 1.0 : 0.0);
    const auto c = phi_2d(fam, {0.0, 0.5, 1.0});
    for (double v : c.phi)
        EXPECT_EQ(v, 1.0);
}

TEST(HarmonicBasis2d, DiagonalFamilyReducesToDualOfX1)
{
    const auto fam = diag2_family();
    const double t = 0.8;
    const auto b = harmonic_basis_2d(fam, t);
    const double G = bessel_i0(t);
    for (std::size_t p = 0; p < b.grid.size(); ++p) {
        const double x1 = b.grid.coords(p)[0];
        EXPECT_NEAR(b.theta[0][0][p], std::exp(t * std::cos(two_pi * x1)) / G, 1e-12);
        EXPECT_NEAR(b.theta[0][1][p], 0.0, 1e-15);
        EXPECT_NEAR(b.theta[1][1][p], 1.0, 1e-15);
    }
    const auto c = phi_2d(fam, linspace(0.0, 1.0, 9));
    for (double v : c.phi)
        EXPECT_LT(std::abs(v - 1.0), 1e-8);
}

TEST(HarmonicBasis2d, ConstantShearPicksUpCorrection)
{
    const auto fam = shear2_family();
    const double t = 0.6;
    const auto b = harmonic_basis_2d(fam, t);
    const double G = bessel_i0(t);
    double correction = 0.0;
    for (std::size_t p = 0; p < b.grid.size(); ++p) {
        const double x2 = b.grid.coords(p)[1];
        const double rootC = 1.0 + 0.3 * std::cos(two_pi * x2);
        const double expect = 0.25 * (1.0 - rootC) / G;
        EXPECT_NEAR(b.theta[0][1][p], expect, 1e-12);
        EXPECT_NEAR(b.theta[1][1][p], rootC, 1e-12);
        correction = std::max(correction, std::abs(expect));
    }
    EXPECT_GT(correction, 0.01);
    EXPECT_LT(b.closed_residual, 1e-10);
    EXPECT_LT(b.coclosed_residual, 1e-10);
    EXPECT_LT(b.period_error, 1e-12);

    const auto Gm = gram_L2(b, metric_field(fam, t, 64));
    EXPECT_NEAR(Gm(0, 0), (1.0 + 1.0 / 16.0) / G, 1e-12);
    EXPECT_NEAR(Gm(0, 1), -0.25, 1e-12);
    EXPECT_NEAR(Gm(1, 1), G, 1e-12);

    const auto c = phi_2d(fam, linspace(0.0, 1.0, 9));
    for (double v : c.phi)
        EXPECT_LT(std::abs(v - 1.0), 1e-8);
}

TEST(HarmonicBasis2d, VaryingShearAndUnnormalizedVolume)
{
    const auto fam = exact_shift2_family();
    const auto c = phi_2d(fam, linspace(0.0, 1.0, 6));
    for (std::size_t k = 0; k < c.phi.size(); ++k) {
        EXPECT_LT(std::abs(c.phi[k] - 1.0), 1e-8);
        EXPECT_NEAR(c.volume_scale[k], 2.0, 1e-12);
        // S = 2, G = 2, m = 1/4: <theta1, theta2> = -m / S, |theta2|^2 = G / S.
        EXPECT_NEAR(c.grams[k](0, 1), -0.125, 1e-12);
        EXPECT_NEAR(c.grams[k](1, 1), 1.0, 1e-12);
    }
    EXPECT_FALSE(c.non_constant());
}

TEST(HarmonicBasis2d, RejectsDeterminantDependingOnX1)
{
    const auto fam = family2("exp(sin(2*pi*x1))", "1", "0");
    EXPECT_THROW(harmonic_basis_2d(fam, 0.0), FamilyError);
    EXPECT_THROW(harmonic_basis_2d(bessel_family(), 0.0), FamilyError);
}

TEST(PhiCsv, HeaderAndRows)
{
    const auto c3 = phi_curve(diag3("1", "1", "1"), {0.0, 0.5});
    EXPECT_EQ(to_csv(c3), "t,phi,g11_int,g22_int,g33_int\n0,1,1,1,1\n0.5,1,1,1,1\n");
    const auto c2 = phi_2d(family2("1", "1", "0"), {0.25});
    EXPECT_EQ(to_csv(c2), "t,phi,g11_int,g22_int,g33_int\n0.25,1,1,1,\n");
    const auto cb = phi_curve(bessel_family(), {1.0});
    const std::string csv = to_csv(cb);
    const auto row = csv.substr(csv.find('\n') + 1);
    EXPECT_EQ(std::stod(row.substr(row.find(',') + 1)), cb.phi[0]);
}
