#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "slag/ck.hpp"
#include "slag/dsl.hpp"
#include "slag/families.hpp"

using namespace slag;
using namespace slag::families;
using dsl::parse;

namespace {

MetricFamily diag_family(const std::string& a, const std::string& b, const std::string& c)
{
    return MetricFamily::from_upper(3, {parse(a), parse(b), parse(c), parse("0"), parse("0"), parse("0")});
}

MetricFamily bessel_family()
{
    return diag_family("exp(-2*t*sin(2*pi*x1))", "exp(t*sin(2*pi*x1))", "exp(t*sin(2*pi*x1))");
}

double grid_mean(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

TEST(FamilyCheck, IdentityPassesWithZeroResiduals)
{
    const auto r = check_slag_family(diag_family("1", "1", "1"));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.max(), 0.0);
    EXPECT_EQ(r.grid_points, 1u);
}

TEST(FamilyCheck, BesselFamilyPassesOnFineGrid)
{
    const auto r = check_slag_family(bessel_family(), 256, 11, 1e-12);
    EXPECT_TRUE(r.pass()) << r.det_t << " " << r.det_x1 << " " << r.closure;
    EXPECT_LT(r.max(), 1e-12);
    EXPECT_EQ(r.grid_points, 256u);
}

TEST(FamilyCheck, DetDriftFails)
{
    const auto r = check_slag_family(diag_family("exp(t)", "1", "1"));
    EXPECT_FALSE(r.pass());
    // centered differences of e^t on [0, 1] peak near e
    EXPECT_GT(r.det_t, 2.0);
    EXPECT_LT(r.det_t, std::exp(1.0));
    EXPECT_EQ(r.det_x1, 0.0);
}

TEST(FamilyCheck, DetectsEachCondition)
{
    // sqrt(det) varies in x1
    EXPECT_GT(check_slag_family(diag_family("1 + 0.5*sin(2*pi*x1)", "1", "1")).det_x1, 1.0);
    // alpha11 depends on x2
    EXPECT_GT(check_slag_family(diag_family("exp(t*sin(2*pi*x2))", "exp(-t*sin(2*pi*x2))", "1")).closure, 0.5);
    // off-diagonal alpha12 depending on x1 breaks closure
    auto f = MetricFamily::from_upper(
        3, {parse("2"), parse("2"), parse("1"), parse("0.5*sin(2*pi*x1)"), parse("0"), parse("0")});
    EXPECT_GT(check_slag_family(f).closure, 1.0);
}

TEST(FamilyCheck, VerdictMatchesExponentSumForDiagonalFamilies)
{
    // diag(e^{a t s}, e^{b t s}, e^{c t s}), s = sin 2 pi x1: det is t-independent iff a + b + c = 0.
    const int cases[][3] = {{-2, 1, 1}, {1, 1, 1}, {0, 0, 0}, {3, -1, -2}, {1, 0, 0}, {2, -1, 0}};
    for (const auto& c : cases) {
        const auto term = [](int k) { return "exp(" + std::to_string(k) + "*t*sin(2*pi*x1))"; };
        const auto r = check_slag_family(diag_family(term(c[0]), term(c[1]), term(c[2])));
        EXPECT_EQ(r.pass(), c[0] + c[1] + c[2] == 0) << c[0] << c[1] << c[2];
    }
}

TEST(FamilyCheck, RejectsIndefiniteSamples)
{
    EXPECT_THROW(check_slag_family(diag_family("sin(2*pi*x1)", "1", "1")), FamilyError);
    EXPECT_THROW(check_slag_family(diag_family("1", "1", "1"), 8, 2), FamilyError);
}

TEST(FamilyCheck, TwoDimensionalAnalogue)
{
    auto ok = MetricFamily::from_upper(2, {parse("exp(t*cos(2*pi*x1))"), parse("exp(-t*cos(2*pi*x1))"), parse("0")});
    EXPECT_TRUE(check_slag_family(ok).pass());
    auto bad = MetricFamily::from_upper(2, {parse("1"), parse("1 + t*x2*0 + 0.3*t*sin(2*pi*x2)"), parse("0")});
    EXPECT_FALSE(check_slag_family(bad).pass());
    EXPECT_THROW(MetricFamily::from_upper(2, {parse("1")}), FamilyError);
}

TEST(BlockFamily, ConstructionAndValidation)
{
    const auto flat = make_block_family(parse("0"), parse("1"), parse("1"), parse("0"), parse("1"));
    EXPECT_TRUE(check_slag_family(flat).pass());

    const auto u = parse("t*sin(2*pi*x1)");
    const auto ex2 = make_block_family(u, parse("1"), dsl::exp(-u), parse("0"), parse("1"));
    EXPECT_TRUE(check_slag_family(ex2, 128).pass());

    EXPECT_THROW(make_block_family(parse("0"), parse("2"), parse("1"), parse("0"), parse("1")), FamilyError);

    // non-trivial q(x2, x3) with an off-diagonal Q
    const auto q = parse("2 + cos(2*pi*x2)*cos(2*pi*x3)");
    const auto ok = make_block_family(u, dsl::exp(-u) * q, parse("1"), parse("0"), q);
    EXPECT_TRUE(check_slag_family(ok, 32).pass());
}

TEST(Collapse22, FlatAndNormalization)
{
    const auto flat = make_collapsing_22(parse("0"), 1.0);
    const auto g = flat.grid(16);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (double v : dsl::eval_grid(flat.entry(i, j), g, 0.5))
                EXPECT_EQ(v, i == j ? 1.0 : 0.0);

    const auto fam = make_collapsing_22(parse("t/(1-t)*sin(pi*x1)^2"), 1.0);
    const Expr u = dsl::log(fam.entry(0, 0));
    for (double t : fam.t_samples(11)) {
        const auto half = dsl::eval_grid(dsl::exp(u / Expr::literal(2)), dsl::Grid::periodic(512), t);
        EXPECT_NEAR(grid_mean(half), 1.0, 1e-12) << t;
    }
    EXPECT_TRUE(check_slag_family(fam, 128).pass());
    EXPECT_TRUE(fam.t_hi_open);
    EXPECT_LT(fam.t_samples(11).back(), 1.0);
}

TEST(Collapse22, NormalizationIsIdempotent)
{
    const Expr u = normalize_x1(parse("t/(1-t)*sin(pi*x1)^2"));
    const Expr uu = normalize_x1(u);
    const auto a = dsl::eval_grid(u, dsl::Grid::periodic(64), 0.7);
    const auto b = dsl::eval_grid(uu, dsl::Grid::periodic(64), 0.7);
    for (std::size_t p = 0; p < a.size(); ++p)
        EXPECT_NEAR(a[p], b[p], 1e-13);
}

TEST(Collapse21, ReducesToCollapse22)
{
    const auto w = parse("t/(1-t)*sin(pi*x1)^2");
    const auto a = make_collapsing_22(w, 1.0);
    const auto b = make_collapsing_21(w, parse("0"), 1.0);
    const dsl::Grid g = dsl::Grid::periodic(32, 4, 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto x = dsl::eval_grid(a.entry(i, j), g, 0.6);
            const auto y = dsl::eval_grid(b.entry(i, j), g, 0.6);
            for (std::size_t p = 0; p < x.size(); ++p)
                EXPECT_NEAR(x[p], y[p], 1e-14 * std::max(1.0, std::abs(x[p])));
        }
}

TEST(Collapse21, PerX1NormalizationAndAdmissibility)
{
    const auto fam = make_collapsing_21(parse("t/(1-t)*sin(pi*x1)^2"),
                                        parse("t/(1-t)*sin(pi*x2)^2*(1 + 0.5*cos(2*pi*x1))"), 1.0);
    const Expr half_v = dsl::log(fam.entry(1, 1)) / Expr::literal(2);
    const std::size_t n = 256;
    const dsl::Grid g = dsl::Grid::periodic(8, n, 1);
    for (double t : fam.t_samples(6)) {
        const auto ev = dsl::eval_grid(dsl::exp(half_v), g, t);
        for (std::size_t i = 0; i < 8; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += ev[g.index(i, j, 0)];
            EXPECT_NEAR(s / n, 1.0, 1e-12) << "t=" << t << " i=" << i;
        }
    }
    EXPECT_TRUE(check_slag_family(fam, 32, 5).pass());
}

TEST(ConeFamily, ComplexIdentities)
{
    const auto g = cone_gamma(1.0, 0.5);
    const auto gd = cone_gamma_dot(1.0, 0.5);
    EXPECT_NEAR(std::norm(gd) * std::norm(g) * std::norm(g), 1.0 / 9.0, 1e-12);
    EXPECT_NEAR(std::abs(gd * g * g - 1.0 / 3.0), 0.0, 1e-15);
    EXPECT_NEAR(std::norm(cone_gamma(1.0, 1.0)), std::cbrt(2.0), 1e-15);
}

TEST(ConeFamily, DeterminantIsFSquaredOverNine)
{
    const auto fam = make_cone_family(parse("1"), 0.1, 1.0);
    dsl::Grid grid{{dsl::Axis::interval(64, 0.5, 2.0), dsl::Axis::periodic_unit(64), dsl::Axis::periodic_unit(1)}};
    for (double t : {0.1, 1.0}) {
        const auto s = sample(fam, grid, t);
        const auto det = determinant(fam, s);
        ASSERT_EQ(det.size(), 64u * 64u);
        for (std::size_t p = 0; p < det.size(); ++p) {
            ASSERT_NEAR(det[p], 1.0 / 9.0, 1e-12);
            const auto x = grid.coords(p);
            EXPECT_NEAR(s(0, 0)[p], std::norm(cone_gamma_dot(x[0], t)), 1e-14);
            EXPECT_NEAR(s(1, 1)[p], std::norm(cone_gamma(x[0], t)), 1e-14);
        }
    }
}

TEST(ConeFamily, NonConstantConformalFactor)
{
    const auto f = parse("2 + 0.5*cos(2*pi*x2)*sin(2*pi*x3)");
    const auto fam = make_cone_family(f, 0.1, 1.0);
    const auto grid = fam.grid(16);
    const auto fs = dsl::eval_grid(f, grid, 0.0);
    const auto det = determinant(fam, sample(fam, grid, 0.4));
    for (std::size_t p = 0; p < det.size(); ++p)
        EXPECT_NEAR(det[p], fs[p] * fs[p] / 9.0, 1e-12);
    EXPECT_TRUE(check_slag_family(fam, 16).pass());
}

TEST(ConeFamily, RejectsBadInput)
{
    EXPECT_THROW(make_cone_family(parse("1"), 0.1, 1.0, 0.0, 1.0), FamilyError);
    EXPECT_THROW(make_cone_family(parse("cos(2*pi*x2)"), 0.1, 1.0), FamilyError);
    EXPECT_THROW(make_cone_family(parse("1 + x1"), 0.1, 1.0), FamilyError);
}

TEST(FamilyPolicy, FlatFamily)
{
    const auto fp = family_to_policy<Rational>(diag_family("1", "1", "1"), Rational(0), {}, 4);
    EXPECT_EQ(fp.g, ck::identity_metric<Rational>(4));
    for (const auto& [ij, rule] : fp.policy.step1)
        EXPECT_EQ(rule, fp.g[ij.first - 1][ij.second - 1]);
    const auto s = ck::solve_calabi_yau(fp.g, fp.policy);
    EXPECT_TRUE(ck::check_structure(s).all_exact_zero());
}

TEST(FamilyPolicy, BesselSlicesAreSpecialLagrangian)
{
    const auto fp = family_to_policy<double>(bessel_family(), 0.0, {0.2, 0.0, 0.0}, 6);
    const auto s = ck::solve_calabi_yau(fp.g, fp.policy);
    const auto slice = horizontal_slice_check(s);
    EXPECT_TRUE(slice.b_exact_zero);
    EXPECT_TRUE(slice.im_gamma_exact_zero);
    EXPECT_LT(ck::check_structure(s).max(), 1e-12);
}

TEST(FamilyPolicy, SolvedAlpha11MatchesFamilyEntry)
{
    const auto fam = bessel_family();
    const std::array<double, 3> base{0.15, 0.3, 0.6};
    const auto fp = family_to_policy<double>(fam, 0.5, base, 6);
    const auto s = ck::solve_calabi_yau(fp.g, fp.policy);
    const auto slice = horizontal_slice_check(s);
    EXPECT_TRUE(slice.b_exact_zero);
    // Off t = 0 the metric jets carry coefficients of size (2 pi)^k / k!, so
    // float noise in Im Gamma is bounded relative to that scale.
    double scale = 1.0;
    for (const auto& row : fp.g)
        for (const auto& x : row)
            scale = std::max(scale, x.max_abs_coeff());
    EXPECT_LT(slice.im_gamma_max, 1e-12 * scale) << "scale " << scale;
    const auto a11 = jets::restrict_zero(s.h.A[0][0], {jets::Var::y2, jets::Var::y3});
    const auto expected = dsl::eval_jet<double>(fam.entry(0, 0), base, 6, 0.5, true);
    EXPECT_LT((a11 - expected).max_abs_coeff(), 1e-12 * std::max(1.0, expected.max_abs_coeff()));
    EXPECT_LT(ck::check_structure(s).max(), 1e-10);
}

TEST(FamilyPolicy, ConeFamilyFeedsSolver)
{
    const auto fam = make_cone_family(parse("1"), 0.1, 1.0);
    const auto fp = family_to_policy<double>(fam, 0.5, {1.0, 0.0, 0.0}, 5, {32, 11, 1e-10});
    const auto s = ck::solve_calabi_yau(fp.g, fp.policy);
    EXPECT_TRUE(horizontal_slice_check(s).b_exact_zero);
    EXPECT_LT(horizontal_slice_check(s).im_gamma_max, 1e-12);
}

TEST(FamilyPolicy, RefusesInadmissibleFamily)
{
    EXPECT_THROW(family_to_policy<double>(diag_family("exp(t)", "1", "1"), 0.0, {}, 3), FamilyError);
    auto two = MetricFamily::from_upper(2, {parse("1"), parse("1"), parse("0")});
    EXPECT_THROW(family_to_policy<double>(two, 0.0, {}, 3), FamilyError);
}
