#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spheretps/errors.hpp"
#include "spheretps/fit.hpp"
#include "spheretps/kernel.hpp"
#include "spheretps/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace stps;

namespace {

constexpr double PI = std::numbers::pi;

std::vector<std::vector<double>> random_unit_points(int n, int d, unsigned seed)
{
    std::mt19937 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<size_t>(n));
    while (static_cast<int>(pts.size()) < n) {
        std::vector<double> x(static_cast<size_t>(d));
        double norm2 = 0.0;
        for (auto& c : x) {
            c = gauss(gen);
            norm2 += c * c;
        }
        if (norm2 < 1e-4) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : x) c *= inv;
        pts.push_back(std::move(x));
    }
    return pts;
}

FitProblem basic_problem(int d, int m, int ell, std::vector<std::vector<double>> pts,
                         std::vector<double> y)
{
    FitProblem prob;
    prob.spec = KernelSpec{d, m, ell, KernelMethod::Auto};
    prob.pts = make_point_set(d, std::move(pts));
    prob.y = std::move(y);
    return prob;
}

} // namespace

TEST_CASE("make_point_set normalizes near-unit input and rejects the rest")
{
    // off by 3e-7 in norm: accepted and renormalized
    const PointSet ps = make_point_set(3, {{1.0 + 3e-7, 0.0, 0.0}, {0.0, 1.0, 0.0}});
    CHECK(ps.n() == 2);
    CHECK(ps.points[0][0] == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(make_point_set(3, {{1.1, 0.0, 0.0}}), const Error&);
    CHECK_THROWS_AS(make_point_set(3, {{0.0, 0.0, 0.0}}), const Error&);
    CHECK_THROWS_AS(make_point_set(1, {{1.0}}), const DomainError&);
    CHECK_THROWS_AS(make_point_set(3, {{1.0, 0.0}}), const DimensionMismatchError&);

    // coincident points are rejected, antipodal ones are fine
    CHECK_THROWS_AS(make_point_set(3, {{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}),
                    const DuplicatePointsError&);
    CHECK(make_point_set(3, {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}}).n() == 2);
}

TEST_CASE("trend_basis shapes and identifiers")
{
    for (int d : {2, 3, 5, 9}) {
        const TrendBasis tb = trend_basis(d, 0);
        CHECK(tb.q == 1);
        CHECK(tb.basis_id == "constant");
        CHECK(tb.u[0](std::vector<double>(static_cast<size_t>(d), 0.0)) == 1.0);
    }
    const TrendBasis tb1 = trend_basis(3, 1);
    CHECK(tb1.q == 4);
    CHECK(tb1.basis_id == "rsh3:1");
    const TrendBasis tb2 = trend_basis(3, 2);
    CHECK(tb2.q == 9);

    CHECK_THROWS_AS(trend_basis(4, 1), const UnsupportedError&);
    CHECK_THROWS_AS(trend_basis(2, 1), const UnsupportedError&);
    CHECK_THROWS_AS(trend_basis(3, -1), const DomainError&);
}

TEST_CASE("spherical harmonic blocks satisfy the addition identity")
{
    // sum over the degree-n block of u(x) u(y) = (2n+1) P_n(x.y)
    const TrendBasis tb = trend_basis(3, 3);
    const auto pts = random_unit_points(6, 3, 99u);
    for (size_t a = 0; a + 1 < pts.size(); a += 2) {
        const auto& x = pts[a];
        const auto& y = pts[a + 1];
        const double xi = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
        size_t j = 0;
        for (int n = 0; n <= 3; ++n) {
            double block = 0.0;
            for (int cnt = 0; cnt < 2 * n + 1; ++cnt, ++j) block += tb.u[j](x) * tb.u[j](y);
            CHECK(block == doctest::Approx((2 * n + 1) * zonal_W(n, 3, xi)).epsilon(1e-11));
        }
        CHECK(j == static_cast<size_t>(tb.q));
    }
}

TEST_CASE("single-point interpolation is solved by the trend alone")
{
    // K = [k(1)] = [1] for (3,2); the side condition forces a = 0, so the
    // constant must carry the value
    FitProblem prob = basic_problem(3, 2, 0, {{0.0, 0.0, 1.0}}, {3.7});
    const AssembledSystem sys = assemble(prob);
    CHECK(sys.K(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    const SplineModel model = solve_fit(prob, sys);
    CHECK(std::fabs(model.a[0]) <= 1e-10);
    CHECK(model.b[0] == doctest::Approx(3.7).epsilon(1e-12));

    const std::vector<double> pred = evaluate(model, make_point_set(3, {{1.0, 0.0, 0.0}}));
    CHECK(pred[0] == doctest::Approx(3.7).epsilon(1e-12));
}

TEST_CASE("antipodal pair has a hand-solvable system")
{
    // two points, y = (1, -1): symmetry forces b = 0 and a1 = -a2 =
    // 1/(k(1) - k(-1)); for (4,2) that gap is pi^2/8
    FitProblem prob =
        basic_problem(4, 2, 0, {{1.0, 0.0, 0.0, 0.0}, {-1.0, 0.0, 0.0, 0.0}}, {1.0, -1.0});
    const AssembledSystem sys = assemble(prob);
    CHECK(sys.K(0, 0) == doctest::Approx(PI * PI / 12 + 1.0 / 16).epsilon(1e-14));
    CHECK(sys.K(0, 1) == doctest::Approx(1.0 / 16 - PI * PI / 24).epsilon(1e-14));

    const SplineModel model = solve_fit(prob, sys);
    CHECK(model.a[0] == doctest::Approx(8 / (PI * PI)).epsilon(1e-12));
    CHECK(model.a[1] == doctest::Approx(-8 / (PI * PI)).epsilon(1e-12));
    CHECK(std::fabs(model.b[0]) <= 1e-12);

    const std::vector<double> pred =
        evaluate(model, make_point_set(4, {{1.0, 0.0, 0.0, 0.0}}));
    CHECK(pred[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pure smoothing on an antipodal pair has a hand-solvable system")
{
    // p = n = 2, R = I, mu = 1, (3,2), y = (1,-1): b = 0 and
    // a1 = -a2 = 1/(1 + pi^2/6)
    FitProblem prob =
        basic_problem(3, 2, 0, {{0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}}, {1.0, -1.0});
    prob.p = 2;
    prob.mu = 1.0;
    const SplineModel model = solve_fit(prob);
    CHECK(model.a[0] == doctest::Approx(1 / (1 + PI * PI / 6)).epsilon(1e-12));
    CHECK(model.a[1] == doctest::Approx(-1 / (1 + PI * PI / 6)).epsilon(1e-12));
    CHECK(std::fabs(model.b[0]) <= 1e-12);
}

TEST_CASE("interpolation reproduces the data")
{
    const auto pts = random_unit_points(8, 3, 7u);
    std::vector<double> y;
    for (const auto& x : pts) y.push_back(std::sin(3 * x[0]) + x[1] * x[2]);
    FitProblem prob = basic_problem(3, 2, 0, pts, y);
    const SplineModel model = solve_fit(prob);

    const std::vector<double> pred = evaluate(model, prob.pts);
    for (size_t i = 0; i < y.size(); ++i)
        CHECK(pred[i] == doctest::Approx(y[i]).epsilon(1e-9));

    // side condition: kernel coefficients sum to zero against the trend
    double s = 0.0;
    for (double ai : model.a) s += ai;
    CHECK(std::fabs(s) <= 1e-9);
}

TEST_CASE("constant data is absorbed by the trend")
{
    const auto pts = random_unit_points(12, 3, 11u);
    FitProblem prob = basic_problem(3, 2, 0, pts, std::vector<double>(12, 2.5));
    const SplineModel model = solve_fit(prob);
    for (double ai : model.a) CHECK(std::fabs(ai) <= 1e-7);
    CHECK(model.b[0] == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("degree-one trend data is reproduced exactly")
{
    // data drawn from the trend space itself: the kernel part must vanish
    // and predictions must extend the polynomial
    const TrendBasis tb = trend_basis(3, 1);
    const auto pts = random_unit_points(10, 3, 23u);
    std::vector<double> y;
    for (const auto& x : pts) y.push_back(0.4 * tb.u[0](x) - 0.7 * tb.u[1](x) + 0.2 * tb.u[3](x));
    FitProblem prob = basic_problem(3, 2, 1, pts, y);
    const SplineModel model = solve_fit(prob);
    for (double ai : model.a) CHECK(std::fabs(ai) <= 1e-8);

    const auto queries = make_point_set(3, random_unit_points(5, 3, 24u));
    const std::vector<double> pred = evaluate(model, queries);
    for (int i = 0; i < queries.n(); ++i) {
        const auto& z = queries.points[static_cast<size_t>(i)];
        const double want = 0.4 * tb.u[0](z) - 0.7 * tb.u[1](z) + 0.2 * tb.u[3](z);
        CHECK(pred[static_cast<size_t>(i)] == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("smoothing energy decreases as mu grows")
{
    const auto pts = random_unit_points(10, 3, 31u);
    std::vector<double> y;
    for (const auto& x : pts) y.push_back(x[0] * x[0] - 0.3 * x[2] + std::cos(2 * x[1]));

    double prev_energy = -1.0;
    bool first = true;
    for (double mu : {1e-3, 1e-1, 1e1}) {
        FitProblem prob = basic_problem(3, 2, 0, pts, y);
        prob.p = prob.pts.n();
        prob.mu = mu;
        const AssembledSystem sys = assemble(prob);
        const SplineModel model = solve_fit(prob, sys);
        const Eigen::Map<const Eigen::VectorXd> a(model.a.data(),
                                                  static_cast<long>(model.a.size()));
        const double energy = a.dot(sys.K * a);
        CHECK(energy >= -1e-12);
        if (!first) CHECK(energy <= prev_energy + 1e-12);
        prev_energy = energy;
        first = false;
    }
}

TEST_CASE("weight matrix scaling matches smoothing parameter scaling")
{
    // R = 2I with mu is the same problem as R = I with 2 mu
    const auto pts = random_unit_points(6, 3, 41u);
    std::vector<double> y;
    for (const auto& x : pts) y.push_back(x[0] + 0.5 * x[1] * x[1]);

    FitProblem scaled = basic_problem(3, 2, 0, pts, y);
    scaled.p = scaled.pts.n();
    scaled.mu = 0.05;
    scaled.R = 2.0 * Eigen::MatrixXd::Identity(scaled.p, scaled.p);
    const SplineModel ms = solve_fit(scaled);

    FitProblem doubled = basic_problem(3, 2, 0, pts, y);
    doubled.p = doubled.pts.n();
    doubled.mu = 0.10;
    const SplineModel md = solve_fit(doubled);

    for (size_t i = 0; i < ms.a.size(); ++i)
        CHECK(ms.a[i] == doctest::Approx(md.a[i]).epsilon(1e-10));
    CHECK(ms.b[0] == doctest::Approx(md.b[0]).epsilon(1e-10));
}

TEST_CASE("permutation of the data does not change the fitted function")
{
    const auto pts = random_unit_points(9, 3, 53u);
    std::vector<double> y;
    for (const auto& x : pts) y.push_back(std::exp(x[2]) - x[0]);

    FitProblem prob = basic_problem(3, 2, 0, pts, y);
    const SplineModel model = solve_fit(prob);

    std::vector<size_t> perm = {4, 2, 7, 0, 8, 1, 6, 3, 5};
    std::vector<std::vector<double>> ppts;
    std::vector<double> py;
    for (size_t i : perm) {
        ppts.push_back(pts[i]);
        py.push_back(y[i]);
    }
    FitProblem pprob = basic_problem(3, 2, 0, ppts, py);
    const SplineModel pmodel = solve_fit(pprob);

    const auto queries = make_point_set(3, random_unit_points(6, 3, 54u));
    const std::vector<double> a = evaluate(model, queries);
    const std::vector<double> b = evaluate(pmodel, queries);
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10));
}

TEST_CASE("fit validation rejects ill-posed configurations")
{
    const auto pts = random_unit_points(5, 3, 61u);
    const std::vector<double> y(5, 1.0);

    // kernel diagonal diverges: fitting needs 2m >= d
    FitProblem bad_pair = basic_problem(3, 1, 0, pts, y);
    CHECK_THROWS_AS(solve_fit(bad_pair), const SingularKernelDiagonalError&);

    FitProblem neg_mu = basic_problem(3, 2, 0, pts, y);
    neg_mu.mu = -1.0;
    CHECK_THROWS_AS(solve_fit(neg_mu), const DomainError&);

    FitProblem p_without_mu = basic_problem(3, 2, 0, pts, y);
    p_without_mu.p = 2;
    CHECK_THROWS_AS(solve_fit(p_without_mu), const DomainError&);

    FitProblem p_too_big = basic_problem(3, 2, 0, pts, y);
    p_too_big.p = 6;
    p_too_big.mu = 1.0;
    CHECK_THROWS_AS(solve_fit(p_too_big), const DomainError&);

    FitProblem wrong_y = basic_problem(3, 2, 0, pts, {1.0, 2.0});
    CHECK_THROWS_AS(solve_fit(wrong_y), const DimensionMismatchError&);

    FitProblem bad_R = basic_problem(3, 2, 0, pts, y);
    bad_R.p = 2;
    bad_R.mu = 1.0;
    bad_R.R.resize(2, 2);
    bad_R.R << 1.0, 0.5, -0.5, 1.0; // not symmetric
    CHECK_THROWS_AS(solve_fit(bad_R), const DomainError&);
}

TEST_CASE("trend columns must be independent on the data")
{
    // four points on the equator annihilate the z harmonic
    FitProblem prob = basic_problem(
        3, 2, 1,
        {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}},
        {1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(solve_fit(prob), const NotUnisolventError&);
}

TEST_CASE("nearly coincident points make the system singular")
{
    // 2e-9 apart: past the duplicate gate, but the kernel rows coincide in
    // double precision
    FitProblem prob = basic_problem(
        3, 2, 0, {{1.0, 0.0, 0.0}, {1.0, 2e-9, 0.0}, {0.0, 1.0, 0.0}}, {1.0, 2.0, 3.0});
    CHECK_THROWS_AS(solve_fit(prob), const SingularSystemError&);
}

TEST_CASE("evaluate validates dimensions")
{
    FitProblem prob = basic_problem(3, 2, 0, {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, {1.0, 2.0});
    const SplineModel model = solve_fit(prob);
    CHECK_THROWS_AS(evaluate(model, make_point_set(4, {{1.0, 0.0, 0.0, 0.0}})),
                    const DimensionMismatchError&);
}
