#include "spheretps/verify.hpp"
#include "spheretps/coefficients.hpp"
#include "spheretps/errors.hpp"
#include "spheretps/kernel.hpp"
#include "spheretps/operators.hpp"
#include "spheretps/quadrature.hpp"
#include "spheretps/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace stps {

namespace {

std::string dm_tag(int d, int m)
{
    return "d=" + std::to_string(d) + ",m=" + std::to_string(m);
}

CheckResult agreement_check(const char* kind, int d, int m, double xi_max, double bound,
                            double series_tol)
{
    KernelSpec spec{d, m, 0, KernelMethod::Series};
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double xi = (i - 20) / 20.0;
        if (xi > xi_max) break;
        SeriesControl ctl;
        ctl.abs_tol = series_tol;
        const double series = k_series(spec, xi, ctl);
        const double closed = k_closed(d, m, xi);
        worst = std::max(worst, std::fabs(series - closed));
    }
    return CheckResult{std::string(kind) + " " + dm_tag(d, m), worst, bound, worst <= bound};
}

CheckResult rejection_check()
{
    bool series_rejected = false, closed_rejected = false;
    try {
        SeriesControl ctl;
        k_series(KernelSpec{5, 2, 0, KernelMethod::Series}, 1.0, ctl);
    } catch (const SingularPointError&) {
        series_rejected = true;
    }
    try {
        k_closed(5, 2, 1.0);
    } catch (const SingularPointError&) {
        closed_rejected = true;
    }
    const bool ok = series_rejected && closed_rejected;
    return CheckResult{"rejected-at-one d=5,m=2", ok ? 0.0 : 1.0, 0.5, ok};
}

TabulatedFunction gegenbauer_fn(int n, double lambda)
{
    return TabulatedFunction{
        [n, lambda](double x) { return gegenbauer(GegenbauerIndex{n, lambda}, x); }, true, true};
}

const std::vector<double>& operator_grid()
{
    static const std::vector<double> g = {-1.0, -0.8, -0.6, -0.4, -0.2, 0.0,
                                          0.2, 0.4, 0.6, 0.8, 0.95};
    return g;
}

CheckResult eigen_check(double lambda, bool adjoint)
{
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
        TabulatedFunction f = gegenbauer_fn(n, lambda);
        if (adjoint) {
            // T* g (x) = (T g~)(-x) with g~(z) = g(-z)
            const double at_one = gegenbauer_at_one(n, lambda);
            TabulatedFunction refl{[f](double z) { return f.f(-z); }, true, true};
            TApplied t(refl, lambda);
            for (double x : operator_grid()) {
                const double want = (f.f(x) - at_one) / (n * (n + 2.0 * lambda));
                worst = std::max(worst, std::fabs(t(-x) - want));
            }
        } else {
            const double at_minus_one =
                (n % 2 ? -1.0 : 1.0) * gegenbauer_at_one(n, lambda);
            TApplied t(f, lambda);
            for (double x : operator_grid()) {
                const double want = (f.f(x) - at_minus_one) / (n * (n + 2.0 * lambda));
                worst = std::max(worst, std::fabs(t(x) - want));
            }
        }
    }
    const std::string name = std::string(adjoint ? "eigen-Tstar" : "eigen-T") + " lambda="
                           + std::to_string(lambda).substr(0, 4);
    return CheckResult{name, worst, 1e-6, worst <= 1e-6};
}

CheckResult adjointness_check()
{
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(0, 5);
    const double lambdas[3] = {1.0, 1.5, 2.0};

    auto random_poly = [&]() {
        std::vector<double> c(static_cast<size_t>(deg(rng)) + 1);
        for (double& v : c) v = coef(rng);
        return TabulatedFunction{[c](double x) {
                                     double s = 0.0;
                                     for (size_t i = c.size(); i-- > 0;) s = s * x + c[i];
                                     return s;
                                 },
                                 true, true};
    };

    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double lambda = lambdas[trial % 3];
        TabulatedFunction f = random_poly();
        TabulatedFunction g = random_poly();

        TApplied tf(f, lambda);
        TabulatedFunction tf_fn{[&tf](double x) { return tf(x); }, true, false};
        const double lhs = inner_lambda(tf_fn, g, lambda, 1e-9);

        auto gf = g.f;
        TabulatedFunction g_refl{[gf](double z) { return gf(-z); }, true, true};
        TApplied tg(g_refl, lambda);
        TabulatedFunction tsg_fn{[&tg](double x) { return tg(-x); }, false, true};
        const double rhs = inner_lambda(f, tsg_fn, lambda, 1e-9);

        worst = std::max(worst, std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs)));
    }
    return CheckResult{"adjointness", worst, 1e-7, worst <= 1e-7};
}

CheckResult zero_mean_check(int d, int m)
{
    double value = 0.0;
    if (d == 2) {
        // weight (1-xi^2)^(-1/2) absorbed by xi = cos(theta)
        value = integrate([m](double th) { return k_closed(2, m, std::cos(th)); }, 0.0,
                          std::numbers::pi, 1e-10);
    } else {
        // For pairs that blow up at xi = 1 the argument is clamped just
        // outside the evaluator's rejection band; the weight vanishes fast
        // enough there that the induced error stays far below the bound.
        TabulatedFunction k{
            [d, m](double xi) { return k_closed(d, m, std::min(xi, 1.0 - 2e-12)); }, true,
            !singular_at_one(d, m)};
        TabulatedFunction one{[](double) { return 1.0; }, true, true};
        value = inner_lambda(k, one, 0.5 * (d - 2), 1e-9);
    }
    const double worst = std::fabs(value);
    return CheckResult{"zero-mean " + dm_tag(d, m), worst, 1e-8, worst <= 1e-8};
}

CheckResult constants_check()
{
    const double d_want[3] = {43.0 / 75.0, 337.0 / 735.0, 1091.0 / 2835.0};
    const double c_want[3] = {1.0 / 4.0, 5.0 / 16.0, 5.0 / 18.0};
    double worst = 0.0;
    for (int kappa = 2; kappa <= 4; ++kappa)
        worst = std::max(worst, std::fabs(odd_coeffs(kappa).Dconst - d_want[kappa - 2]));
    for (int lambda = 1; lambda <= 3; ++lambda)
        worst = std::max(worst, std::fabs(even_coeffs(lambda).Cconst - c_want[lambda - 1]));
    return CheckResult{"closed-form constants", worst, 1e-14, worst <= 1e-14};
}

} // namespace

std::vector<CheckResult> verify_catalog()
{
    std::vector<CheckResult> out;
    const int convergent[8][2] = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {4, 2}, {5, 2}};
    for (auto& dm : convergent) {
        // (5,2) diverges at xi = 1: both paths must reject there, and the
        // grid comparison stops one step short
        const double xi_max = singular_at_one(dm[0], dm[1]) ? 0.975 : 1.0;
        out.push_back(agreement_check("agreement", dm[0], dm[1], xi_max, 1e-8, 1e-10));
    }
    out.push_back(rejection_check());
    // For large d the pre-taper terms grow fast and the mollified sums hit a
    // rounding floor near 1e-9, so the series is asked only for what the
    // 1e-7 comparison needs.
    const int singular[8][2] = {{3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}, {9, 1}, {11, 1}};
    for (auto& dm : singular)
        out.push_back(agreement_check("singular", dm[0], dm[1], 0.9, 1e-7, 1e-8));
    return out;
}

std::vector<CheckResult> verify_props()
{
    std::vector<CheckResult> out;
    for (double lambda : {1.0, 1.5, 2.0}) {
        out.push_back(eigen_check(lambda, false));
        out.push_back(eigen_check(lambda, true));
    }
    out.push_back(adjointness_check());
    for (int m = 1; m <= 4; ++m) out.push_back(zero_mean_check(2, m));
    out.push_back(zero_mean_check(3, 1));
    out.push_back(zero_mean_check(3, 2));
    out.push_back(zero_mean_check(4, 1));
    out.push_back(zero_mean_check(4, 2));
    out.push_back(zero_mean_check(5, 2));
    out.push_back(zero_mean_check(6, 1));
    out.push_back(constants_check());
    return out;
}

std::vector<CheckResult> verify_recurrence()
{
    std::vector<CheckResult> out;
    const std::vector<double> xs = {-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9};
    const int pairs[4][2] = {{4, 1}, {4, 2}, {3, 2}, {6, 1}};
    for (auto& dm : pairs) {
        const RecurrenceResult r = recurrence_run(dm[0], dm[1], xs);
        double worst = 0.0;
        for (size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, std::fabs(r.values[i] - k_closed(dm[0], dm[1], xs[i])));
        out.push_back(CheckResult{"recurrence " + dm_tag(dm[0], dm[1]), worst, 1e-5, worst <= 1e-5});
        double worst_mean = 0.0;
        for (double res : r.zero_mean_residuals) worst_mean = std::max(worst_mean, std::fabs(res));
        out.push_back(CheckResult{"recurrence-zero-mean " + dm_tag(dm[0], dm[1]), worst_mean, 1e-8,
                                  worst_mean <= 1e-8});
    }
    return out;
}

} // namespace stps
