#include "spheretps/operators.hpp"
#include "spheretps/chebyshev.hpp"
#include "spheretps/errors.hpp"
#include "spheretps/quadrature.hpp"
#include "spheretps/special_functions.hpp"

#include <cmath>
#include <string>

namespace stps {

namespace {

constexpr double CACHE_TOL = 1e-11; // inner antiderivative
constexpr double OUTER_TOL = 1e-9;  // outer integral of T / T*
constexpr double MEAN_TOL = 1e-11;  // [Tf, e_0] off the caches; integrand is cheap
constexpr double ZERO_MASS = 1e-8;  // |[f,e_0]| below which f counts as zero-mean

void check_lambda(double lambda, const char* where)
{
    if (!(lambda > 0.0))
        throw DomainError(std::string(where) + ": requires lambda > 0");
}

void check_x(double x, const char* where)
{
    if (!(std::fabs(x) <= 1.0))
        throw DomainError(std::string(where) + ": x outside [-1,1]");
}

// Both halves of [-1,1] are integrated in the variable s with
// x = -(1 - s^2) resp. x = 1 - s^2, which turns the weight into
// 2 s^(2 lambda) (2 - s^2)^(lambda - 1/2): smooth in s because 2 lambda
// is a positive integer for every d >= 3, and sampling stays strictly
// inside the open interval.
double half_weight(double s, double lambda)
{
    return 2.0 * std::pow(s, 2.0 * lambda) * std::pow(2.0 - s * s, lambda - 0.5);
}

} // namespace

double inner_lambda(const TabulatedFunction& f, const TabulatedFunction& g, double lambda,
                    double abs_tol)
{
    check_lambda(lambda, "inner_lambda");
    if (!f.f || !g.f) throw DomainError("inner_lambda: empty function");
    if (!(abs_tol > 0.0)) throw DomainError("inner_lambda: requires abs_tol > 0");

    auto left = [&](double s) {
        const double x = s * s - 1.0;
        return half_weight(s, lambda) * f.f(x) * g.f(x);
    };
    auto right = [&](double s) {
        const double x = 1.0 - s * s;
        return half_weight(s, lambda) * f.f(x) * g.f(x);
    };
    return integrate(left, 0.0, 1.0, 0.5 * abs_tol)
         + integrate(right, 0.0, 1.0, 0.5 * abs_tol);
}

struct TApplied::Caches {
    CumulativeIntegral left;  // int over z in [-1, -1+s^2], anchored at -1
    CumulativeIntegral right; // int over z in [1-s^2, 1], anchored at +1
    CumulativeIntegral wtail; // int of the bare weight over one half, from the pole
};

TApplied::TApplied(TabulatedFunction f, double lambda)
    : lambda_(lambda)
{
    check_lambda(lambda, "apply_T");
    if (!f.f) throw DomainError("apply_T: empty function");

    auto fn = f.f;
    // refinement near the anchor samples s below 1e-8, where 1 -+ s^2 rounds
    // onto the endpoint itself; nudge the argument back inside so a function
    // singular there is never evaluated at its pole (the weight has already
    // crushed the integrand to ~1e-16 of its scale at that distance)
    auto left = [fn, lambda](double s) {
        const double x = s * s - 1.0;
        return half_weight(s, lambda) * fn(x <= -1.0 ? -1.0 + 2e-12 : x);
    };
    auto right = [fn, lambda](double s) {
        const double x = 1.0 - s * s;
        return half_weight(s, lambda) * fn(x >= 1.0 ? 1.0 - 2e-12 : x);
    };
    auto bare = [lambda](double s) { return half_weight(s, lambda); };
    // The outer integrals divide the cached prefixes by s^(2 lambda), so each
    // cache declares how fast its integrand vanishes at the anchor. A finite
    // input leaves the weight's own order 2 lambda; an input that diverges at
    // the endpoint is an image of this operator, going like (1 -+ x)^(1/2 -
    // lambda) there, which cancels all but a single factor of s.
    const double p_left = f.finite_at_minus_one ? 2.0 * lambda : std::min(2.0 * lambda, 1.0);
    const double p_right = f.finite_at_plus_one ? 2.0 * lambda : std::min(2.0 * lambda, 1.0);
    caches_ = std::make_shared<const Caches>(Caches{
        CumulativeIntegral(left, 0.0, 1.0, CACHE_TOL, p_left),
        CumulativeIntegral(right, 0.0, 1.0, CACHE_TOL, p_right),
        CumulativeIntegral(bare, 0.0, 1.0, CACHE_TOL, 2.0 * lambda),
    });
    mass_ = caches_->left.total() + caches_->right.total();
}

double TApplied::image_mass() const
{
    // Fubini over the triangle y <= x in [e_0, Tf]: the outer factor becomes
    // the weight mass above y, and the inner antiderivative is already cached.
    // Both halves are taken in the anchored variable, where every factor is a
    // prefix of an integral anchored at the same endpoint, so the s^(-2 lambda)
    // amplification meets errors that are relative to the small local values.
    const auto& c = *caches_;
    const double lam = lambda_;
    const double B = 2.0 * c.wtail.total();
    const double mass = mass_;

    auto left = [&c, lam, B](double s) {
        return 2.0 * std::pow(s, -2.0 * lam) * std::pow(2.0 - s * s, -lam - 0.5)
             * (B - c.wtail.upto(s)) * c.left.upto(s);
    };
    auto right = [&c, lam, mass](double t) {
        return 2.0 * std::pow(t, -2.0 * lam) * std::pow(2.0 - t * t, -lam - 0.5)
             * c.wtail.upto(t) * (mass - c.right.upto(t));
    };
    return -(integrate(left, 0.0, 1.0, MEAN_TOL) + integrate(right, 0.0, 1.0, MEAN_TOL));
}

double TApplied::operator()(double x) const
{
    check_x(x, "apply_T");
    if (x == -1.0) return 0.0;

    const double lam = lambda_;
    const auto& c = *caches_;

    // y in [-1, min(x,0)] under y = -1 + t^2; the outer weight becomes
    // t^(-2 lambda - 1) (2-t^2)^(-lambda-1/2) and the anchored inner
    // integral vanishes at t = 0 fast enough to keep the product ~ t.
    auto outer_left = [&c, lam](double t) {
        return 2.0 * std::pow(t, -2.0 * lam) * std::pow(2.0 - t * t, -lam - 0.5)
             * c.left.upto(t);
    };
    const double t_hi = std::sqrt(1.0 + std::min(x, 0.0));
    double acc = integrate(outer_left, 0.0, t_hi, OUTER_TOL);

    if (x > 0.0 && x < 1.0) {
        // y in [0, x] under y = 1 - t^2; anchoring the variable at +1 keeps
        // the distance to the endpoint fully resolved when x sits within
        // rounding range of 1, where 1 - y alone loses all relative accuracy
        const double mass = mass_;
        auto outer_right = [&c, lam, mass](double t) {
            return 2.0 * std::pow(t, -2.0 * lam) * std::pow(2.0 - t * t, -lam - 0.5)
                 * (mass - c.right.upto(t));
        };
        acc += integrate(outer_right, std::sqrt(1.0 - x), 1.0, OUTER_TOL);
    } else if (x == 1.0) {
        // finite only for zero-mean f; evaluated in t = sqrt(1-y) against
        // the +1-anchored cache so the 0*infinity limit stays accurate
        if (std::fabs(mass_) > ZERO_MASS)
            throw QuadratureError("apply_T: divergent at x = 1 ([f,e_0] != 0)");
        auto outer_right = [&c, lam](double t) {
            return 2.0 * std::pow(t, -2.0 * lam) * std::pow(2.0 - t * t, -lam - 0.5)
                 * (-c.right.upto(t));
        };
        acc += integrate(outer_right, 0.0, 1.0, OUTER_TOL);
    }
    return -acc;
}

double apply_T(const TabulatedFunction& f, double lambda, double x)
{
    return TApplied(f, lambda)(x);
}

double apply_Tstar(const TabulatedFunction& f, double lambda, double x)
{
    if (!f.f) throw DomainError("apply_Tstar: empty function");
    check_x(x, "apply_Tstar");
    // T* is the reflection conjugate of T: T*f(x) = (T g)(-x), g(z) = f(-z)
    auto fn = f.f;
    TabulatedFunction g{[fn](double z) { return fn(-z); },
                        f.finite_at_plus_one, f.finite_at_minus_one};
    return TApplied(std::move(g), lambda)(-x);
}

RecurrenceResult recurrence_run(int d, int m_target, const std::vector<double>& xs)
{
    if (d == 2)
        throw DegenerateLambdaError("recurrence_run: d = 2 has lambda = 0, outside the operator's domain");
    if (d < 2) throw DomainError("recurrence_run: requires d >= 2");
    if (m_target < 1) throw DomainError("recurrence_run: requires m_target >= 1");
    if (m_target > 3)
        throw UnsupportedError("recurrence_run: m_target > 3 (nested quadrature cost grows per step)");
    for (double x : xs)
        if (!(x >= -1.0 && x < 1.0))
            throw DomainError("recurrence_run: evaluation points must lie in [-1,1)");

    const double lambda = 0.5 * (d - 2);
    const double f0 = beta_f(lambda - 0.5); // [e_0, e_0]
    const TabulatedFunction one{[](double) { return 1.0; }, true, true};

    RecurrenceResult out;
    TabulatedFunction cur = one;

    for (int j = 1; j <= m_target; ++j) {
        auto u = std::make_shared<const TApplied>(cur, lambda);
        const double cj = u->image_mass() / f0;

        const bool flip = (j == 1); // k_1 = c - Te_0; later steps are Tk - c
        auto direct = [u, cj, flip](double x) {
            const double v = (*u)(x);
            return flip ? cj - v : v - cj;
        };
        // Intermediate iterates feed the next T through thousands of
        // quadrature nodes; a Chebyshev proxy away from the possible
        // singularity at +1 collapses that cost, with direct evaluation
        // past the proxy's edge.
        auto cheb = std::make_shared<const ChebInterp>(direct, -1.0, 0.97, 120);
        auto hybrid = [cheb, direct](double x) {
            return x <= 0.97 ? (*cheb)(x) : direct(x);
        };
        const bool singular_plus = 2 * j <= d - 1;
        cur = TabulatedFunction{hybrid, true, !singular_plus};

        out.zero_mean_residuals.push_back(inner_lambda(cur, one, lambda, 1e-9));
        if (j == m_target) {
            out.values.reserve(xs.size());
            for (double x : xs) out.values.push_back(hybrid(x));
        }
    }
    return out;
}

double recurrence_k(int d, int m_target, double x)
{
    return recurrence_run(d, m_target, {x}).values.front();
}

} // namespace stps
