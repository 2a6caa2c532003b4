#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace stps {

// Function on [-1,1] with a declared continuity domain. Endpoints marked
// non-finite are never sampled directly; all quadratures below substitute
// away the closed endpoints, so integrable singularities there are fine.
struct TabulatedFunction {
    std::function<double(double)> f;
    bool finite_at_minus_one = true;
    bool finite_at_plus_one = true;
};

// [f,g] = int_{-1}^{1} f(x) g(x) (1-x^2)^(lambda-1/2) dx, lambda > 0.
double inner_lambda(const TabulatedFunction& f, const TabulatedFunction& g, double lambda,
                    double abs_tol = 1e-10);

// T f(x)  = -int_{-1}^{x} (1-y^2)^(-lambda-1/2) int_{-1}^{y} (1-z^2)^(lambda-1/2) f(z) dz dy
// T* f(x) = -int_{x}^{1}  (1-y^2)^(-lambda-1/2) int_{y}^{1}  (1-z^2)^(lambda-1/2) f(z) dz dy
//
// Reusable form: the inner antiderivative is cached at construction, so
// evaluating at many x costs one outer quadrature each. mass() is
// [f, e_0] with e_0 = 1; evaluation at the far endpoint (x = 1 for T)
// is finite only when that mass vanishes and is rejected otherwise.
class TApplied {
public:
    TApplied(TabulatedFunction f, double lambda);

    double operator()(double x) const;
    double mass() const { return mass_; }
    double lambda() const { return lambda_; }

    // [Tf, e_0], computed by exchanging the order of integration so it reads
    // straight off the cached antiderivatives. Sampling Tf pointwise instead
    // would integrate a function that carries its own quadrature error, which
    // the adaptive rule then refines against without profit.
    double image_mass() const;

private:
    struct Caches;
    std::shared_ptr<const Caches> caches_;
    double lambda_;
    double mass_;
};

// One-shot wrappers; each call rebuilds the inner cache.
double apply_T(const TabulatedFunction& f, double lambda, double x);
double apply_Tstar(const TabulatedFunction& f, double lambda, double x);

// Iterated-operator evaluation of the zero-mean kernels for lambda = (d-2)/2:
//   k_1 = [e_0, T e_0]/[e_0, e_0] - (T e_0)(x)
//   k_m = (T k_{m-1})(x) - [e_0, T k_{m-1}]/[e_0, e_0]     (m >= 2)
// Each step records the residual [k_m, e_0], which vanishes up to
// quadrature error and serves as an internal consistency gauge.
struct RecurrenceResult {
    std::vector<double> values;              // k_{m_target} at the requested points
    std::vector<double> zero_mean_residuals; // [k_j, e_0] for j = 1..m_target
};

RecurrenceResult recurrence_run(int d, int m_target, const std::vector<double>& xs);
double recurrence_k(int d, int m_target, double x);

} // namespace stps
