#pragma once

#include <functional>
#include <vector>

namespace stps {

struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss rules on [-1,1] by Golub-Welsch. gauss_gegenbauer integrates against
// the weight (1-x^2)^(lambda-1/2); gauss_legendre is the lambda = 1/2 case.
GaussRule gauss_legendre(int n);
GaussRule gauss_gegenbauer(int n, double lambda);

// Single Gauss7/Kronrod15 panel; *err receives the usual (200|G7-K15|)^1.5
// error estimate when non-null.
double gk15(const std::function<double(double)>& f, double a, double b, double* err = nullptr);

// Adaptive bisection on G7-K15 panels. Throws QuadratureError when the
// interval budget is exhausted before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, double rel_tol = 1e-12, int max_intervals = 8000);

// Antiderivative table for f on [a,b]: one adaptive pass stores a partition
// with prefix sums and a Chebyshev model of the antiderivative on each panel,
// after which int_a^s f is a table lookup that never touches f again. That
// matters when f itself is expensive: a query must not multiply its cost.
//
// anchor_power declares that f(a+tau) vanishes like tau^p at the left edge.
// The panel touching a then stores its model factored as tau^(p+1) Phi(tau)
// with Phi interpolated, so the model error shrinks with the true prefix and
// consumers may divide upto(s) by (s-a)^p without amplifying noise.
class CumulativeIntegral {
public:
    CumulativeIntegral(const std::function<double(double)>& f, double a, double b,
                       double abs_tol, double anchor_power = 0.0);
    double upto(double s) const;
    double total() const { return prefix_.back(); }
private:
    static constexpr int MODEL_N = 16; // interpolation nodes per panel
    double a_ = 0.0;
    double power_ = 0.0;         // declared vanishing order at the anchor
    std::vector<double> breaks_; // a = breaks_[0] < ... < breaks_[k] = b
    std::vector<double> prefix_; // prefix_[i] = int_a^breaks_[i] f
    std::vector<double> anti_;   // per panel: MODEL_N+1 model coefficients
};

} // namespace stps
