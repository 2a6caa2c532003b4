#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace stps {

// Chebyshev interpolant of f on [a,b] through n+1 Chebyshev-Lobatto nodes,
// evaluated by Clenshaw recurrence.
class ChebInterp {
public:
    ChebInterp(const std::function<double(double)>& f, double a, double b, int n)
        : a_(a), b_(b), coef_(static_cast<size_t>(n) + 1)
    {
        const double pi = std::numbers::pi;
        std::vector<double> fv(static_cast<size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) {
            double t = std::cos(pi * j / n);
            fv[static_cast<size_t>(j)] = f(0.5 * (a + b) + 0.5 * (b - a) * t);
        }
        for (int k = 0; k <= n; ++k) {
            double s = 0.5 * (fv[0] + (k % 2 == 0 ? 1.0 : -1.0) * fv[static_cast<size_t>(n)]);
            for (int j = 1; j < n; ++j)
                s += fv[static_cast<size_t>(j)] * std::cos(pi * k * j / n);
            coef_[static_cast<size_t>(k)] = 2.0 * s / n;
        }
        coef_[0] *= 0.5;
        coef_[static_cast<size_t>(n)] *= 0.5;
    }

    double operator()(double x) const
    {
        double t = (2.0 * x - (a_ + b_)) / (b_ - a_);
        double b1 = 0.0, b2 = 0.0;
        for (size_t k = coef_.size(); k-- > 1;) {
            double b0 = 2.0 * t * b1 - b2 + coef_[k];
            b2 = b1;
            b1 = b0;
        }
        return t * b1 - b2 + coef_[0];
    }

    double lo() const { return a_; }
    double hi() const { return b_; }

private:
    double a_, b_;
    std::vector<double> coef_;
};

} // namespace stps
