#include "spheretps/quadrature.hpp"
#include "spheretps/errors.hpp"
#include "spheretps/special_functions.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stps {

GaussRule gauss_gegenbauer(int n, double lambda)
{
    if (n < 1) throw DomainError("gauss rule: need at least one node");
    if (!(lambda > -0.5)) throw DomainError("gauss_gegenbauer: requires lambda > -1/2");

    // Jacobi matrix of the monic recurrence: alpha_k = 0 by symmetry,
    // beta_k = k(k+2lambda-1) / (4(k+lambda)(k+lambda-1)).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double beta = k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0));
        J(k, k - 1) = J(k - 1, k) = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = beta_f(lambda - 0.5);

    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.x[i] = es.eigenvalues()(i);
        double q0 = es.eigenvectors()(0, i);
        rule.w[i] = mu0 * q0 * q0;
    }
    return rule;
}

GaussRule gauss_legendre(int n)
{
    return gauss_gegenbauer(n, 0.5);
}

namespace {

// Gauss7/Kronrod15 nodes and weights (positive half; node 0 first).
constexpr double GK_NODE[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993944,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
constexpr double K15_W[8] = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299786,
    0.0229353220105292,
};
constexpr double G7_W[8] = {
    0.4179591836734694,
    0.0,
    0.3818300505051189,
    0.0,
    0.2797053914892767,
    0.0,
    0.1294849661688697,
    0.0,
};

} // namespace

double gk15(const std::function<double(double)>& f, double a, double b, double* err)
{
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double y0 = f(mid);
    double k15 = K15_W[0] * y0;
    double g7 = G7_W[0] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = h * GK_NODE[i];
        double yi = f(mid + dx) + f(mid - dx);
        k15 += K15_W[i] * yi;
        g7 += G7_W[i] * yi;
    }
    k15 *= h;
    g7 *= h;
    if (err) {
        double e = 200.0 * std::fabs(g7 - k15);
        *err = e * std::sqrt(e);
    }
    return k15;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_intervals)
{
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    struct Seg { double a, b; };
    std::vector<Seg> stack{{a, b}};
    const double span = b - a;
    double sum = 0.0;
    int used = 1;

    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        double err = 0.0;
        double v = gk15(f, s.a, s.b, &err);
        double local_tol = abs_tol * (s.b - s.a) / span + rel_tol * std::fabs(v);
        if (err <= local_tol || (s.b - s.a) < 1e-14 * span) {
            sum += v;
            continue;
        }
        if (used + 2 > max_intervals)
            throw QuadratureError("integrate: interval budget exhausted before tolerance");
        double mid = 0.5 * (s.a + s.b);
        stack.push_back({s.a, mid});
        stack.push_back({mid, s.b});
        used += 2;
    }
    return sign * sum;
}

namespace {

// First-kind Chebyshev roots and the value->coefficient cosine transform for
// a fixed small N; roots stay strictly inside the panel, so functions that
// may not admit endpoint evaluation are still fair game.
struct ChebModel {
    static constexpr int N = 16;
    double node[N];      // cos((2i+1) pi / (2N)), descending
    double cosk[N][N];   // cos(k theta_i)
    ChebModel()
    {
        for (int i = 0; i < N; ++i) {
            const double theta = (2 * i + 1) * std::numbers::pi / (2 * N);
            node[i] = std::cos(theta);
            for (int k = 0; k < N; ++k) cosk[i][k] = std::cos(k * theta);
        }
    }
};
const ChebModel CHEB;

// 12-point Gauss rule for int_0^1 z^p g(z) dz with the z^p weight built in,
// from Golub-Welsch on the Jacobi (alpha = 0, beta = p) recurrence.
struct JacobiRule {
    static constexpr int M = 12;
    double z[M];
    double w[M];
    explicit JacobiRule(double p)
    {
        Eigen::Matrix<double, M, M> J = Eigen::Matrix<double, M, M>::Zero();
        for (int n = 0; n < M; ++n) {
            const double q = 2.0 * n + p;
            J(n, n) = (n == 0) ? p / (p + 2.0) : p * p / (q * (q + 2.0));
            if (n >= 1) {
                const double r = 2.0 * n * (n + p) / q;
                J(n, n - 1) = J(n - 1, n) = std::sqrt(r * r / (q * q - 1.0));
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, M, M>> es(J);
        for (int j = 0; j < M; ++j) {
            const double v0 = es.eigenvectors()(0, j);
            z[j] = 0.5 * (1.0 + es.eigenvalues()(j));
            w[j] = v0 * v0 / (p + 1.0);
        }
    }
};

// Clenshaw for b[0]/2 + sum_{k>=1} b[k] T_k(x), with n coefficients.
double clenshaw(const double* b, int n, double x)
{
    double u1 = 0.0, u2 = 0.0;
    for (int k = n - 1; k >= 1; --k) {
        const double u = 2.0 * x * u1 - u2 + b[k];
        u2 = u1;
        u1 = u;
    }
    return x * u1 - u2 + 0.5 * b[0];
}

} // namespace

CumulativeIntegral::CumulativeIntegral(const std::function<double(double)>& f, double a,
                                       double b, double abs_tol, double anchor_power)
{
    if (!(b > a)) throw DomainError("CumulativeIntegral: requires b > a");
    if (anchor_power < 0.0)
        throw DomainError("CumulativeIntegral: anchor_power must be >= 0");

    a_ = a;
    power_ = anchor_power;

    struct Seg { double a, b; };
    std::vector<Seg> stack{{a, b}};
    std::vector<Seg> done;
    const double span = b - a;
    int used = 1;

    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        double err = 0.0;
        gk15(f, s.a, s.b, &err);
        if (err <= abs_tol * (s.b - s.a) / span || (s.b - s.a) < 1e-14 * span) {
            done.push_back(s);
            continue;
        }
        if (used + 2 > 20000)
            throw QuadratureError("CumulativeIntegral: interval budget exhausted");
        double mid = 0.5 * (s.a + s.b);
        stack.push_back({s.a, mid});
        stack.push_back({mid, s.b});
        used += 2;
    }
    std::sort(done.begin(), done.end(), [](const Seg& l, const Seg& r) { return l.a < r.a; });

    constexpr int N = MODEL_N;
    breaks_.reserve(done.size() + 1);
    prefix_.reserve(done.size() + 1);
    anti_.reserve(done.size() * (N + 1));
    breaks_.push_back(a);
    prefix_.push_back(0.0);
    double acc = 0.0;
    for (size_t pi = 0; pi < done.size(); ++pi) {
        const Seg& s = done[pi];
        const double mid = 0.5 * (s.a + s.b);
        const double h = 0.5 * (s.b - s.a);

        double y[N];
        for (int i = 0; i < N; ++i) y[i] = f(mid + h * CHEB.node[i]);

        if (pi == 0 && anchor_power > 0.0) {
            // On the panel touching the anchor, a plain polynomial model of
            // the antiderivative carries an error floor that does not vanish
            // at a, which a consumer dividing by (s-a)^p would amplify without
            // bound. Factor the declared zero out instead: with
            // f = (s-a)^p phi, the prefix is (s-a)^(p+1) Phi(s-a) where
            // Phi(tau) = int_0^1 z^p phi(tau z) dz, so the stored model's
            // error scales with the true local value.
            const double w = s.b - s.a;
            const JacobiRule gj(anchor_power);
            double phi[N];
            for (int i = 0; i < N; ++i) {
                const double tau = (mid - a) + h * CHEB.node[i];
                phi[i] = y[i] / std::pow(tau, anchor_power);
            }
            double c[N];
            for (int k = 0; k < N; ++k) {
                double t = 0.0;
                for (int i = 0; i < N; ++i) t += phi[i] * CHEB.cosk[i][k];
                c[k] = 2.0 * t / N;
            }
            double big[N];
            for (int i = 0; i < N; ++i) {
                const double tau = (mid - a) + h * CHEB.node[i];
                double v = 0.0;
                for (int j = 0; j < JacobiRule::M; ++j)
                    v += gj.w[j] * clenshaw(c, N, 2.0 * tau * gj.z[j] / w - 1.0);
                big[i] = v;
            }
            double C[N + 1];
            for (int k = 0; k < N; ++k) {
                double t = 0.0;
                for (int i = 0; i < N; ++i) t += big[i] * CHEB.cosk[i][k];
                C[k] = 2.0 * t / N;
            }
            C[N] = 0.0;
            for (int k = 0; k <= N; ++k) anti_.push_back(C[k]);
            acc += std::pow(w, anchor_power + 1.0) * clenshaw(C, N, 1.0);
        } else {
            double c[N];
            for (int k = 0; k < N; ++k) {
                double t = 0.0;
                for (int i = 0; i < N; ++i) t += y[i] * CHEB.cosk[i][k];
                c[k] = 2.0 * t / N;
            }

            // antiderivative series, scaled by h and anchored at the panel start
            double ad[N + 1];
            ad[1] = h * 0.5 * (c[0] - c[2]);
            for (int k = 2; k < N; ++k)
                ad[k] = h * (c[k - 1] - (k + 1 < N ? c[k + 1] : 0.0)) / (2.0 * k);
            ad[N] = h * c[N - 1] / (2.0 * N);
            double at_left = 0.0;
            for (int k = 1; k <= N; ++k) at_left += (k % 2 ? -ad[k] : ad[k]);
            ad[0] = -2.0 * at_left;

            for (int k = 0; k <= N; ++k) anti_.push_back(ad[k]);
            acc += clenshaw(ad, N + 1, 1.0);
        }
        breaks_.push_back(s.b);
        prefix_.push_back(acc);
    }
}

double CumulativeIntegral::upto(double s) const
{
    if (s <= breaks_.front()) return 0.0;
    if (s >= breaks_.back()) return prefix_.back();
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    const size_t i = static_cast<size_t>(it - breaks_.begin()) - 1;
    const double lo = breaks_[i], hi = breaks_[i + 1];
    const double xi = (2.0 * s - lo - hi) / (hi - lo);
    if (i == 0 && power_ > 0.0)
        return std::pow(s - a_, power_ + 1.0) * clenshaw(&anti_[0], MODEL_N, xi);
    return prefix_[i] + clenshaw(&anti_[i * (MODEL_N + 1)], MODEL_N + 1, xi);
}

} // namespace stps
