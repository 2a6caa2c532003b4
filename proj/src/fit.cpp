#include "spheretps/fit.hpp"
#include "spheretps/errors.hpp"
#include "spheretps/special_functions.hpp"

#include <cmath>
#include <string>

namespace stps {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double clamp_xi(double v)
{
    return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v);
}

// Associated Legendre P_n^m without the (-1)^m factor, by the stable
// upward recurrences from P_m^m = (2m-1)!! (1-t^2)^(m/2).
double assoc_legendre(int n, int m, double t)
{
    double pmm = 1.0;
    if (m > 0) {
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        double fact = 1.0;
        for (int i = 1; i <= m; ++i) {
            pmm *= fact * s;
            fact += 2.0;
        }
    }
    if (n == m) return pmm;
    double pm1 = t * (2 * m + 1) * pmm;
    if (n == m + 1) return pm1;
    double p = 0.0;
    for (int k = m + 2; k <= n; ++k) {
        p = (t * (2 * k - 1) * pm1 - (k + m - 1) * pmm) / (k - m);
        pmm = pm1;
        pm1 = p;
    }
    return p;
}

double factorial_ratio(int n, int m) // (n-m)! / (n+m)!
{
    double r = 1.0;
    for (int i = n - m + 1; i <= n + m; ++i) r /= i;
    return r;
}

} // namespace

PointSet make_point_set(int d, std::vector<std::vector<double>> raw)
{
    if (d < 2) throw DomainError("point set: requires d >= 2");
    for (size_t i = 0; i < raw.size(); ++i) {
        if (static_cast<int>(raw[i].size()) != d)
            throw DimensionMismatchError("point set: point " + std::to_string(i + 1)
                                         + " has " + std::to_string(raw[i].size())
                                         + " coordinates, expected " + std::to_string(d));
        const double norm = std::sqrt(dot(raw[i], raw[i]));
        if (std::fabs(norm - 1.0) > 1e-6)
            throw Error(ErrorKind::Data, "point set: point " + std::to_string(i + 1)
                                             + " is off the unit sphere (|x| = "
                                             + std::to_string(norm) + ")");
        for (double& c : raw[i]) c /= norm;
    }
    for (size_t i = 0; i < raw.size(); ++i)
        for (size_t j = i + 1; j < raw.size(); ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) {
                const double diff = raw[i][k] - raw[j][k];
                s += diff * diff;
            }
            if (std::sqrt(s) <= 1e-9)
                throw DuplicatePointsError("point set: points " + std::to_string(i + 1)
                                           + " and " + std::to_string(j + 1) + " coincide");
        }
    return PointSet{d, std::move(raw)};
}

TrendBasis trend_basis(int d, int ell)
{
    if (d < 2) throw DomainError("trend_basis: requires d >= 2");
    if (ell < 0) throw DomainError("trend_basis: requires ell >= 0");

    TrendBasis tb;
    tb.d = d;
    tb.ell = ell;
    if (ell == 0) {
        tb.q = 1;
        tb.basis_id = "constant";
        tb.u.push_back([](const std::vector<double>&) { return 1.0; });
        return tb;
    }
    if (d != 3)
        throw UnsupportedError("trend_basis: ell >= 1 is implemented for d = 3 only");

    tb.basis_id = "rsh3:" + std::to_string(ell);
    for (int n = 0; n <= ell; ++n) {
        const double c0 = std::sqrt(2.0 * n + 1.0);
        tb.u.push_back([n, c0](const std::vector<double>& x) {
            return c0 * assoc_legendre(n, 0, x[2]);
        });
        for (int m = 1; m <= n; ++m) {
            const double cm = std::sqrt(2.0 * (2.0 * n + 1.0) * factorial_ratio(n, m));
            tb.u.push_back([n, m, cm](const std::vector<double>& x) {
                return cm * assoc_legendre(n, m, x[2]) * std::cos(m * std::atan2(x[1], x[0]));
            });
            tb.u.push_back([n, m, cm](const std::vector<double>& x) {
                return cm * assoc_legendre(n, m, x[2]) * std::sin(m * std::atan2(x[1], x[0]));
            });
        }
    }
    tb.q = static_cast<int>(tb.u.size());
    return tb;
}

namespace {

void validate_problem(const FitProblem& prob)
{
    const int n = prob.pts.n();
    if (prob.pts.d != prob.spec.d)
        throw DimensionMismatchError("fit: point set dimension does not match the kernel spec");
    if (static_cast<int>(prob.y.size()) != n)
        throw DimensionMismatchError("fit: y has " + std::to_string(prob.y.size())
                                     + " entries for " + std::to_string(n) + " points");
    if (prob.p < 0 || prob.p > n)
        throw DomainError("fit: split index p must lie in [0, n]");
    if (prob.mu < 0.0) throw DomainError("fit: requires mu >= 0");
    if (prob.p > 0 && !(prob.mu > 0.0))
        throw DomainError("fit: smoothing points present (p > 0) but mu = 0");
    if (prob.R.size() != 0) {
        if (prob.R.rows() != prob.p || prob.R.cols() != prob.p)
            throw DimensionMismatchError("fit: R must be p x p");
        const double scale = prob.R.cwiseAbs().maxCoeff();
        if ((prob.R - prob.R.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale))
            throw DomainError("fit: R must be symmetric");
    }
    if (singular_at_one(prob.spec.d, prob.spec.m))
        throw SingularKernelDiagonalError(
            "fit: kernel diagonal k(1) diverges for d = " + std::to_string(prob.spec.d)
            + ", m = " + std::to_string(prob.spec.m) + "; fitting requires 2m >= d");
}

} // namespace

AssembledSystem assemble(const FitProblem& prob)
{
    validate_problem(prob);
    const int n = prob.pts.n();
    const TrendBasis tb = trend_basis(prob.spec.d, prob.spec.ell);

    AssembledSystem sys;
    sys.K.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            // the diagonal is the coincident-point value k(1) by definition;
            // off-diagonal dot products are clamped against rounding
            const double xi = (i == j) ? 1.0 : clamp_xi(dot(prob.pts.points[i], prob.pts.points[j]));
            const double v = kernel_xi(prob.spec, xi);
            sys.K(i, j) = v;
            sys.K(j, i) = v;
        }

    sys.C.resize(tb.q, n);
    for (int r = 0; r < tb.q; ++r)
        for (int i = 0; i < n; ++i) sys.C(r, i) = tb.u[r](prob.pts.points[i]);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
    qr.setThreshold(1e-10);
    qr.compute(sys.C.transpose());
    if (qr.rank() < tb.q)
        throw NotUnisolventError("fit: points are not unisolvent for the trend space (rank "
                                 + std::to_string(qr.rank()) + " < q = " + std::to_string(tb.q) + ")");

    sys.W = Eigen::MatrixXd::Zero(n, n);
    if (prob.p > 0) {
        if (prob.R.size() != 0)
            sys.W.topLeftCorner(prob.p, prob.p) = prob.R;
        else
            sys.W.topLeftCorner(prob.p, prob.p) = Eigen::MatrixXd::Identity(prob.p, prob.p);
    }
    return sys;
}

SplineModel solve_fit(const FitProblem& prob, const AssembledSystem& sys)
{
    const int n = prob.pts.n();
    const int q = static_cast<int>(sys.C.rows());

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + q, n + q);
    A.topLeftCorner(n, n) = sys.K + prob.mu * sys.W;
    A.topRightCorner(n, q) = sys.C.transpose();
    A.bottomLeftCorner(q, n) = sys.C;

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + q);
    for (int i = 0; i < n; ++i) rhs[i] = prob.y[i];

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const Eigen::VectorXd sol = lu.solve(rhs);
    const double rcond = lu.rcond();
    if (!sol.allFinite() || rcond < 1e-15)
        throw SingularSystemError("fit: saddle system is numerically singular (rcond = "
                                  + std::to_string(rcond) + ")");

    const Eigen::VectorXd a = sol.head(n);
    const Eigen::VectorXd b = sol.tail(q);
    const double y_scale = 1.0 + (n > 0 ? std::fabs(rhs.head(n).cwiseAbs().maxCoeff()) : 0.0);
    const double res_sys = (A.topRows(n) * sol - rhs.head(n)).cwiseAbs().maxCoeff();
    const double res_side = q > 0 ? (sys.C * a).cwiseAbs().maxCoeff() : 0.0;
    if (res_sys > 1e-8 * y_scale || res_side > 1e-8)
        throw SingularSystemError("fit: solution residuals exceed bounds (system "
                                  + std::to_string(res_sys) + ", side condition "
                                  + std::to_string(res_side) + ", rcond "
                                  + std::to_string(rcond) + ")");

    SplineModel model;
    model.spec = prob.spec;
    model.centers = prob.pts;
    model.a.assign(a.data(), a.data() + n);
    model.b.assign(b.data(), b.data() + q);
    model.basis_id = trend_basis(prob.spec.d, prob.spec.ell).basis_id;
    return model;
}

SplineModel solve_fit(const FitProblem& prob)
{
    return solve_fit(prob, assemble(prob));
}

std::vector<double> evaluate(const SplineModel& model, const PointSet& query)
{
    if (query.d != model.spec.d)
        throw DimensionMismatchError("evaluate: query dimension does not match the model");
    if (static_cast<int>(model.a.size()) != model.centers.n())
        throw DimensionMismatchError("evaluate: model has " + std::to_string(model.a.size())
                                     + " coefficients for " + std::to_string(model.centers.n())
                                     + " centers");
    const TrendBasis tb = trend_basis(model.spec.d, model.spec.ell);
    if (static_cast<int>(model.b.size()) != tb.q)
        throw DimensionMismatchError("evaluate: trend coefficient count does not match the basis");

    std::vector<double> out;
    out.reserve(query.points.size());
    for (const auto& z : query.points) {
        double s = 0.0;
        for (int i = 0; i < model.centers.n(); ++i)
            s += model.a[static_cast<size_t>(i)]
               * kernel_xi(model.spec, clamp_xi(dot(z, model.centers.points[static_cast<size_t>(i)])));
        for (int r = 0; r < tb.q; ++r) s += model.b[static_cast<size_t>(r)] * tb.u[static_cast<size_t>(r)](z);
        out.push_back(s);
    }
    return out;
}

} // namespace stps
