#pragma once

#include "spheretps/kernel.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace stps {

// Points on S^(d-1). make_point_set validates raw coordinates (norms within
// 1e-6 of 1, pairwise chordal distance > 1e-9), then normalizes exactly.
struct PointSet {
    int d = 0;
    std::vector<std::vector<double>> points;
    int n() const { return static_cast<int>(points.size()); }
};

PointSet make_point_set(int d, std::vector<std::vector<double>> raw);

// Trend space: spherical polynomials of degree <= ell. ell = 0 gives the
// constant for any d; ell >= 1 is available for d = 3 as real spherical
// harmonics, normalized so the constant is 1 and each degree-n block
// satisfies sum_j u_j(x) u_j(y) = (2n+1) P_n(x.y).
struct TrendBasis {
    int d = 0;
    int ell = 0;
    int q = 0;
    std::string basis_id;
    std::vector<std::function<double(const std::vector<double>&)>> u;
};

TrendBasis trend_basis(int d, int ell);

// Mixed interpolation / penalized least squares: the first p points carry
// weighted residuals (weight block R, default identity), points p+1..n are
// interpolated exactly.
struct FitProblem {
    KernelSpec spec;
    PointSet pts;
    std::vector<double> y;
    double mu = 0.0;
    int p = 0;
    Eigen::MatrixXd R; // p x p symmetric positive definite; empty means identity
};

struct AssembledSystem {
    Eigen::MatrixXd K; // n x n kernel matrix
    Eigen::MatrixXd C; // q x n trend evaluations
    Eigen::MatrixXd W; // n x n blockdiag(R, 0)
};

AssembledSystem assemble(const FitProblem& prob);

struct SplineModel {
    KernelSpec spec;
    PointSet centers;
    std::vector<double> a; // kernel coefficients, length n, C a = 0
    std::vector<double> b; // trend coefficients, length q
    std::string basis_id;
};

// Solves [[K + mu W, C^T], [C, 0]] [a; b] = [y; 0] by dense LU and verifies
// the stated residual bounds before returning.
SplineModel solve_fit(const FitProblem& prob);
SplineModel solve_fit(const FitProblem& prob, const AssembledSystem& sys);

std::vector<double> evaluate(const SplineModel& model, const PointSet& query);

} // namespace stps
