#pragma once

#include <vector>

namespace stps {

// Coefficients of the even-dimension m = 1 closed form, d = 2*lambda + 2:
//   k(x) = x*v * sum_{j=1}^lambda c_j (1-x^2)^(1/2-j)
//        + sum_{j=1}^{lambda-1} d_j (1-x^2)^(-j) - C
// with v = pi/2 + arcsin(x). All entries are computed in exact rational
// arithmetic and rounded once at the end.
struct EvenCoeffs {
    int lambda = 0;
    std::vector<double> a;     // a_0 .. a_lambda (a_0 = a_1 by definition)
    std::vector<double> b;     // b_1 .. b_lambda
    std::vector<double> c;     // c_1 .. c_lambda, c_j = a_0 * b_j
    std::vector<double> dcoef; // d_1 .. d_{lambda-1}
    double Cconst = 0.0;
};

// Coefficients of the odd-dimension m = 1 closed form, d = 2*kappa + 3:
//   k(x) = g_0 * ln((1-x)/2) + sum_{nu=1}^kappa g_nu (1-x)^(-nu) - D
// with g_0 = -1/(2*kappa+1).
struct OddCoeffs {
    int kappa = 0;
    std::vector<double> g; // g_0 .. g_kappa
    double Dconst = 0.0;
};

EvenCoeffs even_coeffs(int lambda); // lambda in [1, 30]
OddCoeffs odd_coeffs(int kappa);    // kappa in [0, 30]

// Exact value of int_{-1}^1 (1-x^2)^kappa (1-x)^(-nu) dx
// = 2^(2kappa-nu+1) kappa! (kappa-nu)! / (2kappa-nu+1)!.
double G_at_one(int nu, int kappa);

// J_{beta,alpha} = sum_{nu=0}^beta binom(beta,nu) (-1)^nu / (alpha-nu)
// = (-1)^beta beta! / (alpha (alpha-1) ... (alpha-beta)).
double J_sum(int beta, int alpha);

// int_{-1}^1 (1-x^2)^kappa ln((1-x)/2) dx
// = 2^(2kappa+1) (-1)^(kappa+1) sum_nu binom(kappa,nu) (-1)^nu / (2kappa-nu+1)^2.
double log_moment(int kappa);

} // namespace stps
