#include "spheretps/coefficients.hpp"
#include "spheretps/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace stps {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int factorial(int n)
{
    cpp_int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// double factorial with (-1)!! = 0!! = 1
cpp_int dfac(int n)
{
    cpp_int f = 1;
    for (int i = n; i >= 2; i -= 2) f *= i;
    return f;
}

cpp_int binom(int n, int k)
{
    if (k < 0 || k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

cpp_rational pow2(int e)
{
    cpp_int p = cpp_int(1) << e;
    return cpp_rational(p);
}

// f_{k+1/2} with the common factor pi stripped: (2k+1)!!/(2k+2)!!
cpp_rational f_half_over_pi(int k)
{
    return cpp_rational(dfac(2 * k + 1), dfac(2 * k + 2));
}

// f_k = 2 (2k)!!/(2k+1)!!
cpp_rational f_int(int k)
{
    return cpp_rational(2 * dfac(2 * k), dfac(2 * k + 1));
}

cpp_rational G_at_one_rat(int nu, int kappa)
{
    return pow2(2 * kappa - nu + 1) * cpp_rational(factorial(kappa) * factorial(kappa - nu),
                                                   factorial(2 * kappa - nu + 1));
}

cpp_rational log_moment_rat(int kappa)
{
    cpp_rational s = 0;
    for (int nu = 0; nu <= kappa; ++nu) {
        cpp_int den = cpp_int(2 * kappa - nu + 1) * (2 * kappa - nu + 1);
        cpp_rational term(binom(kappa, nu), den);
        s += (nu % 2 == 0) ? term : -term;
    }
    s *= pow2(2 * kappa + 1);
    return (kappa % 2 == 0) ? -s : s;
}

} // namespace

EvenCoeffs even_coeffs(int lambda)
{
    if (lambda < 1) throw DomainError("even_coeffs: requires lambda >= 1");
    if (lambda > 30) throw OverflowError("even_coeffs: lambda > 30 not supported");

    const cpp_rational ratio_a(dfac(2 * lambda - 1), dfac(2 * lambda)); // (2l-1)!!/(2l)!!
    const cpp_rational ratio_b(dfac(2 * lambda - 2), dfac(2 * lambda - 1));

    std::vector<cpp_rational> a(lambda + 1), b(lambda + 1), c(lambda + 1), dd(lambda);
    for (int j = 1; j <= lambda; ++j) {
        a[j] = cpp_rational(dfac(2 * j - 2), dfac(2 * j - 1)) * ratio_a;
        b[j] = cpp_rational(dfac(2 * j - 1), dfac(2 * j - 2)) * ratio_b / (2 * j - 1);
        c[j] = ratio_a * b[j]; // c_j = a_0 b_j with a_0 = a_1 = (2l-1)!!/(2l)!!
    }
    a[0] = a[1];
    for (int j = 1; j <= lambda - 1; ++j)
        dd[j] = (a[lambda - j] - c[j + 1]) / (2 * j);

    // Zero mean fixes the constant: integrating the x*v terms by parts gives
    //   int x v (1-x^2)^P dx = f_{P+1/2} / (2(P+1)),
    // so C = (sum_j c_j f_{l-j+1/2}/(2(l-j+1)) + sum_j d_j f_{l-j-1/2}) / f_{l-1/2};
    // every f here carries the same factor pi, which cancels exactly.
    cpp_rational num = 0;
    for (int j = 1; j <= lambda; ++j)
        num += c[j] * f_half_over_pi(lambda - j) / (2 * (lambda - j + 1));
    for (int j = 1; j <= lambda - 1; ++j)
        num += dd[j] * f_half_over_pi(lambda - j - 1);
    const cpp_rational C = num / f_half_over_pi(lambda - 1);

    EvenCoeffs out;
    out.lambda = lambda;
    out.a.resize(lambda + 1);
    out.b.resize(lambda);
    out.c.resize(lambda);
    out.dcoef.resize(lambda - 1);
    for (int j = 0; j <= lambda; ++j) out.a[j] = a[j].convert_to<double>();
    for (int j = 1; j <= lambda; ++j) {
        out.b[j - 1] = b[j].convert_to<double>();
        out.c[j - 1] = c[j].convert_to<double>();
    }
    for (int j = 1; j <= lambda - 1; ++j) out.dcoef[j - 1] = dd[j].convert_to<double>();
    out.Cconst = C.convert_to<double>();
    return out;
}

OddCoeffs odd_coeffs(int kappa)
{
    if (kappa < 0) throw DomainError("odd_coeffs: requires kappa >= 0");
    if (kappa > 30) throw OverflowError("odd_coeffs: kappa > 30 not supported");

    std::vector<cpp_rational> g(kappa + 1);
    g[0] = cpp_rational(-1, 2 * kappa + 1);
    const cpp_int f2k1 = factorial(2 * kappa + 1);
    for (int nu = 1; nu <= kappa; ++nu)
        g[nu] = pow2(nu) * cpp_rational(binom(kappa, nu) * factorial(nu - 1) * factorial(2 * kappa - nu), f2k1);

    // D from zero mean: (sum_nu g_nu G^nu(1) + g_0 * log-moment) / f_kappa
    cpp_rational num = g[0] * log_moment_rat(kappa);
    for (int nu = 1; nu <= kappa; ++nu)
        num += g[nu] * G_at_one_rat(nu, kappa);
    const cpp_rational D = num / f_int(kappa);

    OddCoeffs out;
    out.kappa = kappa;
    out.g.resize(kappa + 1);
    for (int nu = 0; nu <= kappa; ++nu) out.g[nu] = g[nu].convert_to<double>();
    out.Dconst = D.convert_to<double>();
    return out;
}

double G_at_one(int nu, int kappa)
{
    if (kappa < 0 || nu < 0 || nu > kappa)
        throw DomainError("G_at_one: requires 0 <= nu <= kappa");
    return G_at_one_rat(nu, kappa).convert_to<double>();
}

double J_sum(int beta, int alpha)
{
    if (beta < 0) throw DomainError("J_sum: requires beta >= 0");
    if (alpha >= 0 && alpha <= beta)
        throw DomainError("J_sum: denominator alpha-nu vanishes for nu = alpha");
    cpp_int den = 1;
    for (int i = 0; i <= beta; ++i) den *= alpha - i;
    cpp_rational j(factorial(beta), den);
    if (beta % 2 != 0) j = -j;
    return j.convert_to<double>();
}

double log_moment(int kappa)
{
    if (kappa < 0) throw DomainError("log_moment: requires kappa >= 0");
    return log_moment_rat(kappa).convert_to<double>();
}

} // namespace stps
