#include "spheretps/kernel.hpp"
#include "spheretps/coefficients.hpp"
#include "spheretps/errors.hpp"
#include "spheretps/quadrature.hpp"
#include "spheretps/special_functions.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

namespace stps {

namespace {

constexpr double XI_SLACK = 1e-12;
constexpr long double PI_L = std::numbers::pi_v<long double>;
constexpr long double ZETA3_L = 1.2020569031595942854L;

void validate_spec(const KernelSpec& spec)
{
    if (spec.d < 2) throw DomainError("kernel spec: requires d >= 2");
    if (spec.m < 1) throw DomainError("kernel spec: requires m >= 1");
    if (spec.ell < 0 || spec.ell > 1000) throw DomainError("kernel spec: requires 0 <= ell <= 1000");
}

double checked_xi(double xi, const char* where)
{
    if (!(std::fabs(xi) <= 1.0 + XI_SLACK))
        throw DomainError(std::string(where) + ": |xi| > 1");
    return xi < -1.0 ? -1.0 : (xi > 1.0 ? 1.0 : xi);
}

// v = pi/2 + arcsin(x), computed as 2 asin(sqrt((1+x)/2)) which stays
// accurate where v -> 0 (x near -1).
long double v_of(long double x)
{
    return 2.0L * ::asinl(::sqrtl(0.5L * (1.0L + x)));
}

// ln((1-x)/2) without cancellation near x = -1 (where u -> 1)
long double log_u(long double x)
{
    if (x < 0.0L) return ::log1pl(-0.5L * (1.0L + x));
    return ::logl(0.5L * (1.0L - x));
}

long double dimN_ld(int d, long double n)
{
    long double v = (2.0L * n + d - 2) / (n + d - 2);
    for (int i = 1; i <= d - 2; ++i)
        v *= (n + i) / static_cast<long double>(i);
    return v;
}

// N_{d,n} [n(n+d-2)]^{-m}
long double series_coeff(int d, int m, long double n)
{
    const long double q = n * (n + d - 2);
    long double qp = 1.0L;
    for (int i = 0; i < m; ++i) qp *= q;
    return dimN_ld(d, n) / qp;
}

// ---- interior xi: mollified partial sums ------------------------------

constexpr int WINDOW_DELTA = 16;

// Taper eta(s) = I_{1-s}(delta,delta) = (1-s)^delta sum_{k<delta} binom(delta-1+k,k) s^k,
// a C^(delta-1) descent from eta(0)=1 to eta(1)=0.
long double window(long double s)
{
    long double p = 1.0L;
    for (int i = 0; i < WINDOW_DELTA; ++i) p *= (1.0L - s);
    long double sum = 0.0L, b = 1.0L, sk = 1.0L;
    for (int k = 0; k < WINDOW_DELTA; ++k) {
        sum += b * sk;
        sk *= s;
        b *= static_cast<long double>(WINDOW_DELTA + k) / (k + 1);
    }
    return p * sum;
}

long double windowed_sum(int d, int m, int ell, double xi, long long N)
{
    const long double lam = 0.5L * (d - 2);
    const long long N0 = N / 2;
    const long double x = xi;

    long double acc = 0.0L;
    long double wm1 = 1.0L; // W_0
    long double w = x;      // W_1
    for (long long n = 1; n <= N; ++n) {
        if (n >= 2) {
            long double next = (2.0L * (n + lam - 1.0L) * x * w - (n - 1.0L) * wm1)
                             / (n + 2.0L * lam - 1.0L);
            wm1 = w;
            w = next;
        }
        if (n <= ell) continue;
        long double g = 1.0L;
        if (n > N0) g = window((n - N0) / static_cast<long double>(N - N0));
        acc += g * series_coeff(d, m, n) * w;
    }
    return acc;
}

double series_interior(int d, int m, int ell, double xi, SeriesControl& ctl)
{
    const long long max_n = ctl.max_terms;
    double best = 0.0, best_diff = HUGE_VAL;
    long long best_N = 0;
    double prev = 0.0, prev_diff = HUGE_VAL;
    bool have_prev = false;

    for (long long N = 256; N <= max_n; N *= 2) {
        double sigma = static_cast<double>(windowed_sum(d, m, ell, xi, N));
        if (have_prev) {
            double diff = std::fabs(sigma - prev);
            if (diff <= 0.5 * ctl.abs_tol) {
                ctl.used_terms = N;
                ctl.tail_estimate = diff;
                return sigma;
            }
            if (diff < best_diff) {
                best = sigma;
                best_diff = diff;
                best_N = N;
            } else if (diff > prev_diff && best_diff <= ctl.abs_tol) {
                // successive differences rising again: the rounding floor of
                // the mollified sums has been reached, keep the best iterate
                ctl.used_terms = best_N;
                ctl.tail_estimate = best_diff;
                return best;
            }
            prev_diff = diff;
        }
        prev = sigma;
        have_prev = true;
    }
    if (best_diff <= ctl.abs_tol) {
        ctl.used_terms = best_N;
        ctl.tail_estimate = best_diff;
        return best;
    }
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "k_series: tolerance %.3g not reached within %lld terms (best diff %.3g)",
                  ctl.abs_tol, max_n, best_diff);
    throw NonConvergentError(msg);
}

// ---- xi = -1: Euler transform of the alternating series ----------------

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int binom_big(long long n, long long k)
{
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    cpp_int b = 1;
    for (long long i = 1; i <= k; ++i) {
        b *= n - k + i;
        b /= i;
    }
    return b;
}

cpp_rational coeff_rat(int d, int m, long long n)
{
    cpp_int num = binom_big(n + d - 1, n) - binom_big(n + d - 3, n - 2);
    cpp_int den = 1;
    cpp_int q = cpp_int(n) * (n + d - 2);
    for (int i = 0; i < m; ++i) den *= q;
    return cpp_rational(num, den);
}

double series_minus_one(int d, int m, int ell, SeriesControl& ctl)
{
    // sum_{n>ell} (-1)^n c_n = (-1)^(ell+1) sum_j (-1)^j a_j with a_j = c_{ell+1+j};
    // Euler transform: sum_j (-1)^j a_j = sum_k (-1)^k (Delta^k a)_0 / 2^(k+1).
    // Exact rationals keep the difference table stable even when the c_n grow.
    for (int K = 64; K <= 256; K *= 2) {
        std::vector<cpp_rational> row(static_cast<size_t>(K));
        for (int j = 0; j < K; ++j)
            row[static_cast<size_t>(j)] = coeff_rat(d, m, ell + 1 + j);

        cpp_rational S = 0;
        cpp_rational pow2k = 2; // 2^(k+1)
        double last = HUGE_VAL;
        for (int k = 0; k < K; ++k) {
            cpp_rational term = row[0] / pow2k;
            if (k % 2 != 0) term = -term;
            S += term;
            last = std::fabs(term.convert_to<double>());
            for (int j = 0; j + k + 1 < K; ++j)
                row[static_cast<size_t>(j)] = row[static_cast<size_t>(j) + 1] - row[static_cast<size_t>(j)];
            pow2k *= 2;
        }
        double value = S.convert_to<double>();
        if (ell % 2 == 0) value = -value; // (-1)^(ell+1)
        if (last <= 1e-17 * (1.0 + std::fabs(value))) {
            ctl.used_terms = K;
            ctl.tail_estimate = last;
            return value;
        }
    }
    throw NonConvergentError("k_series: Euler transform did not settle at xi = -1");
}

// ---- xi = +1: direct sum plus Euler-Maclaurin tail ----------------------

double series_plus_one(int d, int m, int ell, SeriesControl& ctl)
{
    const long long N = 65536;
    long double s = 0.0L;
    for (long long n = ell + 1; n < N; ++n)
        s += series_coeff(d, m, n);

    auto f = [d, m](long double x) { return series_coeff(d, m, x); };

    // int_N^inf f dx under x = N/t, with 64-point Gauss-Legendre on (0,1);
    // the transformed integrand is a smooth rational function of t.
    static const GaussRule gl = gauss_legendre(64);
    long double integral = 0.0L;
    for (size_t i = 0; i < gl.x.size(); ++i) {
        long double t = 0.5L * (gl.x[i] + 1.0L);
        integral += 0.5L * gl.w[i] * f(N / t) * N / (t * t);
    }

    const long double fN = f(N);
    const long double fp = 0.5L * (f(N + 1) - f(N - 1));
    const long double fppp = 0.5L * (f(N + 2) - 2.0L * f(N + 1) + 2.0L * f(N - 1) - f(N - 2));
    const long double tail = integral + fN / 2.0L - fp / 12.0L + fppp / 720.0L;

    double est = std::fabs(static_cast<double>(fppp)) / 720.0 + 4e-16 * std::fabs(static_cast<double>(s));
    if (est > ctl.abs_tol)
        throw NonConvergentError("k_series: tail correction exceeds abs_tol at xi = 1");
    ctl.used_terms = N;
    ctl.tail_estimate = est;
    return static_cast<double>(s + tail);
}

} // namespace

long long default_max_terms()
{
    const char* env = std::getenv("SPHERE_TPS_MAX_TERMS");
    if (!env) return 10000000LL;
    char* end = nullptr;
    const long long parsed = std::strtoll(env, &end, 10);
    if (end == env || parsed < 1) return 10000000LL;
    return parsed;
}

bool singular_at_one(int d, int m)
{
    return 2 * m <= d - 1;
}

bool in_catalog(int d, int m)
{
    if (d == 2 && m >= 1 && m <= 4) return true;
    if (d == 3 && m >= 1 && m <= 3) return true;
    if ((d == 4 || d == 5) && m >= 1 && m <= 2) return true;
    return m == 1 && d >= 3 && d <= 30;
}

double k_series(const KernelSpec& spec, double xi, SeriesControl& ctl)
{
    validate_spec(spec);
    xi = checked_xi(xi, "k_series");
    if (ctl.max_terms <= 0) ctl.max_terms = default_max_terms();
    if (!(ctl.abs_tol > 0.0)) throw DomainError("k_series: requires abs_tol > 0");

    if (xi > 1.0 - XI_SLACK && singular_at_one(spec.d, spec.m))
        throw SingularPointError("k_series: series diverges at xi = 1 for d = "
                                 + std::to_string(spec.d) + ", m = " + std::to_string(spec.m)
                                 + " (needs 2m >= d)");
    if (xi == 1.0) return series_plus_one(spec.d, spec.m, spec.ell, ctl);
    if (xi == -1.0) return series_minus_one(spec.d, spec.m, spec.ell, ctl);
    return series_interior(spec.d, spec.m, spec.ell, xi, ctl);
}

double tail_bound(int d, int m, double N)
{
    if (d < 2 || m < 1) throw DomainError("tail_bound: requires d >= 2, m >= 1");
    if (!(N >= 1.0)) throw DomainError("tail_bound: requires N >= 1");
    if (2 * m <= d - 1)
        throw UnboundedError("tail_bound: majorant diverges for 2m <= d-1");

    double ratio_max = 0.0;
    for (int n = 1; n <= 10000; ++n) {
        double r = dim_N_real(d, n) / std::pow(static_cast<double>(n), d - 2);
        if (r > ratio_max) ratio_max = r;
    }
    const double kappa = 1.01 * ratio_max;
    const int e = 2 * m - d + 1;
    return kappa * std::pow(N, -e) / e;
}

namespace {

// ---- truncated power series in q = w^2 (even-d Laurent evaluation) ------

using Series = std::vector<long double>;

Series series_mul(const Series& a, const Series& b)
{
    const size_t n = a.size();
    Series c(n, 0.0L);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; i + j < n; ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

Series series_recip(const Series& a)
{
    const size_t n = a.size();
    Series r(n, 0.0L);
    r[0] = 1.0L / a[0];
    for (size_t i = 1; i < n; ++i) {
        long double s = 0.0L;
        for (size_t j = 1; j <= i; ++j) s += a[j] * r[i - j];
        r[i] = -s * r[0];
    }
    return r;
}

void series_add_shifted(Series& acc, const Series& a, long double scale, size_t shift)
{
    for (size_t i = 0; i + shift < acc.size() && i < a.size(); ++i)
        acc[i + shift] += scale * a[i];
}

// k_{2lambda+2,1} + C near x = -1, as a power series in q = v^2. With
// x = -cos(v) the closed form becomes
//   -v cos(v) sum_j c_j sin(v)^(1-2j) + sum_j d_j sin(v)^(-2j),
// and after multiplying through by v^(2lambda-2) every exponent is a
// nonnegative even power of v. The coefficients below q^(lambda-1) cancel
// (the kernel is finite at -1), so evaluation starts there.
double even_laurent(const EvenCoeffs& ec, long double w)
{
    const int lambda = ec.lambda;
    const size_t M = static_cast<size_t>(lambda) + 24;

    Series sinc(M, 0.0L), cosw(M, 0.0L);
    long double f1 = 1.0L, f2 = 1.0L; // 1/(2i+1)!, 1/(2i)!
    for (size_t i = 0; i < M; ++i) {
        if (i > 0) {
            f1 /= (2.0L * i) * (2.0L * i + 1.0L);
            f2 /= (2.0L * i) * (2.0L * i - 1.0L);
        }
        sinc[i] = (i % 2 == 0) ? f1 : -f1;
        cosw[i] = (i % 2 == 0) ? f2 : -f2;
    }
    const Series r = series_recip(sinc);
    const Series r2 = series_mul(r, r);

    Series acc(M, 0.0L);
    Series rp = r; // r^(2j-1)
    for (int j = 1; j <= lambda; ++j) {
        series_add_shifted(acc, rp, ec.c[static_cast<size_t>(j) - 1], static_cast<size_t>(lambda - j));
        if (j < lambda) rp = series_mul(rp, r2);
    }
    Series total = series_mul(cosw, acc);
    for (auto& t : total) t = -t;

    Series rq = r2; // r^(2j)
    for (int j = 1; j <= lambda - 1; ++j) {
        series_add_shifted(total, rq, ec.dcoef[static_cast<size_t>(j) - 1],
                           static_cast<size_t>(lambda - 1 - j));
        if (j < lambda - 1) rq = series_mul(rq, r2);
    }

    const long double q = w * w;
    long double val = 0.0L;
    for (size_t i = M; i-- > static_cast<size_t>(lambda - 1);)
        val = val * q + total[i];
    return static_cast<double>(val - static_cast<long double>(ec.Cconst));
}

double k_even_m1(int lambda, double x)
{
    const EvenCoeffs ec = even_coeffs(lambda);
    const long double v = v_of(x);
    if (v < 0.7L) return even_laurent(ec, v);

    const long double s2 = (1.0L - x) * (1.0L + x);
    const long double sq = ::sqrtl(s2);
    long double A = 0.0L, p = 1.0L / s2; // s2^(-j)
    for (int j = 1; j <= lambda; ++j) {
        A += ec.c[static_cast<size_t>(j) - 1] * sq * p;
        p /= s2;
    }
    long double B = 0.0L;
    p = 1.0L / s2;
    for (int j = 1; j <= lambda - 1; ++j) {
        B += ec.dcoef[static_cast<size_t>(j) - 1] * p;
        p /= s2;
    }
    return static_cast<double>(x * v * A + B - static_cast<long double>(ec.Cconst));
}

double k_odd_m1(int kappa, double x)
{
    const OddCoeffs oc = odd_coeffs(kappa);
    long double val = oc.g[0] * log_u(x);
    const long double omx = 1.0L - static_cast<long double>(x);
    long double p = 1.0L / omx;
    for (int nu = 1; nu <= kappa; ++nu) {
        val += oc.g[static_cast<size_t>(nu)] * p;
        p /= omx;
    }
    return static_cast<double>(val - static_cast<long double>(oc.Dconst));
}

double k_closed_d2(int m, long double v)
{
    const long double v2 = v * v;
    const long double p2 = PI_L * PI_L;
    switch (m) {
    case 1:
        return static_cast<double>(v2 / 2.0L - p2 / 6.0L);
    case 2:
        return static_cast<double>(-v2 * v2 / 24.0L + p2 * v2 / 12.0L - 7.0L * p2 * p2 / 360.0L);
    case 3: {
        const long double v4 = v2 * v2, p4 = p2 * p2;
        return static_cast<double>(v4 * v2 / 720.0L - p2 * v4 / 144.0L + 7.0L * p4 * v2 / 720.0L
                                   - 31.0L * p4 * p2 / 15120.0L);
    }
    default: { // m == 4
        const long double v4 = v2 * v2, p4 = p2 * p2;
        return static_cast<double>(-v4 * v4 / 40320.0L + p2 * v4 * v2 / 4320.0L
                                   - 7.0L * p4 * v4 / 8640.0L + 31.0L * p4 * p2 * v2 / 30240.0L
                                   - 127.0L * p4 * p4 / 604800.0L);
    }
    }
}

} // namespace

double k_closed(int d, int m, double xi)
{
    if (d < 2 || m < 1) throw DomainError("k_closed: requires d >= 2, m >= 1");
    if (!in_catalog(d, m))
        throw NotInCatalogError("k_closed: no closed form for d = " + std::to_string(d)
                                + ", m = " + std::to_string(m));
    xi = checked_xi(xi, "k_closed");
    if (singular_at_one(d, m) && xi > 1.0 - XI_SLACK)
        throw SingularPointError("k_closed: kernel diverges at xi = 1 for d = "
                                 + std::to_string(d) + ", m = " + std::to_string(m));

    const long double x = xi;
    const long double u = 0.5L * (1.0L - x);
    const long double p2 = PI_L * PI_L;

    if (d == 2) return k_closed_d2(m, v_of(x));

    if (m == 1) {
        if (d % 2 == 1) return k_odd_m1((d - 3) / 2, xi);
        return k_even_m1((d - 2) / 2, xi);
    }

    if (d == 3 && m == 2)
        return static_cast<double>(polylog(2, static_cast<double>(1.0L - u)) + 1.0L - p2 / 6.0L);

    if (d == 3 && m == 3) {
        // u ln(u) -> 0 as xi -> 1; the remaining terms give 2 zeta(3) - 2
        const long double lnu_li2 = (u == 0.0L) ? 0.0L
            : log_u(x) * static_cast<long double>(polylog(2, static_cast<double>(u)));
        return static_cast<double>(-2.0L * polylog(3, static_cast<double>(u))
                                   - polylog(2, static_cast<double>(1.0L - u))
                                   + lnu_li2 + 2.0L * ZETA3_L + p2 / 6.0L - 2.0L);
    }

    if (d == 4 && m == 2) {
        const long double v = v_of(x);
        return static_cast<double>(v * v / 8.0L + 1.0L / 16.0L - p2 / 24.0L);
    }

    // d == 5, m == 2; ln(u)/(9(x+1)) has the finite limit -1/18 at x = -1
    const long double t = 1.0L + x;
    const long double lnu = log_u(x);
    const long double mixed = (t == 0.0L) ? -1.0L / 18.0L : lnu / (9.0L * t);
    return static_cast<double>(polylog(2, static_cast<double>(1.0L - u)) / 9.0L
                               - 2.0L * lnu / 9.0L + mixed + 1.0L / 81.0L - p2 / 54.0L);
}

double kernel_xi(const KernelSpec& spec, double xi)
{
    validate_spec(spec);
    switch (spec.method) {
    case KernelMethod::ClosedForm:
        if (spec.ell != 0)
            throw NotInCatalogError("kernel: closed forms exist only for ell = 0");
        return k_closed(spec.d, spec.m, xi);
    case KernelMethod::Series: {
        SeriesControl ctl;
        return k_series(spec, xi, ctl);
    }
    case KernelMethod::Auto:
    default:
        if (spec.ell == 0 && in_catalog(spec.d, spec.m))
            return k_closed(spec.d, spec.m, xi);
        SeriesControl ctl;
        return k_series(spec, xi, ctl);
    }
}

double kernel(const KernelSpec& spec, const std::vector<double>& x, const std::vector<double>& y)
{
    validate_spec(spec);
    if (static_cast<int>(x.size()) != spec.d || static_cast<int>(y.size()) != spec.d)
        throw DimensionMismatchError("kernel: point dimension does not match spec.d");

    double nx = 0.0, ny = 0.0, dot = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        nx += x[i] * x[i];
        ny += y[i] * y[i];
        dot += x[i] * y[i];
    }
    if (std::fabs(std::sqrt(nx) - 1.0) > 1e-10 || std::fabs(std::sqrt(ny) - 1.0) > 1e-10)
        throw DomainError("kernel: inputs must be unit vectors");

    const double xi = dot < -1.0 ? -1.0 : (dot > 1.0 ? 1.0 : dot);
    return kernel_xi(spec, xi);
}

} // namespace stps
