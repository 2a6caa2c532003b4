#include "spheretps/special_functions.hpp"
#include "spheretps/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace stps {

namespace {

constexpr double XI_SLACK = 1e-12;

void check_abscissa(double x, const char* where)
{
    if (!(std::fabs(x) <= 1.0 + XI_SLACK))
        throw DomainError(std::string(where) + ": |x| > 1");
}

double clamp_abscissa(double x)
{
    return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x);
}

// binom(n, k) in 128-bit, throwing once the value leaves uint64 range
std::uint64_t binom_u64(int n, int k)
{
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 b = 1;
    for (int i = 1; i <= k; ++i) {
        b *= static_cast<unsigned>(n - k + i);
        b /= static_cast<unsigned>(i);
        if (b > std::numeric_limits<std::uint64_t>::max())
            throw OverflowError("dim_N: binomial exceeds 64-bit range");
    }
    return static_cast<std::uint64_t>(b);
}

} // namespace

double gegenbauer(const GegenbauerIndex& idx, double x)
{
    if (idx.n < 0) throw DomainError("gegenbauer: degree must be >= 0");
    if (!(idx.lambda > 0.0)) throw DomainError("gegenbauer: requires lambda > 0");
    check_abscissa(x, "gegenbauer");
    x = clamp_abscissa(x);

    const double lam = idx.lambda;
    double pm1 = 1.0;
    if (idx.n == 0) return pm1;
    double p = 2.0 * lam * x;
    for (int k = 2; k <= idx.n; ++k) {
        double next = (2.0 * (k + lam - 1.0) * x * p - (k + 2.0 * lam - 2.0) * pm1) / k;
        pm1 = p;
        p = next;
    }
    return p;
}

double gegenbauer_at_one(int n, double lambda)
{
    if (n < 0) throw DomainError("gegenbauer_at_one: degree must be >= 0");
    long double v = 1.0L;
    for (int i = 0; i < n; ++i)
        v *= (2.0L * lambda + i) / (i + 1.0L);
    return static_cast<double>(v);
}

double zonal_W(int n, int d, double xi)
{
    if (n < 0) throw DomainError("zonal_W: degree must be >= 0");
    if (d < 2) throw DomainError("zonal_W: requires d >= 2");
    check_abscissa(xi, "zonal_W");
    xi = clamp_abscissa(xi);

    if (d == 2) return std::cos(n * std::acos(xi));

    // Recurrence for the W-normalization directly; at xi = 1 every step
    // divides n + 2lambda - 1 by itself, so W_n(1) == 1 without rounding.
    const double lam = 0.5 * (d - 2);
    double wm1 = 1.0;
    if (n == 0) return wm1;
    double w = xi;
    for (int k = 2; k <= n; ++k) {
        double next = (2.0 * (k + lam - 1.0) * xi * w - (k - 1.0) * wm1) / (k + 2.0 * lam - 1.0);
        wm1 = w;
        w = next;
    }
    return w;
}

std::uint64_t dim_N(int d, int n)
{
    if (d < 2) throw DomainError("dim_N: requires d >= 2");
    if (n < 0) throw DomainError("dim_N: requires n >= 0");
    std::uint64_t hi = binom_u64(n + d - 1, n);
    std::uint64_t lo = (n >= 2) ? binom_u64(n + d - 3, n - 2) : 0;
    return hi - lo;
}

double dim_N_real(int d, double n)
{
    if (d < 2) throw DomainError("dim_N_real: requires d >= 2");
    // d = 2 makes the leading ratio 2n/n: constant 2 away from n = 0, but the
    // degree-0 space is one-dimensional, so pin that point instead of 0/0.
    if (d == 2 && n == 0.0) return 1.0;
    long double v = (2.0L * n + d - 2) / (n + d - 2);
    for (int i = 1; i <= d - 2; ++i)
        v *= (n + i) / static_cast<long double>(i);
    return static_cast<double>(v);
}

DimensionTable::DimensionTable(int d, int n_max) : d_(d)
{
    if (n_max < 0) throw DomainError("DimensionTable: requires n_max >= 0");
    vals_.reserve(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        vals_.push_back(dim_N(d, n));
}

namespace {

double li2_series(double z)
{
    double sum = 0.0, zk = 1.0;
    for (int k = 1; k <= 80; ++k) {
        zk *= z;
        double t = zk / (static_cast<double>(k) * k);
        sum += t;
        if (t < 1e-18 * (1.0 + std::fabs(sum))) break;
    }
    return sum;
}

double li3_series(double z)
{
    double sum = 0.0, zk = 1.0;
    for (int k = 1; k <= 80; ++k) {
        zk *= z;
        double t = zk / (static_cast<double>(k) * k * k);
        sum += t;
        if (t < 1e-18 * (1.0 + std::fabs(sum))) break;
    }
    return sum;
}

constexpr double ZETA2 = 1.6449340668482264; // pi^2/6
constexpr double ZETA3 = 1.2020569031595943;

// zeta(3-k) for k >= 3: zeta(0), zeta(-1), zeta(-2), ... with
// zeta(-n) = -B_{n+1}/(n+1) (zero at even negative integers).
constexpr double ZETA_NONPOS[] = {
    -0.5,                    // zeta(0)
    -1.0 / 12.0,             // zeta(-1)
    0.0,
    1.0 / 120.0,             // zeta(-3)
    0.0,
    -1.0 / 252.0,            // zeta(-5)
    0.0,
    1.0 / 240.0,             // zeta(-7)
    0.0,
    -1.0 / 132.0,            // zeta(-9)
    0.0,
    691.0 / 32760.0,         // zeta(-11)
    0.0,
    -1.0 / 12.0,             // zeta(-13)
    0.0,
    3617.0 / 8160.0,         // zeta(-15)
    0.0,
    -43867.0 / 14364.0,      // zeta(-17)
    0.0,
};

// Li3 near z = 1 via the expansion in mu = ln z:
// Li3(e^mu) = zeta(3) + zeta(2) mu + mu^2/2 (3/2 - ln(-mu)) + sum_{k>=3} zeta(3-k) mu^k / k!
double li3_log_branch(double z)
{
    const double mu = std::log(z);
    double sum = ZETA3 + ZETA2 * mu + 0.5 * mu * mu * (1.5 - std::log(-mu));
    double muk = 0.5 * mu * mu; // mu^k / k!, starting at k = 2
    for (int k = 3; k < 3 + static_cast<int>(sizeof(ZETA_NONPOS) / sizeof(double)); ++k) {
        muk *= mu / k;
        sum += ZETA_NONPOS[k - 3] * muk;
    }
    return sum;
}

} // namespace

double polylog(int s, double z)
{
    if (s != 2 && s != 3) throw DomainError("polylog: order must be 2 or 3");
    if (!(z >= 0.0 && z <= 1.0)) throw DomainError("polylog: argument outside [0,1]");

    if (s == 2) {
        if (z <= 0.5) return li2_series(z);
        if (z >= 1.0 - 1e-15) return ZETA2;
        // reflection Li2(z) + Li2(1-z) = pi^2/6 - ln z ln(1-z)
        double w = 1.0 - z;
        return ZETA2 - std::log(z) * std::log(w) - li2_series(w);
    }
    if (z <= 0.5) return li3_series(z);
    if (z >= 1.0 - 1e-15) return ZETA3;
    return li3_log_branch(z);
}

double beta_f(double mu)
{
    if (!(mu > -1.0)) throw DomainError("beta_f: requires mu > -1");

    const double twice = 2.0 * mu;
    const double r = std::round(twice);
    if (std::fabs(twice - r) < 1e-12 && r >= -1.0) {
        const long long k = static_cast<long long>(r);
        if (k % 2 == 0) {
            // integer mu = k/2: f_m = 2 * prod 2i/(2i+1)
            long double v = 2.0L;
            for (long long i = 1; i <= k / 2; ++i)
                v *= (2.0L * i) / (2.0L * i + 1.0L);
            return static_cast<double>(v);
        }
        // half-integer mu = m - 1/2: f = pi * prod (2i-1)/(2i)
        long double v = std::numbers::pi_v<long double>;
        for (long long i = 1; i <= (k + 1) / 2; ++i)
            v *= (2.0L * i - 1.0L) / (2.0L * i);
        return static_cast<double>(v);
    }
    return std::sqrt(std::numbers::pi) * std::exp(std::lgamma(mu + 1.0) - std::lgamma(mu + 1.5));
}

double h_const(int n, double lambda)
{
    if (!(lambda > 0.0)) throw DomainError("h_const: requires lambda > 0");
    if (n < 0) throw DomainError("h_const: requires n >= 0");

    const long double lg = ::lgammal(2.0L * lambda + n) - ::lgammal(n + 1.0L)
                         - 2.0L * ::lgammal(static_cast<long double>(lambda));
    const long double logh = ::logl(std::numbers::pi_v<long double>) + lg
                           - (2.0L * lambda - 1.0L) * std::numbers::ln2_v<long double>
                           - ::logl(lambda + static_cast<long double>(n));
    if (logh > 700.0L) throw OverflowError("h_const: value exceeds double range");
    return static_cast<double>(::expl(logh));
}

double surface_area(int d)
{
    if (d < 2) throw DomainError("surface_area: requires d >= 2");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

} // namespace stps
