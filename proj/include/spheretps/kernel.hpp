#pragma once

#include <vector>

namespace stps {

enum class KernelMethod { ClosedForm, Series, Auto };

// Kernel k_{d,m,ell} on S^(d-1): Gegenbauer coefficients
// [n(n+d-2)]^(-m) N_{d,n} for n > ell.
struct KernelSpec {
    int d = 3;
    int m = 2;
    int ell = 0;
    KernelMethod method = KernelMethod::Auto;
};

struct SeriesControl {
    double abs_tol = 1e-10;
    long long max_terms = 0;    // 0 means default_max_terms()
    long long used_terms = 0;   // output: terms consumed by the accepted sum
    double tail_estimate = 0.0; // output: estimated truncation error, <= abs_tol on success
};

// SPHERE_TPS_MAX_TERMS from the environment, default 10^7.
long long default_max_terms();

// True when k_{d,m}(1) diverges, i.e. 2m <= d-1.
bool singular_at_one(int d, int m);

// True when k_closed implements (d,m): the verbatim entries
// (2,1..4), (3,1..3), (4,1..2), (5,1..2) plus every (d,1) for 3 <= d <= 30.
bool in_catalog(int d, int m);

// Truncated series evaluation; ctl carries the tolerance in and the
// used_terms/tail_estimate diagnostics out.
double k_series(const KernelSpec& spec, double xi, SeriesControl& ctl);

// Upper bound on the coefficient tail sum_{n>N} N_{d,n} [n(n+d-2)]^(-m),
// via the majorant N_{d,n} <= kappa_d n^(d-2) and integral comparison.
// Requires 2m > d-1; throws UnboundedError otherwise.
double tail_bound(int d, int m, double N);

// Closed-form catalog evaluation (ell = 0 kernels only).
double k_closed(int d, int m, double xi);

// Evaluation at a given abscissa, dispatching on spec.method
// (Auto: closed form when catalogued and ell = 0, otherwise series).
double kernel_xi(const KernelSpec& spec, double xi);

// Two-point kernel K(x,y) = k(x.y) for unit vectors; clamps the dot product
// into [-1,1] and dispatches via kernel_xi.
double kernel(const KernelSpec& spec, const std::vector<double>& x, const std::vector<double>& y);

} // namespace stps
