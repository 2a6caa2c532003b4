#pragma once

#include <cstdint>
#include <vector>

namespace stps {

// Gegenbauer (ultraspherical) index: degree n and order lambda = (d-2)/2.
struct GegenbauerIndex {
    int n;
    double lambda;
};

// C_n^lambda(x) by the three-term recurrence. Requires lambda > 0; the
// lambda = 0 family degenerates and is reachable only through zonal_W.
double gegenbauer(const GegenbauerIndex& idx, double x);

// C_n^lambda(1) = binom(n+2lambda-1, n), evaluated as a running product.
double gegenbauer_at_one(int n, double lambda);

// Normalized zonal polynomial W_n(xi) with W_n(1) = 1. For d >= 3 this is
// C_n^lambda(xi)/C_n^lambda(1); for d = 2 it is cos(n arccos xi).
double zonal_W(int n, int d, double xi);

// Dimension of the space of degree-n spherical harmonics on S^(d-1),
// binom(n+d-1,n) - binom(n+d-3,n-2), exact integer arithmetic.
std::uint64_t dim_N(int d, int n);

// Same quantity as a floating-point value, via the cancellation-free product
// (2n+d-2)/(n+d-2) * prod_{i=1}^{d-2} (n+i)/i. Defined for real n as well,
// which the series tail machinery relies on.
double dim_N_real(int d, double n);

// Eagerly filled table of dim_N values; immutable after construction, so a
// single instance may be shared across threads.
class DimensionTable {
public:
    DimensionTable(int d, int n_max);
    std::uint64_t operator()(int n) const { return vals_.at(static_cast<size_t>(n)); }
    int dim() const { return d_; }
    int max_degree() const { return static_cast<int>(vals_.size()) - 1; }
private:
    int d_;
    std::vector<std::uint64_t> vals_;
};

// Li_s(z) for s in {2,3} and z in [0,1], absolute error below 1e-12.
double polylog(int s, double z);

// f_mu = int_{-1}^1 (1-y^2)^mu dy = sqrt(pi) Gamma(mu+1)/Gamma(mu+3/2).
// Integer and half-integer mu take an exact product path.
double beta_f(double mu);

// Gegenbauer squared norm h_n^lambda = pi Gamma(2lambda+n) /
// (2^(2lambda-1) n! (lambda+n) Gamma(lambda)^2).
double h_const(int n, double lambda);

// Surface area of the unit sphere S^(d-1).
double surface_area(int d);

} // namespace stps
