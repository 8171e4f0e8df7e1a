#ifndef CHAOSKIT_CHAOS_EVAL_HPP
#define CHAOSKIT_CHAOS_EVAL_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "chaoskit/rng.hpp"
#include "chaoskit/symtensor.hpp"

namespace chaoskit {

// One realization of the isonormal process over R^d: X(e_j) = xi_j with
// i.i.d. standard normal coordinates.
struct GaussianPoint {
    std::vector<double> xi;
    int dim() const { return static_cast<int>(xi.size()); }
};

struct MCEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;  // sample sd / sqrt(samples)
    std::int64_t samples = 0;
};

// Monic probabilists' Hermite polynomial He_m:
//   He_0 = 1, He_1 = x, He_{m+1} = x He_m - m He_{m-1}.
// Note the literature's normalized polynomials H_m satisfy H_m = He_m / m!;
// with the monic convention the chaos isometry reads I_n(h^{(x)n}) =
// He_n(X(h)) for |h| = 1 and E[He_m(X)He_m(Y)] = m! rho^m.
double hermite(int m, double x);

// Pathwise value of the multiple integral:
//   I_n(f)(xi) = sum_alpha orbit_count(alpha) f(alpha) prod_j He_{a_j}(xi_j).
// Linear in f; the order-0 kernel evaluates to its constant.
double eval_integral(const SymKernel& f, const GaussianPoint& point);

// Coordinate gradient of xi -> I_n(f)(xi); component j equals
// n * I_{n-1}(slice(f, j))(xi), the Malliavin derivative paired with e_j.
std::vector<double> malliavin_gradient(const SymKernel& f, const GaussianPoint& point);

// |DF|_H^2 at the point.
double grad_norm_sq(const SymKernel& f, const GaussianPoint& point);

// Coordinates are draws dim*draw_index ... dim*draw_index + dim - 1 of the
// stream, so sample k is reproducible in isolation.
GaussianPoint sample(int dim, const RandomStream& stream, std::uint64_t draw_index);

using Functional = std::function<double(const GaussianPoint&)>;

// Compensated (Neumaier) accumulation keeps the result independent of any
// future partitioning of the sample range across workers.
MCEstimate mc_mean(int dim, const Functional& f, std::int64_t samples, const RandomStream& stream);

}  // namespace chaoskit

#endif
