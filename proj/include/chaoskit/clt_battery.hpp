#ifndef CHAOSKIT_CLT_BATTERY_HPP
#define CHAOSKIT_CLT_BATTERY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "chaoskit/chaos_algebra.hpp"
#include "chaoskit/rng.hpp"
#include "chaoskit/symtensor.hpp"

namespace chaoskit {

struct KsResult {
    double stat = 0.0;
    double p_value = 1.0;
};

// One-sample Kolmogorov-Smirnov statistic against N(0, sigma^2) with the
// asymptotic p-value Q(sqrt(N) D).  Requires at least 100 samples.
KsResult ks_normality(std::vector<double> samples, double sigma);

// Survival function of the Kolmogorov distribution.
double kolmogorov_sf(double t);

struct CharIdentityResult {
    std::vector<double> t_grid;
    std::vector<double> residual_t;  // |mean of F e^{itF} - (it/n) e^{itF}|DF|^2|
    std::vector<double> stderr_t;    // combined stderr of the complex difference
    double residual = 0.0;           // sup over the grid
};

// Monte Carlo check of the integration-by-parts identity
//   E[F e^{itF}] = (it/n) E[e^{itF} |DF|_H^2]
// with both sides evaluated on the same sample set.
CharIdentityResult char_identity_residual(const SymKernel& f, const std::vector<double>& t_grid,
                                          std::int64_t samples, const RandomStream& stream);

struct Diagnostics1D {
    int k = 0;
    int dim = 0;
    int order = 0;
    double second_moment = 0.0;
    double fourth_moment = 0.0;
    std::vector<double> contraction_norms;  // ambient |f (x)_l f|, l = 1..n-1
    double e_dnorm2 = 0.0;
    double var_dnorm2 = 0.0;
    std::optional<CharIdentityResult> char_identity;
    std::optional<KsResult> ks;
};

struct DiagnoseOptions {
    std::int64_t mc_samples = 0;  // 0 disables the Monte Carlo block
    std::vector<double> t_grid = {0.5, 1.0, 2.0};
    RandomStream stream{0, 0};
    double threshold = 1e-2;  // flag level for the equivalent-condition metrics
};

// All Theorem-level metrics for a fixed-chaos variable F = I_n(f): second
// and fourth moment, contraction norms, derivative-variance, and (when MC
// is enabled) the characteristic identity residual and a KS normality test.
Diagnostics1D diagnose_fixed_chaos(const SymKernel& f, const DiagnoseOptions& opts, int k = 0);

// For n >= 2 and E[F^2] = 1 the law of F cannot be normal, so
// Var|DF|^2 > 0; returns whether the computed variance clears `tol`.
// A false return signals an internal inconsistency, not a property of f.
bool nongaussianity_guard(const SymKernel& f, double tol);

// The index set V_d of the multidimensional fourth-moment condition:
// (a) i1 != i2 = i3 = i4, (b) i1 != i2 = i3 != i4 with i4 != i1,
// (c) all four distinct.  Lexicographic order.
std::vector<std::array<int, 4>> enumerate_vd(int d);

struct VectorDiagnostics {
    int k = 0;
    std::vector<std::vector<double>> covariance;  // E[F^i F^j]
    std::vector<Diagnostics1D> coordinates;
    std::map<std::pair<int, int>, double> gram_offdiag;  // i < j -> E<DF^i,DF^j>^2
    double sum_fourth = 0.0;                             // E[(sum_i F^i)^4]
    std::map<std::array<int, 4>, double> vd_moments;
};

// Multidimensional battery for F = (I_{n_1}(f^1),...,I_{n_d}(f^d)),
// n_1 <= ... <= n_d.
VectorDiagnostics diagnose_vector(const std::vector<SymKernel>& fs, const DiagnoseOptions& opts,
                                  int k = 0);

struct GeneralDiagnostics {
    int k = 0;
    std::vector<double> chaos_variance;    // E[(J_n F)^2], n = 1..n_trunc
    double tail_mass = 0.0;                // sum_{n > n_trunc} E[(J_n F)^2]
    double sigma_sq_partial = 0.0;         // sum of chaos_variance
    std::vector<double> chaos_e_dnorm2;    // n = 1..n_trunc
    std::vector<double> chaos_var_dnorm2;  // n = 1..n_trunc
    double deriv_second_moment = 0.0;      // E|DF|^2, the Remark's bound
};

GeneralDiagnostics diagnose_general_one(const ChaosExpansion& F, int n_trunc, int k = 0);
std::vector<GeneralDiagnostics> diagnose_general(const std::vector<ChaosExpansion>& seq,
                                                 int n_trunc);

// Control families.  The positive control f_k = (k n!)^{-1/2} sum_{i<=k}
// e_i^{(x)n} satisfies the theorem's conditions with closed-form rates; the
// fixed kernel never does.
SymKernel tensor_sum_kernel(int order, int k);
SymKernel fixed_control_kernel(int order);

// d = 2 pair of unit-variance second-chaos kernels with exactly orthogonal
// covariance and gram_offdiag = 8/k; k must be even.
std::pair<SymKernel, SymKernel> orthogonal_pair(int k);

}  // namespace chaoskit

#endif
