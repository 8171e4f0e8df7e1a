#ifndef CHAOSKIT_FBM_LAB_HPP
#define CHAOSKIT_FBM_LAB_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "chaoskit/clt_battery.hpp"
#include "chaoskit/rng.hpp"

namespace chaoskit {

// Power-variation experiment parameters.  The analysis requires H strictly
// below 1/2 and odd kappa; both are hard input contracts.
struct FbmConfig {
    double hurst = 0.35;
    int kappa = 3;
    int grid_n = 1024;     // grid points per unit time
    double horizon = 1.0;  // T
    int paths = 1000;
    std::uint64_t seed = 42;

    void validate() const;
    int total_steps() const;  // ceil(grid_n * horizon)
};

// fBm covariance (1/2)(t^{2H} + s^{2H} - |t-s|^{2H}).
double fbm_cov(double t, double s, double hurst);

// Correlation of unit-spaced increments X_j = B_j - B_{j-1}:
// rho_H(0) = 1, rho_H(j) = (1/2)((j+1)^{2H} - 2 j^{2H} + (j-1)^{2H}).
// Negative for H < 1/2, decays like H(2H-1) j^{2H-2}.
double increment_corr(std::int64_t j, double hurst);

// Unit-variance stationary increments on the integer grid.
struct IncrementPath {
    std::vector<double> x;
};

// Exact-covariance sampler: lower Cholesky factor of the Toeplitz
// correlation matrix, computed once and shared across paths.
class FbmSimulator {
  public:
    explicit FbmSimulator(const FbmConfig& cfg);
    // Path `path_id` is reproducible in isolation from (seed, path_id).
    IncrementPath simulate(std::int64_t path_id, const RandomStream& base) const;
    int steps() const { return steps_; }

    static constexpr int kCholeskyBudget = 8192;

  private:
    FbmConfig cfg_;
    int steps_;
    Eigen::MatrixXd chol_;
};

// Z_t^{(n)} = n^{-1/2} sum_{j=1}^{[nt]} x_j^kappa (the self-similarity
// reduction of n^{kappa H - 1/2} sum (B_{j/n} - B_{(j-1)/n})^kappa).
double power_variation(const IncrementPath& path, const FbmConfig& cfg, double t);

// x^kappa = sum_{m odd} b_{kappa,m} He_m(x); c_m = m! b_{kappa,m} is the
// coefficient in the normalized-Hermite convention.
struct HermitePowerDecomp {
    int kappa = 1;
    std::map<int, double> b;  // odd m -> b_{kappa,m}
    double c(int m) const;
    double parseval_sum() const;  // sum b^2 m!, equals (2 kappa - 1)!!
};

HermitePowerDecomp hermite_power_decomp(int kappa);

// Chaos-level limit variances sigma_m^2 = b_m^2 m! S_m and their aggregate
// c^2 = sum_m sigma_m^2, under both series conventions:
//   one-sided: S_m = sum_{j>=0} rho^m(j)     (the paper's literal sum)
//   two-sided: S_m = sum_{j in Z} rho^m(j)   (the Cesaro limit of the
//                                             variance computation)
// m = 1 sums exactly by telescoping ((J+1)^{2H} - J^{2H} -> 0); m >= 3 is
// truncated where the power-law envelope tail drops below `tol`.
struct LimitConstants {
    std::map<int, double> sigma_sq_one;
    std::map<int, double> sigma_sq_two;
    double c_sq_one = 0.0;
    double c_sq_two = 0.0;
    std::map<int, std::int64_t> trunc_lag;  // per m; kExactTelescoped for m = 1
    double tail_bound = 0.0;                // max envelope tail over truncated m

    static constexpr std::int64_t kExactTelescoped = -1;
};

LimitConstants limit_constants(int kappa, double hurst, double tol);

// |D J_m Y|^2 over the window ((na], (nb]]:
//   (c_m^2/n) sum_{i,j in window} H_{m-1}(x_i) H_{m-1}(x_j) rho(j-i),
// with H_m = He_m/m!.  Lags are capped at `lag_cap` (pass
// LimitConstants::kExactTelescoped for the full window).
double ergodic_derivative_stat(const IncrementPath& path, int m, double a, double b,
                               const FbmConfig& cfg, const HermitePowerDecomp& decomp,
                               std::int64_t lag_cap);

// Exact E[(Z_t - Z_s)^2] for the window (from_step, to_step] via
// E[x_1^k x_{1+l}^k] = sum_m b_m^2 m! rho^m(l).
double increment_moment_exact(const HermitePowerDecomp& decomp, double hurst, int grid_n,
                              int from_step, int to_step);

struct ErgodicRow {
    int m = 0;
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    double target_two = 0.0;  // (b-a) m sigma_m^2, two-sided
    double target_one = 0.0;
};

struct DyadicRow {
    double s = 0.0;
    double t = 0.0;
    double empirical_ratio = 0.0;  // mean (Z_t-Z_s)^2 / (t-s)
    double exact_ratio = 0.0;
};

struct JointExperimentResult {
    std::vector<double> b_end;  // B^H_T per path
    std::vector<double> z_end;  // Z_T^{(n)} per path
    double mean_z = 0.0;
    double var_z = 0.0;
    double pooled_rho1 = 0.0;
    double pooled_rho1_stderr = 0.0;
    double target_rho1 = 0.0;
    std::optional<KsResult> ks;  // Z_T against N(0, c_two^2 T); absent when c_two = 0
    double corr_bz = 0.0;
    double corr_b2z2 = 0.0;
    std::vector<ErgodicRow> ergodic;  // window (0, T)
    std::vector<DyadicRow> dyadic;
    HermitePowerDecomp decomp;
    LimitConstants limits;
};

JointExperimentResult joint_experiment(const FbmConfig& cfg);

}  // namespace chaoskit

#endif
