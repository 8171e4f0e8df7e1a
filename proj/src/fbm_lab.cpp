#include "chaoskit/fbm_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chaoskit/chaos_eval.hpp"
#include "chaoskit/combinatorics.hpp"
#include "chaoskit/errors.hpp"

namespace chaoskit {

namespace {

constexpr std::uint64_t kFbmPathStream = 0x0FB7;

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v) {
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size() - 1);
}

double pearson_corr(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

void FbmConfig::validate() const {
    if (!(hurst > 0.0 && hurst < 0.5))
        throw HurstRangeError("fbm: requires 0 < H < 1/2 (strict)");
    if (kappa < 1 || kappa % 2 == 0) throw ConfigError("fbm: kappa must be an odd integer >= 1");
    if (kappa > 21) throw ConfigError("fbm: kappa capped at 21");
    if (grid_n < 1) throw ConfigError("fbm: grid must have at least one point per unit time");
    if (!(horizon > 0.0)) throw ConfigError("fbm: horizon must be positive");
    if (paths < 1) throw ConfigError("fbm: need at least one path");
    if (total_steps() > FbmSimulator::kCholeskyBudget)
        throw CapExceeded("fbm: grid_n * horizon exceeds the dense-Cholesky budget 8192");
}

int FbmConfig::total_steps() const {
    return static_cast<int>(std::ceil(static_cast<double>(grid_n) * horizon - 1e-12));
}

double fbm_cov(double t, double s, double hurst) {
    if (t < 0.0 || s < 0.0) throw std::invalid_argument("fbm_cov: times must be >= 0");
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("fbm_cov: H outside (0,1)");
    const double h2 = 2.0 * hurst;
    return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2));
}

double increment_corr(std::int64_t j, double hurst) {
    if (j < 0) throw std::invalid_argument("increment_corr: lag must be >= 0");
    if (j == 0) return 1.0;
    const double h2 = 2.0 * hurst;
    const double x = static_cast<double>(j);
    return 0.5 * (std::pow(x + 1.0, h2) - 2.0 * std::pow(x, h2) + std::pow(x - 1.0, h2));
}

FbmSimulator::FbmSimulator(const FbmConfig& cfg) : cfg_(cfg), steps_(cfg.total_steps()) {
    cfg.validate();
    Eigen::MatrixXd corr(steps_, steps_);
    for (int i = 0; i < steps_; ++i)
        for (int j = 0; j <= i; ++j) {
            const double r = increment_corr(i - j, cfg_.hurst);
            corr(i, j) = r;
            corr(j, i) = r;
        }
    Eigen::LLT<Eigen::MatrixXd> llt(corr);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error(
            "fbm: increment correlation matrix is not positive definite; "
            "H out of range or numerical breakdown");
    chol_ = llt.matrixL();
}

IncrementPath FbmSimulator::simulate(std::int64_t path_id, const RandomStream& base) const {
    const RandomStream stream = base.substream(static_cast<std::uint64_t>(path_id));
    Eigen::VectorXd z(steps_);
    for (int i = 0; i < steps_; ++i) z(i) = stream.normal(static_cast<std::uint64_t>(i));
    const Eigen::VectorXd x = chol_.triangularView<Eigen::Lower>() * z;
    IncrementPath path;
    path.x.assign(x.data(), x.data() + steps_);
    return path;
}

double power_variation(const IncrementPath& path, const FbmConfig& cfg, double t) {
    if (t < 0.0 || t > cfg.horizon + 1e-12)
        throw std::invalid_argument("power_variation: t outside [0, horizon]");
    const auto count = static_cast<std::size_t>(
        std::floor(static_cast<double>(cfg.grid_n) * t + 1e-12));
    if (count > path.x.size())
        throw std::invalid_argument("power_variation: path shorter than [nt]");
    double acc = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        double p = path.x[j];
        for (int e = 1; e < cfg.kappa; ++e) p *= path.x[j];
        acc += p;
    }
    return acc / std::sqrt(static_cast<double>(cfg.grid_n));
}

double HermitePowerDecomp::c(int m) const {
    auto it = b.find(m);
    return it == b.end() ? 0.0 : factorial(m) * it->second;
}

double HermitePowerDecomp::parseval_sum() const {
    double acc = 0.0;
    for (const auto& [m, bm] : b) acc += bm * bm * factorial(m);
    return acc;
}

HermitePowerDecomp hermite_power_decomp(int kappa) {
    if (kappa < 1 || kappa % 2 == 0)
        throw ConfigError("hermite_power_decomp: kappa must be odd and >= 1");
    if (kappa > 21) throw ConfigError("hermite_power_decomp: kappa capped at 21");
    HermitePowerDecomp d;
    d.kappa = kappa;
    // x^k = sum_{m odd} C(k,m) (k-m-1)!! He_m(x)
    for (int m = kappa; m >= 1; m -= 2)
        d.b[m] = binomial(kappa, m) * double_factorial_odd(kappa - m - 1);
    return d;
}

LimitConstants limit_constants(int kappa, double hurst, double tol) {
    if (!(hurst > 0.0 && hurst < 0.5))
        throw HurstRangeError("limit_constants: requires 0 < H < 1/2");
    if (!(tol > 0.0)) throw std::invalid_argument("limit_constants: tol must be positive");
    const HermitePowerDecomp decomp = hermite_power_decomp(kappa);
    const double envelope = hurst * (1.0 - 2.0 * hurst);  // |rho(j)| <= envelope (j-1)^{2H-2}

    LimitConstants out;
    for (const auto& [m, bm] : decomp.b) {
        double sum_pos;  // sum_{j>=1} rho^m(j)
        if (m == 1) {
            // telescoping partial sums: sum_{j=1..J} rho = ((J+1)^{2H} - J^{2H} - 1)/2 -> -1/2
            sum_pos = -0.5;
            out.trunc_lag[m] = LimitConstants::kExactTelescoped;
        } else {
            const double beta = static_cast<double>(m) * (2.0 - 2.0 * hurst);
            const double need = std::pow(std::pow(envelope, m) / (tol * (beta - 1.0)),
                                         1.0 / (beta - 1.0));
            if (need > 1e9) throw CapExceeded("limit_constants: truncation lag exceeds 1e9");
            const auto lag = static_cast<std::int64_t>(std::ceil(need)) + 1;
            sum_pos = 0.0;
            for (std::int64_t j = lag; j >= 1; --j)
                sum_pos += std::pow(increment_corr(j, hurst), m);
            out.trunc_lag[m] = lag;
            const double tail = std::pow(envelope, m) *
                                std::pow(static_cast<double>(lag), 1.0 - beta) / (beta - 1.0);
            out.tail_bound = std::max(out.tail_bound, tail);
        }
        const double weight = bm * bm * factorial(m);
        out.sigma_sq_one[m] = weight * (1.0 + sum_pos);
        out.sigma_sq_two[m] = weight * (1.0 + 2.0 * sum_pos);
        out.c_sq_one += out.sigma_sq_one[m];
        out.c_sq_two += out.sigma_sq_two[m];
    }
    return out;
}

double ergodic_derivative_stat(const IncrementPath& path, int m, double a, double b,
                               const FbmConfig& cfg, const HermitePowerDecomp& decomp,
                               std::int64_t lag_cap) {
    if (m < 1 || m > cfg.kappa)
        throw std::invalid_argument("ergodic_derivative_stat: m outside [1, kappa]");
    if (!(a >= 0.0 && a < b && b <= cfg.horizon + 1e-12))
        throw std::invalid_argument("ergodic_derivative_stat: need 0 <= a < b <= horizon");
    const auto lo = static_cast<std::size_t>(
        std::floor(static_cast<double>(cfg.grid_n) * a + 1e-12));
    const auto hi = static_cast<std::size_t>(
        std::floor(static_cast<double>(cfg.grid_n) * b + 1e-12));
    const std::size_t width = hi - lo;
    if (width == 0) return 0.0;
    if (hi > path.x.size())
        throw std::invalid_argument("ergodic_derivative_stat: path shorter than window");

    const double cm = decomp.c(m);
    if (cm == 0.0) return 0.0;
    const double norm = factorial(m - 1);
    std::vector<double> h(width);
    for (std::size_t i = 0; i < width; ++i) h[i] = hermite(m - 1, path.x[lo + i]) / norm;

    std::size_t max_lag = width - 1;
    if (lag_cap != LimitConstants::kExactTelescoped && lag_cap >= 0)
        max_lag = std::min(max_lag, static_cast<std::size_t>(lag_cap));

    double acc = 0.0;
    for (std::size_t i = 0; i < width; ++i) acc += h[i] * h[i];
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        double cross = 0.0;
        for (std::size_t i = 0; i + lag < width; ++i) cross += h[i] * h[i + lag];
        acc += 2.0 * increment_corr(static_cast<std::int64_t>(lag), cfg.hurst) * cross;
    }
    return cm * cm * acc / static_cast<double>(cfg.grid_n);
}

double increment_moment_exact(const HermitePowerDecomp& decomp, double hurst, int grid_n,
                              int from_step, int to_step) {
    if (from_step > to_step) throw std::invalid_argument("increment_moment_exact: empty window");
    const auto w = static_cast<std::int64_t>(to_step - from_step);
    auto kappa_cov = [&](std::int64_t lag) {
        const double r = increment_corr(lag, hurst);
        double acc = 0.0;
        for (const auto& [m, bm] : decomp.b) acc += bm * bm * factorial(m) * std::pow(r, m);
        return acc;
    };
    double acc = static_cast<double>(w) * kappa_cov(0);
    for (std::int64_t lag = 1; lag < w; ++lag)
        acc += 2.0 * static_cast<double>(w - lag) * kappa_cov(lag);
    return acc / static_cast<double>(grid_n);
}

JointExperimentResult joint_experiment(const FbmConfig& cfg) {
    cfg.validate();
    JointExperimentResult out;
    out.decomp = hermite_power_decomp(cfg.kappa);
    out.limits = limit_constants(cfg.kappa, cfg.hurst, 1e-10);
    out.target_rho1 = increment_corr(1, cfg.hurst);

    const FbmSimulator sim(cfg);
    const RandomStream base(cfg.seed, kFbmPathStream);
    const int n_steps = sim.steps();
    const double scale_b = std::pow(static_cast<double>(cfg.grid_n), -cfg.hurst);

    // dyadic nodes i T/8 and all aligned dyadic windows
    std::array<double, 9> node_time{};
    std::array<std::size_t, 9> node_step{};
    for (int i = 0; i <= 8; ++i) {
        node_time[static_cast<std::size_t>(i)] = cfg.horizon * static_cast<double>(i) / 8.0;
        node_step[static_cast<std::size_t>(i)] = static_cast<std::size_t>(std::floor(
            static_cast<double>(cfg.grid_n) * node_time[static_cast<std::size_t>(i)] + 1e-12));
    }
    std::vector<std::pair<int, int>> windows;
    for (int size = 8; size >= 1; size /= 2)
        for (int start = 0; start + size <= 8; start += size) windows.emplace_back(start, start + size);
    std::vector<double> dyadic_acc(windows.size(), 0.0);

    std::vector<double> rho1(static_cast<std::size_t>(cfg.paths));
    std::vector<std::vector<double>> ergodic_samples;
    std::vector<int> ergodic_m;
    for (int m = 1; m <= cfg.kappa; m += 2) {
        ergodic_m.push_back(m);
        ergodic_samples.emplace_back();
        ergodic_samples.back().reserve(static_cast<std::size_t>(cfg.paths));
    }

    out.b_end.reserve(static_cast<std::size_t>(cfg.paths));
    out.z_end.reserve(static_cast<std::size_t>(cfg.paths));
    for (int p = 0; p < cfg.paths; ++p) {
        const IncrementPath path = sim.simulate(p, base);

        double bsum = 0.0;
        for (double x : path.x) bsum += x;
        out.b_end.push_back(scale_b * bsum);

        // Z at the dyadic nodes via one prefix pass
        std::array<double, 9> z_node{};
        {
            double acc = 0.0;
            std::size_t j = 0;
            const double root_n = std::sqrt(static_cast<double>(cfg.grid_n));
            for (int node = 0; node <= 8; ++node) {
                for (; j < node_step[static_cast<std::size_t>(node)]; ++j) {
                    double pw = path.x[j];
                    for (int e = 1; e < cfg.kappa; ++e) pw *= path.x[j];
                    acc += pw;
                }
                z_node[static_cast<std::size_t>(node)] = acc / root_n;
            }
        }
        out.z_end.push_back(z_node[8]);
        for (std::size_t w = 0; w < windows.size(); ++w) {
            const double dz = z_node[static_cast<std::size_t>(windows[w].second)] -
                              z_node[static_cast<std::size_t>(windows[w].first)];
            dyadic_acc[w] += dz * dz;
        }

        double r1 = 0.0;
        for (int j = 0; j + 1 < n_steps; ++j)
            r1 += path.x[static_cast<std::size_t>(j)] * path.x[static_cast<std::size_t>(j + 1)];
        rho1[static_cast<std::size_t>(p)] = r1 / static_cast<double>(n_steps - 1);

        for (std::size_t mi = 0; mi < ergodic_m.size(); ++mi) {
            const int m = ergodic_m[mi];
            auto lag_it = out.limits.trunc_lag.find(m);
            const std::int64_t cap = lag_it == out.limits.trunc_lag.end()
                                         ? LimitConstants::kExactTelescoped
                                         : lag_it->second;
            if (m == 1 && p > 0) {
                // deterministic: identical on every path
                ergodic_samples[mi].push_back(ergodic_samples[mi].front());
                continue;
            }
            ergodic_samples[mi].push_back(
                ergodic_derivative_stat(path, m, 0.0, cfg.horizon, cfg, out.decomp, cap));
        }
    }

    out.mean_z = mean_of(out.z_end);
    out.var_z = sample_var(out.z_end);
    out.pooled_rho1 = mean_of(rho1);
    out.pooled_rho1_stderr =
        std::sqrt(sample_var(rho1) / static_cast<double>(cfg.paths));
    if (out.limits.c_sq_two > 0.0)
        out.ks = ks_normality(out.z_end, std::sqrt(out.limits.c_sq_two * cfg.horizon));
    out.corr_bz = pearson_corr(out.b_end, out.z_end);
    std::vector<double> b2(out.b_end.size()), z2(out.z_end.size());
    for (std::size_t i = 0; i < b2.size(); ++i) {
        b2[i] = out.b_end[i] * out.b_end[i];
        z2[i] = out.z_end[i] * out.z_end[i];
    }
    out.corr_b2z2 = pearson_corr(b2, z2);

    for (std::size_t mi = 0; mi < ergodic_m.size(); ++mi) {
        const int m = ergodic_m[mi];
        ErgodicRow row;
        row.m = m;
        row.mean = mean_of(ergodic_samples[mi]);
        row.stderr_of_mean =
            std::sqrt(sample_var(ergodic_samples[mi]) / static_cast<double>(cfg.paths));
        const double span = cfg.horizon;
        row.target_two = span * m * out.limits.sigma_sq_two.at(m);
        row.target_one = span * m * out.limits.sigma_sq_one.at(m);
        out.ergodic.push_back(row);
    }

    for (std::size_t w = 0; w < windows.size(); ++w) {
        DyadicRow row;
        row.s = node_time[static_cast<std::size_t>(windows[w].first)];
        row.t = node_time[static_cast<std::size_t>(windows[w].second)];
        const double dt = row.t - row.s;
        row.empirical_ratio = dyadic_acc[w] / static_cast<double>(cfg.paths) / dt;
        row.exact_ratio =
            increment_moment_exact(out.decomp, cfg.hurst, cfg.grid_n,
                                   static_cast<int>(node_step[static_cast<std::size_t>(
                                       windows[w].first)]),
                                   static_cast<int>(node_step[static_cast<std::size_t>(
                                       windows[w].second)])) /
            dt;
        out.dyadic.push_back(row);
    }
    return out;
}

}  // namespace chaoskit
