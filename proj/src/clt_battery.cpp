#include "chaoskit/clt_battery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chaoskit/combinatorics.hpp"

namespace chaoskit {

double kolmogorov_sf(double t) {
    if (t <= 0.0) return 1.0;
    if (t < 0.2) return 1.0;  // series converges too slowly; sf is 1 to 14 digits anyway
    double acc = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        acc += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * acc, 0.0, 1.0);
}

KsResult ks_normality(std::vector<double> samples, double sigma) {
    if (samples.size() < 100)
        throw std::invalid_argument("ks_normality: need at least 100 samples");
    if (!(sigma > 0.0)) throw std::invalid_argument("ks_normality: sigma must be positive");
    for (double v : samples)
        if (!std::isfinite(v)) throw std::invalid_argument("ks_normality: non-finite sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-samples[i] / (sigma * std::sqrt(2.0)));
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, cdf - lo, hi - cdf});
    }
    return KsResult{d, kolmogorov_sf(std::sqrt(n) * d)};
}

CharIdentityResult char_identity_residual(const SymKernel& f, const std::vector<double>& t_grid,
                                          std::int64_t samples, const RandomStream& stream) {
    if (f.order() < 1) throw std::invalid_argument("char_identity_residual: order-0 kernel");
    if (samples < 2) throw std::invalid_argument("char_identity_residual: need >= 2 samples");
    const double n = f.order();
    const std::size_t nt = t_grid.size();

    std::vector<double> mean_re(nt, 0.0), mean_im(nt, 0.0);
    std::vector<double> m2_re(nt, 0.0), m2_im(nt, 0.0);
    for (std::int64_t s = 0; s < samples; ++s) {
        const GaussianPoint p = sample(f.dim(), stream, static_cast<std::uint64_t>(s));
        const double value = eval_integral(f, p);
        const double dnorm = grad_norm_sq(f, p);
        for (std::size_t i = 0; i < nt; ++i) {
            const double t = t_grid[i];
            const double c = std::cos(t * value);
            const double si = std::sin(t * value);
            // F e^{itF} - (it/n) e^{itF} |DF|^2
            const double re = value * c + (t / n) * dnorm * si;
            const double im = value * si - (t / n) * dnorm * c;
            const double count = static_cast<double>(s + 1);
            const double d_re = re - mean_re[i];
            mean_re[i] += d_re / count;
            m2_re[i] += d_re * (re - mean_re[i]);
            const double d_im = im - mean_im[i];
            mean_im[i] += d_im / count;
            m2_im[i] += d_im * (im - mean_im[i]);
        }
    }

    CharIdentityResult out;
    out.t_grid = t_grid;
    const double count = static_cast<double>(samples);
    for (std::size_t i = 0; i < nt; ++i) {
        const double res = std::hypot(mean_re[i], mean_im[i]);
        const double var = (m2_re[i] + m2_im[i]) / (count - 1.0);
        out.residual_t.push_back(res);
        out.stderr_t.push_back(std::sqrt(var / count));
        out.residual = std::max(out.residual, res);
    }
    return out;
}

Diagnostics1D diagnose_fixed_chaos(const SymKernel& f, const DiagnoseOptions& opts, int k) {
    if (f.order() < 1) throw std::invalid_argument("diagnose_fixed_chaos: order must be >= 1");
    Diagnostics1D d;
    d.k = k;
    d.dim = f.dim();
    d.order = f.order();
    d.second_moment = norm_modified_sq(f);
    d.fourth_moment = moment(ChaosExpansion::from_kernel(f), 4);
    for (int l = 1; l <= f.order() - 1; ++l)
        d.contraction_norms.push_back(norm_ambient(contract(f, f, l)));
    d.e_dnorm2 = e_dnorm2(f);
    d.var_dnorm2 = var_dnorm2(f);

    if (opts.mc_samples > 0) {
        d.char_identity =
            char_identity_residual(f, opts.t_grid, opts.mc_samples, opts.stream.substream(1));
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(opts.mc_samples));
        const RandomStream ks_stream = opts.stream.substream(2);
        for (std::int64_t s = 0; s < opts.mc_samples; ++s)
            values.push_back(
                eval_integral(f, sample(f.dim(), ks_stream, static_cast<std::uint64_t>(s))));
        d.ks = ks_normality(std::move(values), std::sqrt(d.second_moment));
    }
    return d;
}

bool nongaussianity_guard(const SymKernel& f, double tol) {
    if (f.order() < 2) throw std::invalid_argument("nongaussianity_guard: order must be >= 2");
    const double second = norm_modified_sq(f);
    if (std::abs(second - 1.0) > 1e-8)
        throw std::invalid_argument("nongaussianity_guard: kernel not normalized to E[F^2] = 1");
    return var_dnorm2(f) > tol;
}

std::vector<std::array<int, 4>> enumerate_vd(int d) {
    if (d < 1) throw std::invalid_argument("enumerate_vd: d must be >= 1");
    std::vector<std::array<int, 4>> out;
    for (int i1 = 1; i1 <= d; ++i1)
        for (int i2 = 1; i2 <= d; ++i2)
            for (int i3 = 1; i3 <= d; ++i3)
                for (int i4 = 1; i4 <= d; ++i4) {
                    const bool a = i1 != i2 && i2 == i3 && i3 == i4;
                    const bool b = i1 != i2 && i2 == i3 && i3 != i4 && i4 != i1;
                    const bool all_distinct = i1 != i2 && i1 != i3 && i1 != i4 && i2 != i3 &&
                                              i2 != i4 && i3 != i4;
                    if (a || b || all_distinct) out.push_back({i1, i2, i3, i4});
                }
    return out;
}

VectorDiagnostics diagnose_vector(const std::vector<SymKernel>& fs, const DiagnoseOptions& opts,
                                  int k) {
    const int d = static_cast<int>(fs.size());
    if (d < 2) throw std::invalid_argument("diagnose_vector: need at least 2 coordinates");
    for (int i = 1; i < d; ++i) {
        if (fs[static_cast<std::size_t>(i)].dim() != fs[0].dim())
            throw std::invalid_argument("diagnose_vector: dim mismatch across coordinates");
        if (fs[static_cast<std::size_t>(i)].order() < fs[static_cast<std::size_t>(i - 1)].order())
            throw std::invalid_argument("diagnose_vector: orders must be non-decreasing");
    }

    VectorDiagnostics v;
    v.k = k;
    v.covariance.assign(static_cast<std::size_t>(d),
                        std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const auto& fi = fs[static_cast<std::size_t>(i)];
            const auto& fj = fs[static_cast<std::size_t>(j)];
            v.covariance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                fi.order() == fj.order() ? factorial(fi.order()) * inner_ambient(fi, fj) : 0.0;
        }

    for (int i = 0; i < d; ++i) {
        DiagnoseOptions per = opts;
        per.stream = opts.stream.substream(static_cast<std::uint64_t>(i) + 100);
        v.coordinates.push_back(diagnose_fixed_chaos(fs[static_cast<std::size_t>(i)], per, k));
    }

    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            v.gram_offdiag[{i + 1, j + 1}] = deriv_gram_second_moment(
                fs[static_cast<std::size_t>(i)], fs[static_cast<std::size_t>(j)]);

    ChaosExpansion total(fs[0].dim());
    for (const auto& f : fs) total.accumulate(f);
    v.sum_fourth = moment(total, 4);

    // Cache pairwise products for the V_d mixed moments.
    std::map<std::pair<int, int>, ChaosExpansion> products;
    auto product = [&](int a, int b) -> const ChaosExpansion& {
        const auto key = std::minmax(a, b);
        auto it = products.find(key);
        if (it == products.end()) {
            it = products
                     .emplace(key,
                              multiply(ChaosExpansion::from_kernel(
                                           fs[static_cast<std::size_t>(key.first - 1)]),
                                       ChaosExpansion::from_kernel(
                                           fs[static_cast<std::size_t>(key.second - 1)])))
                     .first;
        }
        return it->second;
    };
    for (const auto& tuple : enumerate_vd(d))
        v.vd_moments[tuple] =
            product_expectation(product(tuple[0], tuple[1]), product(tuple[2], tuple[3]));
    return v;
}

GeneralDiagnostics diagnose_general_one(const ChaosExpansion& F, int n_trunc, int k) {
    if (n_trunc < 1) throw std::invalid_argument("diagnose_general: n_trunc must be >= 1");
    GeneralDiagnostics g;
    g.k = k;
    for (int n = 1; n <= n_trunc; ++n) {
        const SymKernel comp = F.component(n);
        g.chaos_variance.push_back(factorial(n) * norm_ambient_sq(comp));
        g.sigma_sq_partial += g.chaos_variance.back();
        if (comp.is_zero()) {
            g.chaos_e_dnorm2.push_back(0.0);
            g.chaos_var_dnorm2.push_back(0.0);
        } else {
            g.chaos_e_dnorm2.push_back(e_dnorm2(comp));
            g.chaos_var_dnorm2.push_back(var_dnorm2(comp));
        }
    }
    for (const auto& [order, kernel] : F.components()) {
        if (order == 0) continue;
        const double variance = factorial(order) * norm_ambient_sq(kernel);
        if (order > n_trunc) g.tail_mass += variance;
        g.deriv_second_moment += static_cast<double>(order) * variance;
    }
    return g;
}

std::vector<GeneralDiagnostics> diagnose_general(const std::vector<ChaosExpansion>& seq,
                                                 int n_trunc) {
    std::vector<GeneralDiagnostics> out;
    int k = 1;
    for (const auto& F : seq) out.push_back(diagnose_general_one(F, n_trunc, k++));
    return out;
}

SymKernel tensor_sum_kernel(int order, int k) {
    if (order < 1) throw std::invalid_argument("tensor_sum_kernel: order must be >= 1");
    if (k < 1) throw std::invalid_argument("tensor_sum_kernel: k must be >= 1");
    const double value = 1.0 / std::sqrt(static_cast<double>(k) * factorial(order));
    std::vector<std::pair<MultiIndex, double>> entries;
    for (int i = 1; i <= k; ++i)
        entries.emplace_back(MultiIndex(static_cast<std::size_t>(order), i), value);
    return SymKernel::make(k, order, entries);
}

SymKernel fixed_control_kernel(int order) {
    if (order < 1) throw std::invalid_argument("fixed_control_kernel: order must be >= 1");
    return SymKernel::make(1, order,
                           {{MultiIndex(static_cast<std::size_t>(order), 1),
                             1.0 / std::sqrt(factorial(order))}});
}

std::pair<SymKernel, SymKernel> orthogonal_pair(int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("orthogonal_pair: k must be even, >= 2");
    const double value = 1.0 / std::sqrt(2.0 * static_cast<double>(k));
    std::vector<std::pair<MultiIndex, double>> plus, alternating;
    for (int i = 1; i <= k; ++i) {
        plus.emplace_back(MultiIndex{i, i}, value);
        alternating.emplace_back(MultiIndex{i, i}, i % 2 == 1 ? value : -value);
    }
    return {SymKernel::make(k, 2, plus), SymKernel::make(k, 2, alternating)};
}

}  // namespace chaoskit
