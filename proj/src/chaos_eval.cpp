#include "chaoskit/chaos_eval.hpp"

#include <cmath>
#include <stdexcept>

#include "chaoskit/combinatorics.hpp"

namespace chaoskit {

double hermite(int m, double x) {
    if (m < 0) throw std::invalid_argument("hermite: negative order");
    if (m > kMaxOrder) throw CapExceeded("hermite: order exceeds cap 64");
    if (m == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int k = 1; k < m; ++k) {
        const double next = x * cur - static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

void check_dim(const SymKernel& f, const GaussianPoint& point, const char* who) {
    if (f.dim() != point.dim())
        throw std::invalid_argument(std::string(who) + ": kernel dim != point dim");
}

}  // namespace

double eval_integral(const SymKernel& f, const GaussianPoint& point) {
    check_dim(f, point, "eval_integral");
    double acc = 0.0;
    for (const auto& [alpha, value] : f.entries()) {
        double term = orbit_count(alpha) * value;
        for (const auto& [label, mult] : multiplicities(alpha))
            term *= hermite(mult, point.xi[static_cast<std::size_t>(label - 1)]);
        acc += term;
    }
    return acc;
}

std::vector<double> malliavin_gradient(const SymKernel& f, const GaussianPoint& point) {
    check_dim(f, point, "malliavin_gradient");
    if (f.order() < 1) throw std::invalid_argument("malliavin_gradient: order-0 kernel");
    std::vector<double> grad(static_cast<std::size_t>(f.dim()), 0.0);
    for (const auto& [alpha, value] : f.entries()) {
        const auto groups = multiplicities(alpha);
        const double base = orbit_count(alpha) * value;
        // d/dxi_j of prod He_{a_i}(xi_i) using He_m' = m He_{m-1}
        for (std::size_t g = 0; g < groups.size(); ++g) {
            double term = base * groups[g].second *
                          hermite(groups[g].second - 1,
                                  point.xi[static_cast<std::size_t>(groups[g].first - 1)]);
            for (std::size_t h = 0; h < groups.size(); ++h) {
                if (h == g) continue;
                term *= hermite(groups[h].second,
                                point.xi[static_cast<std::size_t>(groups[h].first - 1)]);
            }
            grad[static_cast<std::size_t>(groups[g].first - 1)] += term;
        }
    }
    return grad;
}

double grad_norm_sq(const SymKernel& f, const GaussianPoint& point) {
    const auto grad = malliavin_gradient(f, point);
    double acc = 0.0;
    for (double g : grad) acc += g * g;
    return acc;
}

GaussianPoint sample(int dim, const RandomStream& stream, std::uint64_t draw_index) {
    GaussianPoint point;
    point.xi.resize(static_cast<std::size_t>(dim));
    const std::uint64_t base = draw_index * static_cast<std::uint64_t>(dim);
    for (int j = 0; j < dim; ++j)
        point.xi[static_cast<std::size_t>(j)] = stream.normal(base + static_cast<std::uint64_t>(j));
    return point;
}

MCEstimate mc_mean(int dim, const Functional& f, std::int64_t samples, const RandomStream& stream) {
    if (samples < 2) throw std::invalid_argument("mc_mean: need at least 2 samples");
    double sum = 0.0, comp = 0.0;
    double sum_sq = 0.0, comp_sq = 0.0;
    auto neumaier = [](double& s, double& c, double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    };
    for (std::int64_t i = 0; i < samples; ++i) {
        const double v = f(sample(dim, stream, static_cast<std::uint64_t>(i)));
        neumaier(sum, comp, v);
        neumaier(sum_sq, comp_sq, v * v);
    }
    const double n = static_cast<double>(samples);
    const double mean = (sum + comp) / n;
    const double ss = (sum_sq + comp_sq) - n * mean * mean;
    const double var = std::max(0.0, ss / (n - 1.0));
    return MCEstimate{mean, std::sqrt(var / n), samples};
}

}  // namespace chaoskit
