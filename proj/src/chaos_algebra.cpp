#include "chaoskit/chaos_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chaoskit/combinatorics.hpp"

namespace chaoskit {

ChaosExpansion ChaosExpansion::constant(int dim, double value) {
    ChaosExpansion F(dim);
    F.accumulate(SymKernel::constant(dim, value));
    return F;
}

ChaosExpansion ChaosExpansion::from_kernel(const SymKernel& kernel) {
    ChaosExpansion F(kernel.dim());
    F.accumulate(kernel);
    return F;
}

SymKernel ChaosExpansion::component(int order) const {
    auto it = components_.find(order);
    return it == components_.end() ? SymKernel::zero(dim_, order) : it->second;
}

int ChaosExpansion::max_order() const {
    int top = 0;
    for (const auto& [order, kernel] : components_)
        if (!kernel.is_zero()) top = std::max(top, order);
    return top;
}

void ChaosExpansion::accumulate(const SymKernel& kernel) {
    if (kernel.dim() != dim_) throw std::invalid_argument("ChaosExpansion: dim mismatch");
    auto it = components_.find(kernel.order());
    if (it == components_.end()) {
        if (!kernel.is_zero()) components_.emplace(kernel.order(), kernel);
    } else {
        it->second = chaoskit::add(it->second, kernel);
        if (it->second.is_zero()) components_.erase(it);
    }
}

ChaosExpansion add(const ChaosExpansion& F, const ChaosExpansion& G) {
    if (F.dim() != G.dim()) throw std::invalid_argument("add: dim mismatch");
    ChaosExpansion out = F;
    for (const auto& [order, kernel] : G.components()) out.accumulate(kernel);
    return out;
}

ChaosExpansion scale(const ChaosExpansion& F, double c) {
    ChaosExpansion out(F.dim());
    for (const auto& [order, kernel] : F.components()) out.accumulate(scale(kernel, c));
    return out;
}

ChaosExpansion multiply(const ChaosExpansion& F, const ChaosExpansion& G) {
    if (F.dim() != G.dim()) throw std::invalid_argument("multiply: dim mismatch");
    ChaosExpansion out(F.dim());
    for (const auto& [n, f] : F.components()) {
        for (const auto& [m, g] : G.components()) {
            if (n + m > kMaxOrder)
                throw CapExceeded("multiply: product order " + std::to_string(n + m) +
                                  " exceeds cap 64");
            for (int r = 0; r <= std::min(n, m); ++r) {
                const double coef = factorial(r) * binomial(n, r) * binomial(m, r);
                const SymKernel sym = symmetrize_block(contract(f, g, r));
                out.accumulate(scale(sym, coef));
            }
        }
    }
    return out;
}

double eval(const ChaosExpansion& F, const GaussianPoint& point) {
    double acc = 0.0;
    for (const auto& [order, kernel] : F.components()) acc += eval_integral(kernel, point);
    return acc;
}

double expectation(const ChaosExpansion& F) { return F.component(0).value(MultiIndex{}); }

double product_expectation(const ChaosExpansion& F, const ChaosExpansion& G) {
    if (F.dim() != G.dim()) throw std::invalid_argument("product_expectation: dim mismatch");
    double acc = 0.0;
    for (const auto& [n, f] : F.components()) {
        auto it = G.components().find(n);
        if (it == G.components().end()) continue;
        acc += factorial(n) * inner_ambient(f, it->second);
    }
    return acc;
}

double covariance(const ChaosExpansion& F, const ChaosExpansion& G) {
    return product_expectation(F, G) - expectation(F) * expectation(G);
}

double second_moment(const ChaosExpansion& F) { return product_expectation(F, F); }

double moment(const ChaosExpansion& F, int p) {
    switch (p) {
        case 1:
            return expectation(F);
        case 2:
            return second_moment(F);
        case 3: {
            const ChaosExpansion sq = multiply(F, F);
            return product_expectation(F, sq);
        }
        case 4: {
            const ChaosExpansion sq = multiply(F, F);
            return second_moment(sq);
        }
        default:
            throw std::invalid_argument("moment: p must be in 1..4");
    }
}

ChaosExpansion apply_L(const ChaosExpansion& F) {
    ChaosExpansion out(F.dim());
    for (const auto& [order, kernel] : F.components()) {
        if (order == 0) continue;
        out.accumulate(scale(kernel, -static_cast<double>(order)));
    }
    return out;
}

ChaosExpansion gram_expansion(const SymKernel& f, const SymKernel& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("gram_expansion: dim mismatch");
    if (f.order() < 1 || g.order() < 1)
        throw std::invalid_argument("gram_expansion: order-0 input");
    const double n = f.order();
    const double m = g.order();
    ChaosExpansion out(f.dim());
    for (int j = 1; j <= f.dim(); ++j) {
        const ChaosExpansion dj_f = ChaosExpansion::from_kernel(scale(slice(f, j), n));
        const ChaosExpansion dj_g = ChaosExpansion::from_kernel(scale(slice(g, j), m));
        out = add(out, multiply(dj_f, dj_g));
    }
    return out;
}

double deriv_gram_second_moment(const SymKernel& f, const SymKernel& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("deriv_gram_second_moment: dim mismatch");
    const int n = f.order();
    const int m = g.order();
    if (n < 1 || m < 1) throw std::invalid_argument("deriv_gram_second_moment: order-0 input");
    double acc = 0.0;
    for (int r = 1; r <= std::min(n, m); ++r) {
        const double denom = factorial(n - r) * factorial(m - r) * factorial(r - 1);
        const double coef = std::pow(factorial(n) * factorial(m) / denom, 2.0);
        const SymKernel sym = symmetrize_block(contract(f, g, r));
        acc += coef * norm_modified_sq(sym);
    }
    return acc;
}

double e_dnorm2(const SymKernel& f) {
    if (f.order() < 1) throw std::invalid_argument("e_dnorm2: order-0 input");
    return static_cast<double>(f.order()) * norm_modified_sq(f);
}

double e_dnorm4(const SymKernel& f) {
    const int n = f.order();
    if (n < 1) throw std::invalid_argument("e_dnorm4: order-0 input");
    const double amb_sq = norm_ambient_sq(f);
    double acc = static_cast<double>(n) * static_cast<double>(n) * factorial(n) * factorial(n) *
                 amb_sq * amb_sq;
    for (int r = 1; r <= n - 1; ++r) {
        const double coef = std::pow(factorial(n), 4.0) /
                            (std::pow(factorial(n - r), 4.0) * std::pow(factorial(r - 1), 2.0));
        const SymKernel sym = symmetrize_block(contract(f, f, r));
        acc += coef * norm_modified_sq(sym);
    }
    return acc;
}

double var_dnorm2(const SymKernel& f) {
    const double mean = e_dnorm2(f);
    return e_dnorm4(f) - mean * mean;
}

}  // namespace chaoskit
