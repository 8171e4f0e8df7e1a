#include "chaoskit/checks/gauss_poly.hpp"

#include <cmath>
#include <stdexcept>

#include "chaoskit/combinatorics.hpp"

namespace chaoskit::checks {

std::vector<double> hermite_monomial_coeffs(int m) {
    // He_{k+1} = x He_k - k He_{k-1} on coefficient vectors
    std::vector<double> prev{1.0};
    if (m == 0) return prev;
    std::vector<double> cur{0.0, 1.0};
    for (int k = 1; k < m; ++k) {
        std::vector<double> next(static_cast<std::size_t>(k) + 2, 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= static_cast<double>(k) * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

GaussPoly GaussPoly::constant(int dim, double value) {
    GaussPoly p(dim);
    p.add_term(std::vector<int>(static_cast<std::size_t>(dim), 0), value);
    return p;
}

void GaussPoly::add_term(const std::vector<int>& exponents, double coefficient) {
    if (static_cast<int>(exponents.size()) != dim_)
        throw std::invalid_argument("GaussPoly: exponent length != dim");
    if (coefficient == 0.0) return;
    terms_[exponents] += coefficient;
    if (terms_[exponents] == 0.0) terms_.erase(exponents);
}

GaussPoly GaussPoly::from_kernel(const SymKernel& kernel) {
    GaussPoly out(kernel.dim());
    for (const auto& [alpha, value] : kernel.entries()) {
        GaussPoly term = constant(kernel.dim(), orbit_count(alpha) * value);
        for (const auto& [label, mult] : multiplicities(alpha)) {
            GaussPoly he(kernel.dim());
            const auto coeffs = hermite_monomial_coeffs(mult);
            for (std::size_t pow = 0; pow < coeffs.size(); ++pow) {
                if (coeffs[pow] == 0.0) continue;
                std::vector<int> exps(static_cast<std::size_t>(kernel.dim()), 0);
                exps[static_cast<std::size_t>(label - 1)] = static_cast<int>(pow);
                he.add_term(exps, coeffs[pow]);
            }
            term = term * he;
        }
        out = out + term;
    }
    return out;
}

GaussPoly GaussPoly::operator+(const GaussPoly& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("GaussPoly: dim mismatch");
    GaussPoly out = *this;
    for (const auto& [exps, coef] : other.terms_) out.add_term(exps, coef);
    return out;
}

GaussPoly GaussPoly::operator*(const GaussPoly& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("GaussPoly: dim mismatch");
    GaussPoly out(dim_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            std::vector<int> exps(ea.size());
            for (std::size_t i = 0; i < ea.size(); ++i) exps[i] = ea[i] + eb[i];
            out.add_term(exps, ca * cb);
        }
    }
    return out;
}

double GaussPoly::eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& [exps, coef] : terms_) {
        double term = coef;
        for (std::size_t i = 0; i < exps.size(); ++i) term *= std::pow(x[i], exps[i]);
        acc += term;
    }
    return acc;
}

double GaussPoly::expectation() const {
    double acc = 0.0;
    for (const auto& [exps, coef] : terms_) {
        double term = coef;
        for (int p : exps) {
            if (p % 2 == 1) {
                term = 0.0;
                break;
            }
            term *= double_factorial_odd(p - 1);
        }
        acc += term;
    }
    return acc;
}

}  // namespace chaoskit::checks
