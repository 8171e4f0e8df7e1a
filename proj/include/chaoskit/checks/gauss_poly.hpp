#ifndef CHAOSKIT_CHECKS_GAUSS_POLY_HPP
#define CHAOSKIT_CHECKS_GAUSS_POLY_HPP

#include <map>
#include <vector>

#include "chaoskit/symtensor.hpp"

namespace chaoskit::checks {

// Polynomial in independent standard normals xi_1..xi_d, stored as
// exponent-vector -> coefficient.  Expectations reduce to the Isserlis/Wick
// moments E[xi^p] = (p-1)!! for even p, giving an exact Gaussian-moment
// oracle that never touches the contraction machinery.
class GaussPoly {
  public:
    explicit GaussPoly(int dim) : dim_(dim) {}

    static GaussPoly constant(int dim, double value);

    // Expands I_n(f)(xi) = sum_alpha orbit f(alpha) prod He into monomials.
    static GaussPoly from_kernel(const SymKernel& kernel);

    int dim() const { return dim_; }
    const std::map<std::vector<int>, double>& terms() const { return terms_; }

    void add_term(const std::vector<int>& exponents, double coefficient);

    GaussPoly operator+(const GaussPoly& other) const;
    GaussPoly operator*(const GaussPoly& other) const;

    double eval(const std::vector<double>& x) const;

    // E over xi ~ N(0, I_d).
    double expectation() const;

  private:
    int dim_;
    std::map<std::vector<int>, double> terms_;
};

// Monomial coefficients of the monic Hermite polynomial He_m (index = power).
std::vector<double> hermite_monomial_coeffs(int m);

}  // namespace chaoskit::checks

#endif
