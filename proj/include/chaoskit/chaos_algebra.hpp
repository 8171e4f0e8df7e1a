#ifndef CHAOSKIT_CHAOS_ALGEBRA_HPP
#define CHAOSKIT_CHAOS_ALGEBRA_HPP

#include <map>

#include "chaoskit/chaos_eval.hpp"
#include "chaoskit/symtensor.hpp"

namespace chaoskit {

// A finite Wiener-chaos expansion F = g_0 + sum_{n>=1} I_n(g_n), closed
// under multiplication via the product formula.  Component 0 is E[F].
class ChaosExpansion {
  public:
    explicit ChaosExpansion(int dim) : dim_(dim) {}

    static ChaosExpansion constant(int dim, double value);
    static ChaosExpansion from_kernel(const SymKernel& kernel);

    int dim() const { return dim_; }
    const std::map<int, SymKernel>& components() const { return components_; }
    SymKernel component(int order) const;
    int max_order() const;

    // Accumulates a kernel into its order slot (used while assembling).
    void accumulate(const SymKernel& kernel);

  private:
    int dim_ = 1;
    std::map<int, SymKernel> components_;
};

ChaosExpansion add(const ChaosExpansion& F, const ChaosExpansion& G);
ChaosExpansion scale(const ChaosExpansion& F, double c);

// Product formula for multiple integrals:
//   I_n(f) I_m(g) = sum_{r=0}^{n^m} r! C(n,r) C(m,r) I_{n+m-2r}(f ~(x)_r g),
// extended bilinearly over components.  Pathwise exact.
ChaosExpansion multiply(const ChaosExpansion& F, const ChaosExpansion& G);

double eval(const ChaosExpansion& F, const GaussianPoint& point);

double expectation(const ChaosExpansion& F);

// E[F G] = sum_{n>=0} n! <f_n, g_n>  (orthogonality across orders).
double product_expectation(const ChaosExpansion& F, const ChaosExpansion& G);

// Centered covariance: sum_{n>=1} n! <f_n, g_n>.
double covariance(const ChaosExpansion& F, const ChaosExpansion& G);

double second_moment(const ChaosExpansion& F);

// Exact p-th moment, p in 1..4, via at most one exact multiplication.
double moment(const ChaosExpansion& F, int p);

// Ornstein-Uhlenbeck generator: scales the order-n component by -n.
ChaosExpansion apply_L(const ChaosExpansion& F);

// <DF, DG>_H as an exact expansion, assembled slot by slot from
// n I_{n-1}(f(.,e_j)) * m I_{m-1}(g(.,e_j)).
ChaosExpansion gram_expansion(const SymKernel& f, const SymKernel& g);

// E[<DF,DG>_H^2] for F = I_n(f), G = I_m(g):
//   sum_{r=1}^{n^m} (n! m!)^2 / ((n-r)!(m-r)!(r-1)!)^2 |f ~(x)_r g|^2_{H^{.(n+m-2r)}}
// where the symmetric-power norm carries the (n+m-2r)! factor.
double deriv_gram_second_moment(const SymKernel& f, const SymKernel& g);

// E[|DF|_H^2] = n |f|^2_{H^{.n}}.
double e_dnorm2(const SymKernel& f);

// E[|DF|_H^4] = sum_{r=1}^{n-1} (n!)^4/(((n-r)!)^4 ((r-1)!)^2) |f ~(x)_r f|^2_{H^{.2(n-r)}}
//               + n^2 (n!)^2 |f|^4_{H^{(x)n}}.
double e_dnorm4(const SymKernel& f);

// Var[|DF|_H^2]; zero exactly when n = 1 or f = 0.
double var_dnorm2(const SymKernel& f);

}  // namespace chaoskit

#endif
