#ifndef CHAOSKIT_CHECKS_DENSE_ORACLE_HPP
#define CHAOSKIT_CHECKS_DENSE_ORACLE_HPP

#include <vector>

#include "chaoskit/symtensor.hpp"

namespace chaoskit::checks {

// Fully materialized tensor over {1..dim}^order, used as the nested-loop
// oracle for the sparse machinery.  Capped at 10^4 coefficients.
class DenseTensor {
  public:
    DenseTensor(int dim, int order);

    static DenseTensor from_kernel(const SymKernel& kernel);
    static DenseTensor from_block(const BlockKernel& block);

    int dim() const { return dim_; }
    int order() const { return order_; }

    double at(const std::vector<int>& labels) const;  // 1-based, any order
    double& at(const std::vector<int>& labels);

    // Visits every index tuple in lexicographic order.
    template <typename Visit>
    void for_each_tuple(Visit&& visit) const {
        std::vector<int> idx(static_cast<std::size_t>(order_), 1);
        if (order_ == 0) {
            visit(idx);
            return;
        }
        while (true) {
            visit(idx);
            int pos = order_ - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim_) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int k = pos + 1; k < order_; ++k) idx[static_cast<std::size_t>(k)] = 1;
        }
    }

  private:
    std::size_t offset(const std::vector<int>& labels) const;
    int dim_;
    int order_;
    std::vector<double> data_;
};

// Definition-level contraction: sums over all ordered l-tuples of labels.
DenseTensor dense_contract(const DenseTensor& f, const DenseTensor& g, int l);

// Average over all (p+q)! slot permutations.
DenseTensor dense_symmetrize(const DenseTensor& t);

double dense_inner(const DenseTensor& a, const DenseTensor& b);

double max_abs_diff(const DenseTensor& a, const DenseTensor& b);

}  // namespace chaoskit::checks

#endif
