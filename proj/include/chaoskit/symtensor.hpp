#ifndef CHAOSKIT_SYMTENSOR_HPP
#define CHAOSKIT_SYMTENSOR_HPP

#include <map>
#include <utility>
#include <vector>

#include "chaoskit/errors.hpp"

namespace chaoskit {

// A sorted (non-decreasing) sequence of 1-based basis labels.  The empty
// index is the single index of an order-0 (scalar) tensor.
using MultiIndex = std::vector<int>;

bool is_valid_index(const MultiIndex& alpha, int dim);

// Number of distinct permutations of alpha: n! / prod_j a_j! where a_j are
// the label multiplicities.  This is the orbit size of the sorted index in
// the full tensor, and the weight every sparse inner product carries.
double orbit_count(const MultiIndex& alpha);

// Multiplicity of each label value in a sorted index, as (label, count).
std::vector<std::pair<int, int>> multiplicities(const MultiIndex& alpha);

MultiIndex merged(const MultiIndex& a, const MultiIndex& b);

// Entries with |value| below this are dropped after arithmetic so repeated
// contraction keeps the support sparse.
inline constexpr double kDropTolerance = 1e-15;

// Guard on result support size; exact algebra beyond this is not honest in
// doubles and signals a runaway computation.
inline constexpr std::size_t kMaxSupport = 1000000;

// Element of H^{.n} over H = R^dim, stored sparsely on sorted multi-indices.
// The stored coefficient is the full-tensor entry (identical across index
// permutations), so |f|^2_{H^{(x)n}} = sum_alpha orbit_count(alpha) f(alpha)^2.
// Order 0 is a scalar held at the empty index.  Immutable after construction.
class SymKernel {
  public:
    using EntryMap = std::map<MultiIndex, double>;

    SymKernel() = default;

    // Validates sortedness, label range and length of every index; rejects
    // duplicate indices.  Near-zero values are dropped.
    static SymKernel make(int dim, int order,
                          const std::vector<std::pair<MultiIndex, double>>& entries);
    static SymKernel zero(int dim, int order);
    static SymKernel constant(int dim, double value);

    int dim() const { return dim_; }
    int order() const { return order_; }
    const EntryMap& entries() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    // Coefficient at a sorted index; 0 when absent.
    double value(const MultiIndex& alpha) const;

    // Order-0 access.
    double scalar_value() const;

  private:
    friend SymKernel add(const SymKernel&, const SymKernel&);
    friend SymKernel scale(const SymKernel&, double);
    friend SymKernel symmetrize_block(const class BlockKernel&);
    friend SymKernel slice(const SymKernel&, int);
    static SymKernel from_raw(int dim, int order, EntryMap&& raw);

    int dim_ = 1;
    int order_ = 0;
    EntryMap entries_;
};

// A contraction result before symmetrization: symmetric in its first
// `left_order` slots and in its last `right_order` slots separately.
class BlockKernel {
  public:
    using Key = std::pair<MultiIndex, MultiIndex>;
    using EntryMap = std::map<Key, double>;

    BlockKernel() = default;
    static BlockKernel from_raw(int dim, int left_order, int right_order, EntryMap&& raw);

    int dim() const { return dim_; }
    int left_order() const { return left_; }
    int right_order() const { return right_; }
    const EntryMap& entries() const { return entries_; }

    double value(const Key& key) const;

    // The l = n = m contraction degenerates to a scalar at ((),()).
    bool is_scalar() const { return left_ == 0 && right_ == 0; }
    double scalar_value() const;

  private:
    int dim_ = 1;
    int left_ = 0;
    int right_ = 0;
    EntryMap entries_;
};

SymKernel add(const SymKernel& f, const SymKernel& g);
SymKernel scale(const SymKernel& f, double c);

// <f,g>_{H^{(x)n}} = sum_alpha orbit_count(alpha) f(alpha) g(alpha).
double inner_ambient(const SymKernel& f, const SymKernel& g);
double norm_ambient_sq(const SymKernel& f);
double norm_ambient(const SymKernel& f);

// sqrt(n! |f|^2): the norm of H^{.n}, equal to sqrt(E[I_n(f)^2]).
double norm_modified(const SymKernel& f);
double norm_modified_sq(const SymKernel& f);

// Contraction of l slots: (f (x)_l g)(u,v) = sum_w orbit_count(w)
// f(merged(u,w)) g(merged(v,w)) over sorted multisets w of length l.
// l = 0 is the tensor product; l = order(f) = order(g) yields the scalar
// <f,g> as a 0x0 block.
BlockKernel contract(const SymKernel& f, const SymKernel& g, int l);

// Full symmetrization of a block-symmetric tensor:
// (T~)(gamma) = sum over multiset splits gamma -> (u,v) of
// [ways(gamma->u,v) / C(p+q,p)] T(u,v), where ways counts the distinct
// position subsets realizing the split.  Idempotent on symmetric input.
SymKernel symmetrize_block(const BlockKernel& block);

// One argument pinned at basis label j: g(alpha) = f(sorted(alpha + {j})),
// order drops by one.  This is the kernel of the Malliavin derivative slot.
SymKernel slice(const SymKernel& f, int j);

double inner_ambient(const BlockKernel& a, const BlockKernel& b);
double norm_ambient_sq(const BlockKernel& t);
double norm_ambient(const BlockKernel& t);

}  // namespace chaoskit

#endif
