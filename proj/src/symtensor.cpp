#include "chaoskit/symtensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "chaoskit/combinatorics.hpp"

namespace chaoskit {

bool is_valid_index(const MultiIndex& alpha, int dim) {
    int prev = 1;
    for (int label : alpha) {
        if (label < prev || label > dim) return false;
        prev = label;
    }
    return true;
}

double orbit_count(const MultiIndex& alpha) {
    const int n = static_cast<int>(alpha.size());
    double count = factorial(n);
    std::size_t i = 0;
    while (i < alpha.size()) {
        std::size_t j = i;
        while (j < alpha.size() && alpha[j] == alpha[i]) ++j;
        count /= factorial(static_cast<int>(j - i));
        i = j;
    }
    return count;
}

std::vector<std::pair<int, int>> multiplicities(const MultiIndex& alpha) {
    std::vector<std::pair<int, int>> out;
    std::size_t i = 0;
    while (i < alpha.size()) {
        std::size_t j = i;
        while (j < alpha.size() && alpha[j] == alpha[i]) ++j;
        out.emplace_back(alpha[i], static_cast<int>(j - i));
        i = j;
    }
    return out;
}

MultiIndex merged(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
    return out;
}

namespace {

void check_support(std::size_t size) {
    if (size > kMaxSupport) throw CapExceeded("kernel support exceeds 10^6 entries");
}

// All ways to remove a size-l sub-multiset from a sorted index.  Calls
// visit(sub, rest) once per distinct multiset split.
template <typename Visit>
void for_each_submultiset(const MultiIndex& alpha, int l, Visit&& visit) {
    const auto groups = multiplicities(alpha);
    MultiIndex sub, rest;
    sub.reserve(static_cast<std::size_t>(l));
    rest.reserve(alpha.size());

    auto rec = [&](auto&& self, std::size_t gi, int remaining) -> void {
        if (gi == groups.size()) {
            if (remaining == 0) visit(sub, rest);
            return;
        }
        const auto [label, mult] = groups[gi];
        int avail_after = 0;
        for (std::size_t k = gi + 1; k < groups.size(); ++k) avail_after += groups[k].second;
        const int take_min = std::max(0, remaining - avail_after);
        const int take_max = std::min(mult, remaining);
        for (int take = take_min; take <= take_max; ++take) {
            sub.insert(sub.end(), static_cast<std::size_t>(take), label);
            rest.insert(rest.end(), static_cast<std::size_t>(mult - take), label);
            self(self, gi + 1, remaining - take);
            sub.resize(sub.size() - static_cast<std::size_t>(take));
            rest.resize(rest.size() - static_cast<std::size_t>(mult - take));
        }
    };
    rec(rec, 0, l);
}

}  // namespace

SymKernel SymKernel::make(int dim, int order,
                          const std::vector<std::pair<MultiIndex, double>>& entries) {
    if (dim < 1) throw std::invalid_argument("SymKernel: dim must be >= 1");
    if (order < 0) throw std::invalid_argument("SymKernel: order must be >= 0");
    if (order > kMaxOrder) throw CapExceeded("SymKernel: order exceeds cap 64");
    EntryMap map;
    for (const auto& [alpha, value] : entries) {
        if (static_cast<int>(alpha.size()) != order)
            throw std::invalid_argument("SymKernel: index length != order");
        if (!is_valid_index(alpha, dim))
            throw std::invalid_argument("SymKernel: index not sorted or label out of [1,dim]");
        if (map.count(alpha)) throw std::invalid_argument("SymKernel: duplicate multi-index");
        if (std::abs(value) >= kDropTolerance) map.emplace(alpha, value);
    }
    return from_raw(dim, order, std::move(map));
}

SymKernel SymKernel::zero(int dim, int order) { return make(dim, order, {}); }

SymKernel SymKernel::constant(int dim, double value) {
    return make(dim, 0, {{MultiIndex{}, value}});
}

SymKernel SymKernel::from_raw(int dim, int order, EntryMap&& raw) {
    check_support(raw.size());
    SymKernel k;
    k.dim_ = dim;
    k.order_ = order;
    k.entries_ = std::move(raw);
    return k;
}

double SymKernel::value(const MultiIndex& alpha) const {
    auto it = entries_.find(alpha);
    return it == entries_.end() ? 0.0 : it->second;
}

double SymKernel::scalar_value() const {
    if (order_ != 0) throw std::invalid_argument("scalar_value: kernel order is not 0");
    return value(MultiIndex{});
}

BlockKernel BlockKernel::from_raw(int dim, int left_order, int right_order, EntryMap&& raw) {
    check_support(raw.size());
    BlockKernel b;
    b.dim_ = dim;
    b.left_ = left_order;
    b.right_ = right_order;
    b.entries_ = std::move(raw);
    return b;
}

double BlockKernel::value(const Key& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0.0 : it->second;
}

double BlockKernel::scalar_value() const {
    if (!is_scalar()) throw std::invalid_argument("scalar_value: block is not 0x0");
    auto it = entries_.find(Key{{}, {}});
    return it == entries_.end() ? 0.0 : it->second;
}

SymKernel add(const SymKernel& f, const SymKernel& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("add: dim mismatch");
    if (f.order() != g.order()) throw std::invalid_argument("add: order mismatch");
    SymKernel::EntryMap out = f.entries_;
    for (const auto& [alpha, value] : g.entries_) out[alpha] += value;
    std::erase_if(out, [](const auto& kv) { return std::abs(kv.second) < kDropTolerance; });
    return SymKernel::from_raw(f.dim(), f.order(), std::move(out));
}

SymKernel scale(const SymKernel& f, double c) {
    SymKernel::EntryMap out;
    for (const auto& [alpha, value] : f.entries_) {
        const double v = c * value;
        if (std::abs(v) >= kDropTolerance) out.emplace(alpha, v);
    }
    return SymKernel::from_raw(f.dim(), f.order(), std::move(out));
}

double inner_ambient(const SymKernel& f, const SymKernel& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("inner_ambient: dim mismatch");
    if (f.order() != g.order()) throw std::invalid_argument("inner_ambient: order mismatch");
    const auto& small = f.support_size() <= g.support_size() ? f : g;
    const auto& large = f.support_size() <= g.support_size() ? g : f;
    double acc = 0.0;
    for (const auto& [alpha, value] : small.entries()) {
        const double other = large.value(alpha);
        if (other != 0.0) acc += orbit_count(alpha) * value * other;
    }
    return acc;
}

double norm_ambient_sq(const SymKernel& f) {
    double acc = 0.0;
    for (const auto& [alpha, value] : f.entries()) acc += orbit_count(alpha) * value * value;
    return acc;
}

double norm_ambient(const SymKernel& f) { return std::sqrt(norm_ambient_sq(f)); }

double norm_modified_sq(const SymKernel& f) { return factorial(f.order()) * norm_ambient_sq(f); }

double norm_modified(const SymKernel& f) { return std::sqrt(norm_modified_sq(f)); }

BlockKernel contract(const SymKernel& f, const SymKernel& g, int l) {
    if (f.dim() != g.dim()) throw std::invalid_argument("contract: dim mismatch");
    if (l < 0 || l > std::min(f.order(), g.order()))
        throw std::invalid_argument("contract: l out of [0, min(n,m)]");

    // Index each factor by the contracted sub-multiset w, then join on w:
    // every (u,w) split of a support index of f pairs with every (v,w)
    // split of a support index of g with the same w.
    using SplitMap = std::map<MultiIndex, std::vector<std::pair<MultiIndex, double>>>;
    auto build = [l](const SymKernel& k) {
        SplitMap m;
        for (const auto& [alpha, value] : k.entries()) {
            for_each_submultiset(alpha, l, [&](const MultiIndex& sub, const MultiIndex& rest) {
                m[sub].emplace_back(rest, value);
            });
        }
        return m;
    };
    const SplitMap lhs = build(f);
    const SplitMap rhs = build(g);

    BlockKernel::EntryMap out;
    auto it = lhs.begin();
    auto jt = rhs.begin();
    while (it != lhs.end() && jt != rhs.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            const double weight = orbit_count(it->first);
            for (const auto& [u, fv] : it->second)
                for (const auto& [v, gv] : jt->second) out[{u, v}] += weight * fv * gv;
            ++it;
            ++jt;
        }
    }
    std::erase_if(out, [](const auto& kv) { return std::abs(kv.second) < kDropTolerance; });
    return BlockKernel::from_raw(f.dim(), f.order() - l, g.order() - l, std::move(out));
}

SymKernel symmetrize_block(const BlockKernel& block) {
    const int p = block.left_order();
    const int q = block.right_order();
    const double splits = binomial(p + q, p);
    SymKernel::EntryMap out;
    for (const auto& [key, value] : block.entries()) {
        const auto& [u, v] = key;
        const MultiIndex gamma = merged(u, v);
        // ways(gamma -> u,v) = prod_j C(mult_j(gamma), mult_j(u))
        double ways = 1.0;
        auto gm = multiplicities(gamma);
        auto um = multiplicities(u);
        std::size_t ui = 0;
        for (const auto& [label, gcount] : gm) {
            if (ui < um.size() && um[ui].first == label) {
                ways *= binomial(gcount, um[ui].second);
                ++ui;
            }
        }
        out[gamma] += (ways / splits) * value;
    }
    std::erase_if(out, [](const auto& kv) { return std::abs(kv.second) < kDropTolerance; });
    return SymKernel::from_raw(block.dim(), p + q, std::move(out));
}

SymKernel slice(const SymKernel& f, int j) {
    if (f.order() < 1) throw std::invalid_argument("slice: order-0 kernel has no slot to pin");
    if (j < 1 || j > f.dim()) throw std::invalid_argument("slice: label out of [1,dim]");
    SymKernel::EntryMap out;
    for (const auto& [alpha, value] : f.entries()) {
        // keep entries whose index contains j; remove one copy
        auto pos = std::lower_bound(alpha.begin(), alpha.end(), j);
        if (pos == alpha.end() || *pos != j) continue;
        MultiIndex rest;
        rest.reserve(alpha.size() - 1);
        rest.insert(rest.end(), alpha.begin(), pos);
        rest.insert(rest.end(), pos + 1, alpha.end());
        out.emplace(std::move(rest), value);
    }
    return SymKernel::from_raw(f.dim(), f.order() - 1, std::move(out));
}

double inner_ambient(const BlockKernel& a, const BlockKernel& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner_ambient: dim mismatch");
    if (a.left_order() != b.left_order() || a.right_order() != b.right_order())
        throw std::invalid_argument("inner_ambient: block shape mismatch");
    const auto& small = a.entries().size() <= b.entries().size() ? a : b;
    const auto& large = a.entries().size() <= b.entries().size() ? b : a;
    double acc = 0.0;
    for (const auto& [key, value] : small.entries()) {
        const double other = large.value(key);
        if (other != 0.0) acc += orbit_count(key.first) * orbit_count(key.second) * value * other;
    }
    return acc;
}

double norm_ambient_sq(const BlockKernel& t) {
    double acc = 0.0;
    for (const auto& [key, value] : t.entries())
        acc += orbit_count(key.first) * orbit_count(key.second) * value * value;
    return acc;
}

double norm_ambient(const BlockKernel& t) { return std::sqrt(norm_ambient_sq(t)); }

}  // namespace chaoskit
