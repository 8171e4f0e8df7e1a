#include "chaoskit/checks/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chaoskit::checks {

namespace {

std::size_t ipow(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= static_cast<std::size_t>(base);
        if (r > 10000) throw std::invalid_argument("DenseTensor: dim^order exceeds 10^4");
    }
    return r;
}

}  // namespace

DenseTensor::DenseTensor(int dim, int order) : dim_(dim), order_(order) {
    data_.assign(ipow(dim, order), 0.0);
}

std::size_t DenseTensor::offset(const std::vector<int>& labels) const {
    std::size_t off = 0;
    for (int label : labels) off = off * static_cast<std::size_t>(dim_) +
                                   static_cast<std::size_t>(label - 1);
    return off;
}

double DenseTensor::at(const std::vector<int>& labels) const { return data_[offset(labels)]; }

double& DenseTensor::at(const std::vector<int>& labels) { return data_[offset(labels)]; }

DenseTensor DenseTensor::from_kernel(const SymKernel& kernel) {
    DenseTensor out(kernel.dim(), kernel.order());
    out.for_each_tuple([&](const std::vector<int>& idx) {
        std::vector<int> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        out.at(idx) = kernel.value(sorted);
    });
    return out;
}

DenseTensor DenseTensor::from_block(const BlockKernel& block) {
    const int p = block.left_order();
    const int q = block.right_order();
    DenseTensor out(block.dim(), p + q);
    out.for_each_tuple([&](const std::vector<int>& idx) {
        std::vector<int> u(idx.begin(), idx.begin() + p);
        std::vector<int> v(idx.begin() + p, idx.end());
        std::sort(u.begin(), u.end());
        std::sort(v.begin(), v.end());
        out.at(idx) = block.value({u, v});
    });
    return out;
}

DenseTensor dense_contract(const DenseTensor& f, const DenseTensor& g, int l) {
    if (f.dim() != g.dim()) throw std::invalid_argument("dense_contract: dim mismatch");
    const int p = f.order() - l;
    const int q = g.order() - l;
    DenseTensor out(f.dim(), p + q);
    DenseTensor w_iter(f.dim(), l);
    out.for_each_tuple([&](const std::vector<int>& idx) {
        std::vector<int> u(idx.begin(), idx.begin() + p);
        std::vector<int> v(idx.begin() + p, idx.end());
        double acc = 0.0;
        w_iter.for_each_tuple([&](const std::vector<int>& w) {
            std::vector<int> fu = u;
            fu.insert(fu.end(), w.begin(), w.end());
            std::vector<int> gv = v;
            gv.insert(gv.end(), w.begin(), w.end());
            acc += f.at(fu) * g.at(gv);
        });
        out.at(idx) = acc;
    });
    return out;
}

DenseTensor dense_symmetrize(const DenseTensor& t) {
    DenseTensor out(t.dim(), t.order());
    std::vector<int> perm(static_cast<std::size_t>(t.order()));
    out.for_each_tuple([&](const std::vector<int>& idx) {
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        double acc = 0.0;
        std::size_t count = 0;
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<int> permuted(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i)
                permuted[i] = idx[static_cast<std::size_t>(perm[i])];
            acc += t.at(permuted);
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.at(idx) = acc / static_cast<double>(count);
    });
    return out;
}

double dense_inner(const DenseTensor& a, const DenseTensor& b) {
    if (a.dim() != b.dim() || a.order() != b.order())
        throw std::invalid_argument("dense_inner: shape mismatch");
    double acc = 0.0;
    a.for_each_tuple([&](const std::vector<int>& idx) { acc += a.at(idx) * b.at(idx); });
    return acc;
}

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
    double worst = 0.0;
    a.for_each_tuple([&](const std::vector<int>& idx) {
        worst = std::max(worst, std::abs(a.at(idx) - b.at(idx)));
    });
    return worst;
}

}  // namespace chaoskit::checks
