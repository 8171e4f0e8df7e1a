#include "chaoskit/checks/random_kernels.hpp"

#include <vector>

namespace chaoskit::checks {

namespace {

void sorted_indices(int dim, int order, int from, MultiIndex& prefix,
                    std::vector<MultiIndex>& out) {
    if (static_cast<int>(prefix.size()) == order) {
        out.push_back(prefix);
        return;
    }
    for (int label = from; label <= dim; ++label) {
        prefix.push_back(label);
        sorted_indices(dim, order, label, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

SymKernel random_kernel(int dim, int order, const RandomStream& stream, double density) {
    std::vector<MultiIndex> all;
    MultiIndex prefix;
    sorted_indices(dim, order, 1, prefix, all);
    std::vector<std::pair<MultiIndex, double>> entries;
    std::uint64_t draw = 0;
    for (const auto& alpha : all) {
        const double keep = stream.uniform(draw++);
        const double value = 2.0 * stream.uniform(draw++) - 1.0;
        if (keep < density) entries.emplace_back(alpha, value);
    }
    if (entries.empty() && !all.empty())
        entries.emplace_back(all[all.size() / 2], 2.0 * stream.uniform(draw++) - 1.0);
    return SymKernel::make(dim, order, entries);
}

SymKernel random_unit_kernel(int dim, int order, const RandomStream& stream, double density) {
    const SymKernel raw = random_kernel(dim, order, stream, density);
    return scale(raw, 1.0 / norm_modified(raw));
}

}  // namespace chaoskit::checks
