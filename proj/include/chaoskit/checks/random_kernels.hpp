#ifndef CHAOSKIT_CHECKS_RANDOM_KERNELS_HPP
#define CHAOSKIT_CHECKS_RANDOM_KERNELS_HPP

#include <cstdint>

#include "chaoskit/rng.hpp"
#include "chaoskit/symtensor.hpp"

namespace chaoskit::checks {

// Random sparse kernel with coefficients uniform in [-1,1]; each sorted
// multi-index is kept with probability `density` (at least one entry is
// forced so the kernel is never the zero tensor).
SymKernel random_kernel(int dim, int order, const RandomStream& stream, double density = 0.6);

// Same kernel normalized to |f|_{H^{.n}} = 1.
SymKernel random_unit_kernel(int dim, int order, const RandomStream& stream, double density = 0.6);

}  // namespace chaoskit::checks

#endif
