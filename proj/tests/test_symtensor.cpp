#include "chaoskit/symtensor.hpp"

#include <cmath>

#include "chaoskit/checks/dense_oracle.hpp"
#include "chaoskit/checks/random_kernels.hpp"
#include "chaoskit/rng.hpp"
#include "doctest.h"

using namespace chaoskit;
using checks::DenseTensor;

namespace {

SymKernel basis_sq(int dim, int i) { return SymKernel::make(dim, 2, {{{i, i}, 1.0}}); }

}  // namespace

TEST_CASE("orbit_count is the multinomial weight") {
    CHECK(orbit_count({1, 2, 3}) == 6.0);
    CHECK(orbit_count({1, 1}) == 1.0);
    CHECK(orbit_count({1, 1, 2}) == 3.0);
    CHECK(orbit_count({}) == 1.0);
}

TEST_CASE("make validates indices") {
    CHECK_THROWS_AS(SymKernel::make(2, 2, {{{2, 1}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SymKernel::make(2, 2, {{{1, 3}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SymKernel::make(2, 2, {{{1}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SymKernel::make(2, 1, {{{1}, 1.0}, {{1}, 2.0}}), std::invalid_argument);
    CHECK_NOTHROW(SymKernel::make(3, 3, {{{1, 2, 3}, 0.5}}));
}

TEST_CASE("inner_ambient on basis kernels") {
    const SymKernel e11 = basis_sq(2, 1);
    const SymKernel e22 = basis_sq(2, 2);
    CHECK(inner_ambient(e11, e11) == doctest::Approx(1.0));
    CHECK(inner_ambient(e11, e22) == doctest::Approx(0.0));
    const SymKernel offdiag = SymKernel::make(2, 2, {{{1, 2}, 1.0}});
    // dense double-loop oracle: full tensor has two entries of value 1
    const DenseTensor dense = DenseTensor::from_kernel(offdiag);
    CHECK(inner_ambient(offdiag, offdiag) == doctest::Approx(dense_inner(dense, dense)));
    CHECK(inner_ambient(offdiag, offdiag) == doctest::Approx(2.0));
}

TEST_CASE("norm_modified carries the sqrt(n!) factor") {
    CHECK(norm_modified(basis_sq(2, 1)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(norm_modified(SymKernel::make(2, 1, {{{1}, 1.0}})) == doctest::Approx(1.0));
    const SymKernel half = SymKernel::make(2, 2, {{{1, 1}, 0.5}, {{2, 2}, 0.5}});
    CHECK(norm_modified(half) == doctest::Approx(1.0));
}

TEST_CASE("contraction basics") {
    const SymKernel e11 = basis_sq(2, 1);
    SUBCASE("single slot of e1^2 with itself") {
        const BlockKernel b = contract(e11, e11, 1);
        CHECK(b.left_order() == 1);
        CHECK(b.right_order() == 1);
        CHECK(b.value({{1}, {1}}) == doctest::Approx(1.0));
        CHECK(b.entries().size() == 1);
    }
    SUBCASE("full contraction is the ambient inner product") {
        const SymKernel f = SymKernel::make(
            2, 2, {{{1, 1}, 1.0 / std::sqrt(2.0)}, {{2, 2}, 1.0 / std::sqrt(2.0)}});
        const BlockKernel b = contract(f, f, 2);
        CHECK(b.is_scalar());
        CHECK(b.scalar_value() == doctest::Approx(1.0));
        CHECK(b.scalar_value() == doctest::Approx(inner_ambient(f, f)));
    }
    SUBCASE("order-2 kernels contract like symmetric matrix products") {
        const SymKernel a = SymKernel::make(3, 2, {{{1, 1}, 2.0}, {{1, 2}, -1.0}, {{2, 3}, 0.5}});
        const SymKernel b = SymKernel::make(3, 2, {{{1, 3}, 1.5}, {{2, 2}, 1.0}, {{3, 3}, -2.0}});
        const BlockKernel ab = contract(a, b, 1);
        // dense matrix-product oracle
        double mat_a[3][3] = {}, mat_b[3][3] = {};
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                MultiIndex idx{std::min(i, j), std::max(i, j)};
                mat_a[i - 1][j - 1] = a.value(idx);
                mat_b[i - 1][j - 1] = b.value(idx);
            }
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                double expect = 0.0;
                for (int k = 0; k < 3; ++k) expect += mat_a[i - 1][k] * mat_b[j - 1][k];
                CHECK(ab.value({{i}, {j}}) == doctest::Approx(expect).epsilon(1e-12));
            }
    }
    SUBCASE("contract rejects bad arguments") {
        CHECK_THROWS_AS(contract(e11, e11, 3), std::invalid_argument);
        CHECK_THROWS_AS(contract(e11, SymKernel::make(3, 2, {{{1, 1}, 1.0}}), 1),
                        std::invalid_argument);
    }
}

TEST_CASE("symmetrize_block") {
    SUBCASE("already-symmetric input is unchanged") {
        const BlockKernel b = contract(basis_sq(2, 1), basis_sq(2, 1), 1);  // e1 (x) e1
        const SymKernel s = symmetrize_block(b);
        CHECK(s.order() == 2);
        CHECK(s.value({1, 1}) == doctest::Approx(1.0));
    }
    SUBCASE("e1 (x) e2 averages the two arrangements") {
        BlockKernel::EntryMap raw;
        raw[{{1}, {2}}] = 1.0;
        const BlockKernel b = BlockKernel::from_raw(2, 1, 1, std::move(raw));
        const SymKernel s = symmetrize_block(b);
        CHECK(s.value({1, 2}) == doctest::Approx(0.5));
        CHECK(s.support_size() == 1);
    }
    SUBCASE("random 1x1 blocks match (M + M^T)/2") {
        const RandomStream stream(77, 5);
        std::uint64_t draw = 0;
        BlockKernel::EntryMap raw;
        double m[2][2];
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                m[i - 1][j - 1] = 2.0 * stream.uniform(draw++) - 1.0;
                raw[{{i}, {j}}] = m[i - 1][j - 1];
            }
        const SymKernel s = symmetrize_block(BlockKernel::from_raw(2, 1, 1, std::move(raw)));
        for (int i = 1; i <= 2; ++i)
            for (int j = i; j <= 2; ++j)
                CHECK(s.value({i, j}) ==
                      doctest::Approx((m[i - 1][j - 1] + m[j - 1][i - 1]) / 2.0));
    }
}

TEST_CASE("slice pins one argument") {
    const SymKernel e11 = basis_sq(2, 1);
    CHECK(slice(e11, 1).value({1}) == doctest::Approx(1.0));
    CHECK(slice(e11, 2).is_zero());
    const SymKernel offdiag = SymKernel::make(2, 2, {{{1, 2}, 1.0}});
    CHECK(slice(offdiag, 2).value({1}) == doctest::Approx(1.0));
    CHECK(slice(offdiag, 2).value({2}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(slice(SymKernel::constant(2, 1.0), 1), std::invalid_argument);
}

TEST_CASE("add and scale are linear and prune zeros") {
    const SymKernel e11 = basis_sq(2, 1);
    const SymKernel s = add(e11, scale(e11, -1.0));
    CHECK(s.is_zero());
    const SymKernel t = add(scale(e11, 0.25), scale(basis_sq(2, 2), 0.75));
    CHECK(norm_ambient_sq(t) == doctest::Approx(0.0625 + 0.5625));
}

TEST_CASE("sparse operations match dense nested-loop oracles on random kernels") {
    const RandomStream root(2024, 11);
    int cases = 0;
    for (int dim = 2; dim <= 3; ++dim) {
        for (int n = 1; n <= 3; ++n) {
            for (int m = 1; m <= 3; ++m) {
                const SymKernel f = checks::random_kernel(dim, n, root.substream(++cases));
                const SymKernel g = checks::random_kernel(dim, m, root.substream(++cases));
                const DenseTensor df = DenseTensor::from_kernel(f);
                const DenseTensor dg = DenseTensor::from_kernel(g);
                for (int l = 0; l <= std::min(n, m); ++l) {
                    const BlockKernel c = contract(f, g, l);
                    const DenseTensor dc = dense_contract(df, dg, l);
                    CHECK(max_abs_diff(DenseTensor::from_block(c), dc) < 1e-11);
                    const SymKernel sym = symmetrize_block(c);
                    CHECK(max_abs_diff(DenseTensor::from_kernel(sym), dense_symmetrize(dc)) <
                          1e-11);
                }
                if (n == m)
                    CHECK(inner_ambient(f, g) == doctest::Approx(dense_inner(df, dg)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("contraction identity: |f (x)_r g|^2 = <f (x)_{n-r} f, g (x)_{m-r} g>") {
    const RandomStream root(97, 3);
    int id = 0;
    for (int dim = 2; dim <= 4; ++dim) {
        for (int n = 1; n <= 3; ++n) {
            for (int m = n; m <= 3; ++m) {
                const SymKernel f = checks::random_kernel(dim, n, root.substream(++id));
                const SymKernel g = checks::random_kernel(dim, m, root.substream(++id));
                for (int r = 1; r <= std::min(n, m); ++r) {
                    const double lhs = norm_ambient_sq(contract(f, g, r));
                    const double rhs =
                        inner_ambient(contract(f, f, n - r), contract(g, g, m - r));
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
                    // Cauchy-Schwarz chain used by the multidimensional bound
                    const double bound = norm_ambient(contract(f, f, n - r)) *
                                         norm_ambient(contract(g, g, m - r));
                    CHECK(lhs <= bound * (1.0 + 1e-10) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("symmetrization does not increase the ambient norm") {
    const RandomStream root(555, 9);
    for (int id = 0; id < 20; ++id) {
        const int dim = 2 + id % 3;
        const int n = 1 + id % 3;
        const int m = 1 + (id / 3) % 3;
        const SymKernel f = checks::random_kernel(dim, n, root.substream(2 * id));
        const SymKernel g = checks::random_kernel(dim, m, root.substream(2 * id + 1));
        for (int l = 0; l <= std::min(n, m); ++l) {
            const BlockKernel block = contract(f, g, l);
            CHECK(norm_ambient(symmetrize_block(block)) <=
                  norm_ambient(block) * (1.0 + 1e-12) + 1e-14);
        }
    }
}

TEST_CASE("order-0 degeneracies") {
    const SymKernel c = SymKernel::constant(3, 2.5);
    CHECK(c.scalar_value() == 2.5);
    CHECK(norm_modified(c) == doctest::Approx(2.5));
    const BlockKernel t = contract(c, c, 0);
    CHECK(t.is_scalar());
    CHECK(t.scalar_value() == doctest::Approx(6.25));
    CHECK(symmetrize_block(t).scalar_value() == doctest::Approx(6.25));
}

TEST_CASE("relabeling basis vectors leaves norms invariant") {
    // permutation invariance of the sparse machinery
    const SymKernel f = SymKernel::make(3, 2, {{{1, 1}, 0.3}, {{1, 2}, -0.7}, {{2, 3}, 0.4}});
    // swap labels 1 <-> 3
    const SymKernel g = SymKernel::make(3, 2, {{{3, 3}, 0.3}, {{2, 3}, -0.7}, {{1, 2}, 0.4}});
    CHECK(norm_ambient_sq(f) == doctest::Approx(norm_ambient_sq(g)));
    for (int l = 0; l <= 2; ++l)
        CHECK(norm_ambient_sq(contract(f, f, l)) ==
              doctest::Approx(norm_ambient_sq(contract(g, g, l))));
}
