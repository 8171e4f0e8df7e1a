#include "chaoskit/chaos_eval.hpp"

#include <cmath>

#include "chaoskit/checks/gauss_poly.hpp"
#include "chaoskit/checks/random_kernels.hpp"
#include "doctest.h"

using namespace chaoskit;

TEST_CASE("hermite recurrence values") {
    CHECK(hermite(0, 3.7) == 1.0);
    CHECK(hermite(1, -0.4) == -0.4);
    CHECK(hermite(2, 1.5) == doctest::Approx(1.25));
    CHECK(hermite(3, 2.0) == doctest::Approx(2.0));
    CHECK(hermite(4, 1.0) == doctest::Approx(1.0 - 6.0 + 3.0));
    CHECK_THROWS_AS(hermite(65, 0.0), CapExceeded);
    CHECK_THROWS_AS(hermite(-1, 0.0), std::invalid_argument);
}

TEST_CASE("inverse normal cdf hits known quantiles") {
    CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(inverse_normal_cdf(0.0013498980316300933) == doctest::Approx(-3.0).epsilon(1e-12));
    // round trip through erfc far into the tail
    const double x = inverse_normal_cdf(1e-10);
    CHECK(0.5 * std::erfc(-x / std::sqrt(2.0)) == doctest::Approx(1e-10).epsilon(1e-9));
}

TEST_CASE("eval_integral on basic kernels") {
    GaussianPoint p{{0.7, -1.1}};
    CHECK(eval_integral(SymKernel::make(2, 1, {{{1}, 1.0}}), p) == doctest::Approx(0.7));
    GaussianPoint q{{1.5, 0.0}};
    CHECK(eval_integral(SymKernel::make(2, 2, {{{1, 1}, 1.0}}), q) == doctest::Approx(1.25));
    // off-diagonal kernel evaluates to 2 a b
    GaussianPoint r{{0.3, -0.8}};
    CHECK(eval_integral(SymKernel::make(2, 2, {{{1, 2}, 1.0}}), r) ==
          doctest::Approx(2.0 * 0.3 * -0.8));
    CHECK(eval_integral(SymKernel::constant(2, 4.2), p) == doctest::Approx(4.2));
    CHECK_THROWS_AS(eval_integral(SymKernel::make(3, 1, {{{1}, 1.0}}), p),
                    std::invalid_argument);
}

TEST_CASE("eval_integral agrees with the monomial-expansion oracle") {
    const RandomStream root(31415, 1);
    for (int id = 0; id < 10; ++id) {
        const int dim = 2 + id % 3;
        const int order = 1 + id % 4;
        const SymKernel f = checks::random_kernel(dim, order, root.substream(id));
        const auto poly = checks::GaussPoly::from_kernel(f);
        for (int s = 0; s < 5; ++s) {
            const GaussianPoint p = sample(dim, root.substream(100 + id), s);
            CHECK(eval_integral(f, p) == doctest::Approx(poly.eval(p.xi)).epsilon(1e-10));
        }
    }
}

TEST_CASE("malliavin gradient basics") {
    GaussianPoint p{{1.5, 0.2}};
    const auto g = malliavin_gradient(SymKernel::make(2, 2, {{{1, 1}, 1.0}}), p);
    CHECK(g[0] == doctest::Approx(3.0));
    CHECK(g[1] == doctest::Approx(0.0));
    const auto g1 = malliavin_gradient(SymKernel::make(2, 1, {{{1}, 1.0}}), p);
    CHECK(g1[0] == doctest::Approx(1.0));
    CHECK(g1[1] == doctest::Approx(0.0));
    CHECK_THROWS_AS(malliavin_gradient(SymKernel::constant(2, 1.0), p), std::invalid_argument);
}

TEST_CASE("gradient equals n I_{n-1}(slice) and central finite differences") {
    const RandomStream root(999, 7);
    for (int id = 0; id < 8; ++id) {
        const int dim = 2 + id % 3;
        const int order = 1 + id % 4;
        const SymKernel f = checks::random_kernel(dim, order, root.substream(id));
        const GaussianPoint p = sample(dim, root.substream(50 + id), 0);
        const auto grad = malliavin_gradient(f, p);
        const double h = 1e-5;
        for (int j = 1; j <= dim; ++j) {
            // slice route
            const double via_slice =
                order * eval_integral(slice(f, j), p);
            CHECK(grad[static_cast<std::size_t>(j - 1)] ==
                  doctest::Approx(via_slice).epsilon(1e-10));
            // finite-difference route
            GaussianPoint up = p, dn = p;
            up.xi[static_cast<std::size_t>(j - 1)] += h;
            dn.xi[static_cast<std::size_t>(j - 1)] -= h;
            const double fd = (eval_integral(f, up) - eval_integral(f, dn)) / (2.0 * h);
            CHECK(grad[static_cast<std::size_t>(j - 1)] ==
                  doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("grad_norm_sq closed cases") {
    GaussianPoint p{{0.4, -1.3}};
    const SymKernel sum2 = SymKernel::make(2, 2, {{{1, 1}, 0.5}, {{2, 2}, 0.5}});
    CHECK(grad_norm_sq(sum2, p) == doctest::Approx(0.4 * 0.4 + 1.3 * 1.3));
    CHECK(grad_norm_sq(SymKernel::make(2, 1, {{{1}, 1.0}}), p) == doctest::Approx(1.0));
    GaussianPoint q{{1.0, 0.0}};
    CHECK(grad_norm_sq(SymKernel::make(2, 2, {{{1, 1}, 1.0}}), q) == doctest::Approx(4.0));
}

TEST_CASE("mc_mean basics") {
    const RandomStream stream(7, 2);
    const auto one = mc_mean(1, [](const GaussianPoint&) { return 1.0; }, 100, stream);
    CHECK(one.mean == doctest::Approx(1.0));
    CHECK(one.stderr_of_mean == doctest::Approx(0.0));

    const auto xi_sq =
        mc_mean(2, [](const GaussianPoint& p) { return p.xi[0] * p.xi[0]; }, 100000, stream);
    CHECK(std::abs(xi_sq.mean - 1.0) < 4.0 * xi_sq.stderr_of_mean);

    const SymKernel e11 = SymKernel::make(1, 2, {{{1, 1}, 1.0}});
    const auto he2_sq = mc_mean(
        1, [&](const GaussianPoint& p) { const double v = eval_integral(e11, p); return v * v; },
        100000, stream.substream(1));
    CHECK(std::abs(he2_sq.mean - 2.0) < 4.0 * he2_sq.stderr_of_mean);

    CHECK_THROWS_AS(mc_mean(1, [](const GaussianPoint&) { return 0.0; }, 1, stream),
                    std::invalid_argument);
}

TEST_CASE("isometry: E[I_n(f) I_m(g)] is 0 across orders and n!<f,g> within") {
    const RandomStream root(8675309, 4);
    const SymKernel f = checks::random_kernel(3, 2, root.substream(1));
    const SymKernel g = checks::random_kernel(3, 3, root.substream(2));
    const SymKernel h = checks::random_kernel(3, 2, root.substream(3));

    const auto cross = mc_mean(
        3,
        [&](const GaussianPoint& p) { return eval_integral(f, p) * eval_integral(g, p); },
        200000, root.substream(10));
    CHECK(std::abs(cross.mean) < 4.0 * cross.stderr_of_mean);

    const auto same = mc_mean(
        3,
        [&](const GaussianPoint& p) { return eval_integral(f, p) * eval_integral(h, p); },
        200000, root.substream(11));
    CHECK(std::abs(same.mean - 2.0 * inner_ambient(f, h)) < 4.0 * same.stderr_of_mean);
}

TEST_CASE("E[supnorm of gradient] matches n |f|^2 via MC") {
    const RandomStream root(424242, 6);
    const SymKernel f = checks::random_unit_kernel(3, 3, root.substream(0));
    const auto est = mc_mean(
        3, [&](const GaussianPoint& p) { return grad_norm_sq(f, p); }, 200000,
        root.substream(1));
    const double target = 3.0 * norm_modified_sq(f);
    CHECK(std::abs(est.mean - target) < 4.0 * est.stderr_of_mean);
}

TEST_CASE("streams are reproducible and order-independent") {
    const RandomStream a(123, 9);
    const RandomStream b(123, 9);
    CHECK(a.normal(17) == b.normal(17));
    CHECK(a.uniform(0) == b.uniform(0));
    // reading out of order changes nothing
    const double late = a.normal(5);
    (void)a.normal(99);
    CHECK(a.normal(5) == late);
    // different stream ids decorrelate
    CHECK(RandomStream(123, 1).bits(0) != RandomStream(123, 2).bits(0));
    CHECK(a.substream(4).bits(0) == b.substream(4).bits(0));
}
