// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "qmctrio/kernels.hpp"
#include "qmctrio/linalg.hpp"
#include "qmctrio/rand.hpp"

using namespace qmct;

namespace {

double kernel1(const KernelSpec& spec, double x, double t) {
    const double xs[1] = {x}, ts[1] = {t};
    return kernel_eval(spec, xs, ts);
}

}  // namespace

TEST_CASE("kernel_eval closed values") {
    const std::vector<double> ones3 = {1, 1, 1};
    CHECK(kernel_eval(KernelSpec::l2(3), ones3, ones3) == doctest::Approx(1.0));

    const std::vector<double> x = {0.3, 0.8};
    CHECK(kernel_eval(KernelSpec::matern(2, 2.5), x, x) == doctest::Approx(1.0));

    // gamma = 1 weighted kernel coincides with the l2 kernel
    RandomStream stream(StreamKey{5});
    const KernelSpec w1 = KernelSpec::weighted(3, {1, 1, 1});
    const KernelSpec l2 = KernelSpec::l2(3);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> a(3), b(3);
        for (double& v : a) v = stream.next_uniform01();
        for (double& v : b) v = stream.next_uniform01();
        CHECK(kernel_eval(w1, a, b) == doctest::Approx(kernel_eval(l2, a, b)).epsilon(1e-15));
    }
}

TEST_CASE("kernel symmetry and domain checks") {
    RandomStream stream(StreamKey{6});
    for (const KernelSpec& spec :
         {KernelSpec::l2(2), KernelSpec::weighted_decay(2, 3.0), KernelSpec::matern(2, 0.7)}) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> a(2), b(2);
            for (double& v : a) v = stream.next_uniform01();
            for (double& v : b) v = stream.next_uniform01();
            CHECK(kernel_eval(spec, a, b) == kernel_eval(spec, b, a));
        }
        const std::vector<double> out = {1.2, 0.5}, in = {0.5, 0.5};
        CHECK_THROWS_AS(kernel_eval(spec, out, in), std::domain_error);
        CHECK_THROWS_AS(mean_embedding(spec, out), std::domain_error);
    }
}

TEST_CASE("spec constructors validate") {
    CHECK_THROWS_AS(KernelSpec::weighted(2, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::weighted(2, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::matern(2, 0.0), std::invalid_argument);
    const KernelSpec w = KernelSpec::weighted_decay(3, 3.0);
    CHECK(w.gamma[0] == doctest::Approx(1.0));
    CHECK(w.gamma[1] == doctest::Approx(std::pow(2.0, -1.5)));
    CHECK(w.gamma[2] == doctest::Approx(std::pow(3.0, -1.5)));
}

TEST_CASE("mean_embedding closed values") {
    const double one = 1.0, zero = 0.0;
    CHECK(mean_embedding(KernelSpec::l2(1), {&one, 1}) == doctest::Approx(1.0));
    CHECK(mean_embedding(KernelSpec::l2(1), {&zero, 1}) == doctest::Approx(1.5));

    // d > 1 is the product of per-coordinate factors
    const std::vector<double> x = {0.2, 0.7};
    CHECK(mean_embedding(KernelSpec::l2(2), x) ==
          doctest::Approx((3 - 0.04) / 2 * (3 - 0.49) / 2).epsilon(1e-15));
}

TEST_CASE("embeddings match the quadrature oracle") {
    for (const KernelSpec& spec : {KernelSpec::l2(1), KernelSpec::weighted_decay(1, 3.0),
                                   KernelSpec::matern(1, 1.0), KernelSpec::matern(1, 0.3),
                                   KernelSpec::matern(1, 5.0)}) {
        for (double x : {0.0, 0.17, 0.5, 0.83, 1.0}) {
            const double oracle = testutil::simpson(
                [&](double t) { return kernel1(spec, x, t); }, 0.0, 1.0);
            CHECK(mean_embedding(spec, {&x, 1}) == doctest::Approx(oracle).epsilon(1e-10));
        }
        const double oracle2 =
            testutil::simpson2([&](double x, double t) { return kernel1(spec, x, t); });
        CHECK(double_integral(spec) == doctest::Approx(oracle2).epsilon(1e-9));
    }
}

TEST_CASE("embedding consistency in d = 2") {
    const KernelSpec spec = KernelSpec::matern(2, 1.7);
    const std::vector<double> x = {0.35, 0.8};
    const double oracle = testutil::simpson2([&](double t0, double t1) {
        const std::vector<double> t = {t0, t1};
        return kernel_eval(spec, x, t);
    });
    CHECK(mean_embedding(spec, x) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("double_integral closed values") {
    CHECK(double_integral(KernelSpec::l2(3)) ==
          doctest::Approx(std::pow(4.0 / 3.0, 3)).epsilon(1e-15));
    // gamma -> 0 limit tends to 1 per coordinate
    CHECK(double_integral(KernelSpec::weighted(2, {1e-8, 1e-8})) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gram") {
    const std::vector<double> single = {0.4, 0.9};
    const KernelSpec l2 = KernelSpec::l2(2);
    const SymMatrix g1 = gram(l2, single, 1);
    CHECK(g1.order() == 1);
    CHECK(g1(0, 0) == doctest::Approx(kernel_eval(l2, single, single)));

    RandomStream stream(StreamKey{9});
    const std::size_t n = 12, d = 3;
    std::vector<double> nodes(n * d);
    for (double& v : nodes) v = stream.next_uniform01();

    for (const KernelSpec& spec :
         {KernelSpec::l2(d), KernelSpec::weighted_decay(d, 3.0), KernelSpec::matern(d, 1.0)}) {
        const SymMatrix g = gram(spec, nodes, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double direct =
                    kernel_eval(spec, {nodes.data() + i * d, d}, {nodes.data() + j * d, d});
                CHECK(g(i, j) == doctest::Approx(direct).epsilon(1e-15));
            }
    }
    const SymMatrix gm = gram(KernelSpec::matern(d, 2.0), nodes, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(gm(i, i) == doctest::Approx(1.0));
}

TEST_CASE("gram of random nodes is numerically PSD") {
    RandomStream stream(StreamKey{10});
    const std::size_t n = 64, d = 4;
    std::vector<double> nodes(n * d);
    for (double& v : nodes) v = stream.next_uniform01();
    for (const KernelSpec& spec :
         {KernelSpec::l2(d), KernelSpec::weighted_decay(d, 3.0), KernelSpec::matern(d, 1.0)}) {
        const SymMatrix g = gram(spec, nodes, n);
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += g(i, i);
        const CholeskyFactor chol = cholesky(g, JitterPolicy{1e-12, 1e-8});
        CHECK(chol.jitter <= 1e-8 * trace / static_cast<double>(n));
    }
}
