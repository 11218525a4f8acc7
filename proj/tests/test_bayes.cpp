// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "qmctrio/bayes.hpp"
#include "qmctrio/linalg.hpp"
#include "qmctrio/sequences.hpp"
#include "qmctrio/trio.hpp"

using namespace qmct;

namespace {

std::vector<double> sobol_nodes_flat(std::size_t d, unsigned m, std::uint64_t seed) {
    SamplerSpec spec{SamplerKind::sobol, d, Randomization::scramble_shift,
                     StreamKey{seed}.child("nodes", 0)};
    return generate_nodes(spec, m).nodes;
}

double objective(std::span<const double> nodes, std::size_t n, std::size_t d,
                 std::span<const double> y, double theta) {
    const KernelSpec spec = KernelSpec::matern(d, theta);
    const CholeskyFactor chol = cholesky(gram(spec, nodes, n));
    const std::vector<double> ciy = spd_solve(chol, y);
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) quad += y[i] * ciy[i];
    return logdet(chol) / static_cast<double>(n) + std::log(quad);
}

}  // namespace

TEST_CASE("one-node cubature") {
    const std::vector<double> node = {0.3};
    const std::vector<double> y = {2.0};
    const BayesFit fit = bayes_cubature(node, 1, 1, y, 1.0, WeightMode::optimal);
    const double c = mean_embedding(KernelSpec::matern(1, 1.0), node);
    CHECK(fit.mu_hat == doctest::Approx(c * 2.0).epsilon(1e-12));  // C11 = 1
    const double c0 = double_integral(KernelSpec::matern(1, 1.0));
    CHECK(fit.dsc_b == doctest::Approx(std::sqrt(c0 - c * c)).epsilon(1e-12));
}

TEST_CASE("optimal weights never lose to equal weights") {
    RandomStream stream(StreamKey{51});
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t d = 1 + (stream.next_u32() % 3);
        const std::size_t n = 4 + (stream.next_u32() % 28);
        std::vector<double> nodes(n * d), y(n);
        for (double& v : nodes) v = stream.next_uniform01();
        for (double& v : y) v = stream.next_normal();
        const double theta = 0.5 + 3.0 * stream.next_uniform01();
        const BayesFit eq = bayes_cubature(nodes, n, d, y, theta, WeightMode::equal);
        const BayesFit opt = bayes_cubature(nodes, n, d, y, theta, WeightMode::optimal);
        CHECK(opt.dsc_b <= eq.dsc_b + 1e-10);
    }
}

TEST_CASE("optimal discrepancy equals the quadratic form at the solved weights") {
    RandomStream stream(StreamKey{52});
    const std::size_t n = 12, d = 2;
    std::vector<double> nodes(n * d), y(n);
    for (double& v : nodes) v = stream.next_uniform01();
    for (double& v : y) v = stream.next_normal();
    const double theta = 1.4;
    const BayesFit fit = bayes_cubature(nodes, n, d, y, theta, WeightMode::optimal);

    const KernelSpec spec = KernelSpec::matern(d, theta);
    const SymMatrix cmat = gram(spec, nodes, n);
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i)
        c[i] = mean_embedding(spec, std::span(nodes).subspan(i * d, d));
    const std::vector<double> w = spd_solve(cholesky(cmat), c);
    double quad = double_integral(spec);
    for (std::size_t i = 0; i < n; ++i) {
        quad -= 2.0 * c[i] * w[i];
        for (std::size_t j = 0; j < n; ++j) quad += w[i] * cmat(i, j) * w[j];
    }
    CHECK(fit.dsc_b == doctest::Approx(std::sqrt(std::max(0.0, quad))).epsilon(1e-9));
}

TEST_CASE("mle_fit minimizes its objective over the grid") {
    const std::size_t d = 1;
    const std::vector<double> nodes = sobol_nodes_flat(d, 4, 3);
    const std::size_t n = nodes.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::sin(6.0 * nodes[i]);
    const auto [theta, s] = mle_fit(nodes, n, d, y);
    const double at_min = objective(nodes, n, d, y, theta);
    for (int i = 0; i < 25; ++i) {
        const double t = std::exp(std::log(1e-2) +
                                  (std::log(1e3) - std::log(1e-2)) * i / 24.0);
        CHECK(at_min <= objective(nodes, n, d, y, t) + 1e-9);
    }
    // s matches its closed form at theta
    const CholeskyFactor chol = cholesky(gram(KernelSpec::matern(d, theta), nodes, n));
    const std::vector<double> ciy = spd_solve(chol, y);
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) quad += y[i] * ciy[i];
    CHECK(s == doctest::Approx(std::sqrt(quad / static_cast<double>(n))).epsilon(1e-9));
}

TEST_CASE("mle_fit degenerate inputs") {
    const std::vector<double> nodes = {0.5};
    const std::vector<double> y1 = {1.0};
    CHECK_THROWS_AS(mle_fit(nodes, 1, 1, y1), std::invalid_argument);
    const std::vector<double> nodes2 = {0.25, 0.75};
    const std::vector<double> zeros = {0.0, 0.0};
    CHECK_THROWS_AS(mle_fit(nodes2, 2, 1, zeros), std::invalid_argument);
}

TEST_CASE("scaling y scales the half-width") {
    const std::vector<double> nodes = sobol_nodes_flat(2, 5, 4);
    const std::size_t n = nodes.size() / 2;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = std::cos(3.0 * nodes[2 * i]) + nodes[2 * i + 1];
    const BayesFit base = bayes_fit(nodes, n, 2, y, WeightMode::optimal);
    std::vector<double> y5 = y;
    for (double& v : y5) v *= 5.0;
    const BayesFit scaled = bayes_fit(nodes, n, 2, y5, WeightMode::optimal);
    CHECK(scaled.theta == doctest::Approx(base.theta).epsilon(1e-6));
    CHECK(scaled.half_width_99 == doctest::Approx(5.0 * base.half_width_99).epsilon(1e-6));
    CHECK(scaled.half_width_99 == doctest::Approx(2.58 * scaled.dsc_b * scaled.scale));

    const auto [lo, hi] = credible_bound(scaled);
    CHECK(lo == doctest::Approx(scaled.mu_hat - scaled.half_width_99));
    CHECK(hi == doctest::Approx(scaled.mu_hat + scaled.half_width_99));
}

TEST_CASE("shape recovery on synthetic draws") {
    // y drawn from the GP at theta* = 10: the MLE should land near it
    const std::size_t d = 1;
    const double theta_star = 10.0;
    const KernelSpec spec = KernelSpec::matern(d, theta_star);
    const std::vector<double> nodes = sobol_nodes_flat(d, 8, 5);  // n = 256
    const std::size_t n = nodes.size();
    std::size_t hits = 0;
    const std::size_t reps = 50;
    for (std::size_t r = 0; r < reps; ++r) {
        RandomStream stream(StreamKey{53}.child("rep", r));
        const GpDraw draw = gp_joint_sample(spec, 1.0, nodes, n, stream);
        const auto [theta, s] = mle_fit(nodes, n, d, draw.y);
        if (theta > theta_star / 3.0 && theta < theta_star * 3.0) ++hits;
    }
    CHECK(hits >= reps * 8 / 10);
}

TEST_CASE("marginal of the joint sample at n = 0") {
    const KernelSpec spec = KernelSpec::matern(1, 2.0);
    const double s = 1.7;
    std::vector<double> draws(10000);
    RandomStream stream(StreamKey{54});
    for (double& v : draws) {
        const GpDraw d = gp_joint_sample(spec, s, {}, 0, stream);
        v = d.integral_mean;
    }
    const double target = s * s * double_integral(spec);
    CHECK(std::abs(testutil::variance(draws) - target) < 0.05 * target);
}

TEST_CASE("Bayesian confounding is standard normal") {
    const std::size_t d = 2, n = 16;
    const KernelSpec spec = KernelSpec::matern(d, 1.0);
    const std::vector<double> nodes = sobol_nodes_flat(d, 4, 6);
    const BayesFit probe = bayes_cubature(nodes, n, d, std::vector<double>(n, 0.0), 1.0,
                                          WeightMode::equal);
    const double dsc = probe.dsc_b;
    const double s = 0.8;

    std::vector<double> cnf(2000), errs(2000);
    RandomStream stream(StreamKey{55});
    std::vector<double> y0(2000);
    for (std::size_t r = 0; r < cnf.size(); ++r) {
        const GpDraw draw = gp_joint_sample(spec, s, nodes, n, stream);
        double mu_hat = 0.0;
        for (double v : draw.y) mu_hat += v / static_cast<double>(n);
        const double err = draw.integral_mean - mu_hat;
        cnf[r] = err / (s * dsc);
        errs[r] = err;
        y0[r] = draw.y[0];
        // trio reconstruction is exact by definition of cnf
        CHECK(std::abs(err - cnf[r] * dsc * s) <= 1e-12 * (1.0 + std::abs(err)));
    }
    CHECK(std::abs(testutil::mean(cnf)) < 0.07);
    CHECK(testutil::variance(cnf) > 0.85);
    CHECK(testutil::variance(cnf) < 1.15);

    // with optimal weights the error is uncorrelated with the data
    std::vector<double> opt_err(2000), opt_y0(2000);
    const std::vector<double> w = [&] {
        std::vector<double> c(n);
        for (std::size_t i = 0; i < n; ++i)
            c[i] = mean_embedding(spec, std::span(nodes).subspan(i * d, d));
        return spd_solve(cholesky(gram(spec, nodes, n)), c);
    }();
    RandomStream stream2(StreamKey{56});
    for (std::size_t r = 0; r < opt_err.size(); ++r) {
        const GpDraw draw = gp_joint_sample(spec, s, nodes, n, stream2);
        double mu_hat = 0.0;
        for (std::size_t i = 0; i < n; ++i) mu_hat += w[i] * draw.y[i];
        opt_err[r] = draw.integral_mean - mu_hat;
        opt_y0[r] = draw.y[0];
    }
    double cov = 0.0;
    const double me = testutil::mean(opt_err), my = testutil::mean(opt_y0);
    for (std::size_t r = 0; r < opt_err.size(); ++r)
        cov += (opt_err[r] - me) * (opt_y0[r] - my);
    cov /= static_cast<double>(opt_err.size() - 1);
    const double corr =
        cov / std::sqrt(testutil::variance(opt_err) * testutil::variance(opt_y0));
    CHECK(std::abs(corr) <= 0.1);
}

TEST_CASE("randomized Bayesian discrepancy") {
    const KernelSpec spec = KernelSpec::matern(2, 1.0);
    const std::size_t n = 16;
    const std::vector<double> fixed = sobol_nodes_flat(2, 4, 7);
    // a deterministic design maker reduces to the single-design value
    const double rb = randomized_bayes_discrepancy(
        spec, [&](std::size_t) { return fixed; }, n, 5);
    const BayesFit fit = bayes_cubature(fixed, n, 2, std::vector<double>(n, 0.0), 1.0,
                                        WeightMode::equal);
    CHECK(rb == doctest::Approx(fit.dsc_b).epsilon(1e-12));

    // mean bounds for genuinely random designs
    auto maker = [&](std::size_t r) {
        RandomStream stream(StreamKey{57}.child("rep", r));
        std::vector<double> nodes(n * 2);
        for (double& v : nodes) v = stream.next_uniform01();
        return nodes;
    };
    const std::size_t reps = 20;
    const double rbr = randomized_bayes_discrepancy(spec, maker, n, reps);
    double lo = 1e300, hi = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const BayesFit f = bayes_cubature(maker(r), n, 2, std::vector<double>(n, 0.0), 1.0,
                                          WeightMode::equal);
        lo = std::min(lo, f.dsc_b);
        hi = std::max(hi, f.dsc_b);
    }
    CHECK(rbr >= lo - 1e-12);
    CHECK(rbr <= hi + 1e-12);

    CHECK_THROWS_AS(randomized_bayes_discrepancy(spec, maker, n, 1), std::invalid_argument);
}

TEST_CASE("half-width shrinks with n") {
    const std::size_t d = 2;
    std::vector<double> widths;
    for (unsigned m = 4; m <= 9; ++m) {
        const std::vector<double> nodes = sobol_nodes_flat(d, m, 60 + m);
        const std::size_t n = nodes.size() / d;
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = std::sin(4.0 * nodes[i * d]) * (1.0 + nodes[i * d + 1]);
        widths.push_back(bayes_fit(nodes, n, d, y, WeightMode::optimal).half_width_99);
        CHECK(widths.back() > 0.0);
    }
    std::size_t violations = 0;
    for (std::size_t i = 1; i < widths.size(); ++i)
        if (widths[i] >= widths[i - 1]) ++violations;
    CHECK(violations <= 1);
}
