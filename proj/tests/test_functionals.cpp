#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "majkit/functionals.hpp"
#include "majkit/kernels.hpp"
#include "majkit/random.hpp"
#include "support/generators.hpp"
#include "support/rational_oracles.hpp"

using namespace majkit;
using majkit_tests::random_function;
using majkit_tests::random_space;
using majkit_tests::random_stochastic_kernel;

namespace {

ConvexFunctional random_convex(Rng& rng, std::size_t dim, std::size_t pieces) {
    std::vector<AffinePiece> ps(pieces);
    for (auto& p : ps) {
        p.slope = rng.gaussians(dim);
        p.intercept = rng.gaussian();
    }
    return ConvexFunctional(std::move(ps));
}

}  // namespace

TEST_CASE("evaluate pinned values") {
    SublinearFunctional abs({{1.0}, {-1.0}});
    CHECK(abs.evaluate({-3.0}) == 3.0);
    CHECK(abs.evaluate({2.5}) == 2.5);
    CHECK_THROWS_AS(abs.evaluate({1.0, 2.0}), std::invalid_argument);

    SublinearFunctional zero({{0.0, 0.0}});
    CHECK(zero.evaluate({4.0, -7.0}) == 0.0);

    ConvexFunctional hinge({{{1.0}, -2.0}, {{0.0}, 0.0}});
    CHECK(hinge.evaluate({2.0}) == 0.0);
    CHECK(hinge.evaluate({5.0}) == 3.0);
    CHECK(hinge.evaluate({-1.0}) == 0.0);

    CHECK_THROWS_AS(SublinearFunctional({}), std::invalid_argument);
    CHECK_THROWS_AS(ConvexFunctional({}), std::invalid_argument);
}

TEST_CASE("positive homogeneity is exact for dyadic scaling") {
    Rng rng(401);
    for (int trial = 0; trial < 50; ++trial) {
        auto phi = sample_sublinear(rng, 1 + rng.below(4), 1 + rng.below(5), false);
        auto v = rng.gaussians(phi.dimension());
        for (int e = -3; e <= 6; ++e) {
            double lambda = std::ldexp(1.0, e);
            std::vector<double> scaled(v);
            for (double& x : scaled) x *= lambda;
            CHECK(phi.evaluate(scaled) == lambda * phi.evaluate(v));
        }
        std::vector<double> zeroed(v.size(), 0.0);
        CHECK(phi.evaluate(zeroed) == 0.0 * phi.evaluate(v));
    }
}

TEST_CASE("subadditivity holds on random pairs") {
    Rng rng(402);
    for (int trial = 0; trial < 100; ++trial) {
        auto phi = sample_sublinear(rng, 1 + rng.below(4), 1 + rng.below(5),
                                    rng.below(2) == 0);
        auto u = rng.gaussians(phi.dimension());
        auto v = rng.gaussians(phi.dimension());
        std::vector<double> sum(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) sum[i] = u[i] + v[i];
        CHECK(phi.evaluate(sum) <= phi.evaluate(u) + phi.evaluate(v) + 1e-12);
    }
}

TEST_CASE("perspective pinned case reproduces the absolute difference") {
    ConvexFunctional phi({{{1.0}, -1.0}, {{-1.0}, 1.0}});
    auto psi = perspective(phi);
    REQUIRE(psi.dimension() == 2);
    CHECK(psi.evaluate({3.0, 1.0}) == 2.0);
    CHECK(psi.evaluate({1.0, 4.0}) == 3.0);
    CHECK(psi.evaluate({2.0, 2.0}) == 0.0);

    ConvexFunctional linear({{{2.0, -1.0}, 0.0}});
    auto hom = perspective(linear);
    CHECK(hom.evaluate({1.0, 1.0, 5.0}) == 1.0);
}

TEST_CASE("perspective agrees with direct scaling at positive heights") {
    Rng rng(403);
    for (int trial = 0; trial < 100; ++trial) {
        auto phi = random_convex(rng, 1 + rng.below(3), 1 + rng.below(4));
        auto psi = perspective(phi);
        auto v = rng.gaussians(phi.dimension());
        double x = rng.uniform(0.05, 3.0);
        std::vector<double> ratio(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) ratio[i] = v[i] / x;
        std::vector<double> lifted(v);
        lifted.push_back(x);
        CHECK(psi.evaluate(lifted) ==
              doctest::Approx(x * phi.evaluate(ratio)).epsilon(1e-10));
    }
}

TEST_CASE("perspective at unit height recovers the convex functional exactly") {
    Rng rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        auto phi = random_convex(rng, 1 + rng.below(3), 1 + rng.below(4));
        auto psi = perspective(phi);
        auto v = rng.gaussians(phi.dimension());
        std::vector<double> lifted(v);
        lifted.push_back(1.0);
        CHECK(psi.evaluate(lifted) == phi.evaluate(v));
    }
}

TEST_CASE("affine_slice inverts perspective at the representation level") {
    Rng rng(405);
    for (int trial = 0; trial < 30; ++trial) {
        auto phi = random_convex(rng, 1 + rng.below(3), 1 + rng.below(4));
        auto back = affine_slice(perspective(phi));
        REQUIRE(back.pieces().size() == phi.pieces().size());
        for (std::size_t k = 0; k < phi.pieces().size(); ++k) {
            CHECK(back.pieces()[k].slope == phi.pieces()[k].slope);
            CHECK(back.pieces()[k].intercept == phi.pieces()[k].intercept);
        }
    }
    CHECK_THROWS_AS(affine_slice(SublinearFunctional(std::vector<std::vector<double>>{{1.0}})), std::invalid_argument);
}

TEST_CASE("phi_divergence pinned values") {
    FiniteMeasureSpace two = FiniteMeasureSpace::counting(2);
    ConvexFunctional absdev({{{1.0}, -1.0}, {{-1.0}, 1.0}});
    auto f = VectorStepFunction::scalar(two, {0.7, 1.3});
    CHECK(phi_divergence(absdev, f, f) == doctest::Approx(0.0));

    ConvexFunctional hinge({{{1.0}, -1.0}, {{0.0}, 0.0}});
    auto f20 = VectorStepFunction::scalar(two, {2.0, 0.0});
    auto ones = VectorStepFunction::scalar(two, {1.0, 1.0});
    CHECK(phi_divergence(hinge, f20, ones) == doctest::Approx(1.0));

    auto bad = VectorStepFunction::scalar(two, {1.0, 0.0});
    CHECK_THROWS_AS(phi_divergence(hinge, f20, bad), std::invalid_argument);
}

TEST_CASE("phi_divergence equals the perspective integral") {
    Rng rng(406);
    for (int trial = 0; trial < 100; ++trial) {
        auto space = random_space(rng, 1 + rng.below(6));
        std::size_t dim = 1 + rng.below(3);
        auto phi = random_convex(rng, dim, 1 + rng.below(4));
        auto f = random_function(rng, space, dim);
        auto h = VectorStepFunction::scalar(space, rng.positives(space.size()));
        double direct = phi_divergence(phi, f, h);
        double via = sublinear_integral(perspective(phi), stack(f, h));
        CHECK(std::fabs(direct - via) <= 1e-10 * (1.0 + std::fabs(direct)));
    }
}

TEST_CASE("sublinear_integral pinned and oracle checked") {
    FiniteMeasureSpace two({0.5, 1.5});
    SublinearFunctional abs({{1.0}, {-1.0}});
    auto f = VectorStepFunction::scalar(two, {2.0, -1.0});
    CHECK(sublinear_integral(abs, f) == doctest::Approx(l1_norm(f)));

    SublinearFunctional lin(std::vector<std::vector<double>>{{3.0}});
    auto total = integral(f);
    CHECK(sublinear_integral(lin, f) == doctest::Approx(3.0 * total[0]));

    Rng rng(407);
    for (int trial = 0; trial < 60; ++trial) {
        auto space = random_space(rng, 1 + rng.below(6));
        std::size_t dim = 1 + rng.below(3);
        auto phi = sample_sublinear(rng, dim, 1 + rng.below(4), rng.below(2) == 0);
        auto g = random_function(rng, space, dim);
        Rational oracle = majkit_tests::rational_sublinear_integral(phi, g);
        CHECK(sublinear_integral(phi, g) ==
              doctest::Approx(to_double(oracle)).epsilon(1e-10));
    }
}

TEST_CASE("jensen_check convex form needs a probability space") {
    FiniteMeasureSpace half({0.5, 0.5});
    ConvexFunctional abs({{{1.0}, 0.0}, {{-1.0}, 0.0}});
    auto f = VectorStepFunction::scalar(half, {1.0, -1.0});
    auto [lhs, rhs] = jensen_check(abs, f);
    CHECK(lhs == doctest::Approx(0.0));
    CHECK(rhs == doctest::Approx(1.0));

    auto c = VectorStepFunction::scalar(half, {2.0, 2.0});
    auto [clhs, crhs] = jensen_check(abs, c);
    CHECK(clhs == doctest::Approx(crhs));

    FiniteMeasureSpace heavy({2.0, 3.0});
    auto g = VectorStepFunction::scalar(heavy, {1.0, 2.0});
    CHECK_THROWS_AS(jensen_check(abs, g), std::invalid_argument);
}

TEST_CASE("jensen_check sublinear form works on any finite measure") {
    Rng rng(408);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.below(6);
        std::vector<double> w = rng.positives(n);
        // Rescale to total mass 7 to stress the non-probability case.
        double total = 0.0;
        for (double x : w) total += x;
        for (double& x : w) x *= 7.0 / total;
        FiniteMeasureSpace space(w);
        std::size_t dim = 1 + rng.below(3);
        auto psi = sample_sublinear(rng, dim, 1 + rng.below(5), rng.below(2) == 0);
        auto f = random_function(rng, space, dim);
        auto [lhs, rhs] = jensen_check(psi, f);
        CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("sample_sublinear determinism and nonnegativity") {
    auto a = sample_sublinear(3, 4, true, 99);
    auto b = sample_sublinear(3, 4, true, 99);
    REQUIRE(a.pieces().size() == b.pieces().size());
    for (std::size_t k = 0; k < a.pieces().size(); ++k)
        CHECK(a.pieces()[k] == b.pieces()[k]);
    CHECK(a.has_zero_piece());

    Rng rng(409);
    auto phi = sample_sublinear(rng, 2, 1, true);
    for (int i = 0; i < 50; ++i) CHECK(phi.evaluate(rng.gaussians(2)) >= 0.0);
    auto plain = sample_sublinear(rng, 2, 3, false);
    CHECK_FALSE(plain.has_zero_piece());
}

TEST_CASE("lipschitz_bound controls increments in the sup norm") {
    Rng rng(410);
    for (int trial = 0; trial < 50; ++trial) {
        auto phi = sample_sublinear(rng, 1 + rng.below(4), 1 + rng.below(5), false);
        double c = lipschitz_bound(phi);
        auto u = rng.gaussians(phi.dimension());
        auto v = rng.gaussians(phi.dimension());
        CHECK(std::fabs(phi.evaluate(u) - phi.evaluate(v)) <=
              c * linf_diff(u, v) + 1e-12);
    }
}

TEST_CASE("divergence shrinks under stochastic kernels") {
    Rng rng(411);
    for (int trial = 0; trial < 60; ++trial) {
        auto domain = random_space(rng, 1 + rng.below(5));
        auto codomain = random_space(rng, 1 + rng.below(5));
        auto k = random_stochastic_kernel(rng, domain, codomain);
        std::size_t dim = 1 + rng.below(2);
        auto phi = random_convex(rng, dim, 1 + rng.below(4));
        auto f = random_function(rng, domain, dim);
        auto h = VectorStepFunction::scalar(domain, rng.positives(domain.size()));
        double before = phi_divergence(phi, f, h);
        double after = phi_divergence(phi, apply(k, f), apply(k, h));
        CHECK(after <= before + 1e-9 * (1.0 + std::fabs(before)));
    }
}
