#include "sqrf/bloch.hpp"

#include "sqrf/steady_state.hpp"
#include "sqrf/sweep.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sqrf;

TEST_CASE("undriven atom sits in the ground state") {
    const AtomicState s = bloch_steady(BlochParams{0.0, 0.3, 1.0, 0.1});
    CHECK(s.a22() == 0.0);
    CHECK(std::abs(s.coherence()) == 0.0);
    CHECK(free_space_variance(BlochParams{0.0, 0.0, 1.0, 0.0}) == 0.0);
}

TEST_CASE("strong resonant driving saturates the atom") {
    const BlochParams p{1e3, 0.0, 1.0, 0.0};
    const AtomicState s = bloch_steady(p);
    CHECK_THAT(s.a22(), Catch::Matchers::WithinAbs(0.5, 1e-4));
    CHECK_THAT(free_space_variance(p), Catch::Matchers::WithinAbs(1.0, 1e-3));
}

TEST_CASE("resonant drive closed form") {
    // At delta_a = 0, gamma_d = 0 the stationary excitation is
    // 4 x / (8 x + 1) with x = (rabi/gamma)^2, and the variance
    // 8 x (8 x - 1) / (8 x + 1)^2.
    const double gamma = 1.0;
    for (double rabi : {0.1, 0.5, 1.3}) {
        const double x = rabi * rabi;
        const AtomicState s = bloch_steady(BlochParams{rabi, 0.0, gamma, 0.0});
        CHECK_THAT(s.a22(), Catch::Matchers::WithinAbs(4.0 * x / (8.0 * x + 1.0), 1e-12));
        CHECK_THAT(normally_ordered_variance(s),
                   Catch::Matchers::WithinAbs(8.0 * x * (8.0 * x - 1.0) / std::pow(8.0 * x + 1.0, 2), 1e-12));
    }
}

TEST_CASE("reduced states are physical") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const BlochParams p{3.0 * unit(rng), 6.0 * (unit(rng) - 0.5), 0.1 + unit(rng),
                            unit(rng)};
        const AtomicState s = bloch_steady(p);
        CHECK(std::abs((s.sigma(0, 0) + s.sigma(1, 1)).real() - 1.0) < 1e-10);
        CHECK(std::abs(s.sigma(1, 0) - std::conj(s.sigma(0, 1))) < 1e-10);
        CHECK(atomic_det(s) >= -1e-10);
        CHECK(s.a22() >= 0.0);
        CHECK(s.a22() <= 0.5 + 1e-12);  // incoherent drive cannot invert
    }
}

TEST_CASE("gamma = 0 is rejected") {
    CHECK_THROWS_AS(bloch_steady(BlochParams{1.0, 0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("free-space optimum is -1/8 at the known drive") {
    // Exact optimum of the closed form above: x = 1/24.
    const double rabi_star = std::sqrt(1.0 / 24.0);
    CHECK_THAT(free_space_variance(BlochParams{rabi_star, 0.0, 1.0, 0.0}),
               Catch::Matchers::WithinAbs(-0.125, 1e-12));

    const FreeSpaceOptimum opt = free_space_minimum(1.0, 0.0);
    CHECK_THAT(opt.variance, Catch::Matchers::WithinAbs(-0.125, 1e-4));
    CHECK_THAT(opt.rabi, Catch::Matchers::WithinAbs(rabi_star, 1e-3));
}

TEST_CASE("free-space squeezing exists exactly while gamma_d < gamma") {
    CHECK(free_space_minimum(1.0, 0.9).variance < 0.0);
    CHECK(free_space_minimum(1.0, 0.99).variance < 0.0);
    CHECK(free_space_minimum(1.0, 1.01).variance >= 0.0);
    CHECK(free_space_minimum(1.0, 1.5).variance >= 0.0);

    // At the boundary the optimized variance is flat at zero from above.
    CHECK(free_space_minimum(1.0, 1.0).variance >= -1e-6);
}

TEST_CASE("full solver at g = 0 matches the Bloch oracle") {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        SystemParams p;
        p.rabi = 2.0 * unit(rng);
        p.delta_a = 4.0 * (unit(rng) - 0.5);
        p.delta_c = 4.0 * (unit(rng) - 0.5);
        p.coupling = 0.0;
        p.kappa = 0.2 + unit(rng);
        p.gamma = 0.2 + unit(rng);
        p.gamma_d = unit(rng);
        p.n_max = 3;
        const AtomicState full = reduce_atom(solve_steady(p).rho);
        const AtomicState oracle =
            bloch_steady(BlochParams{p.rabi, p.delta_a, p.gamma, p.gamma_d});
        CHECK((full.sigma - oracle.sigma).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK_THAT(free_space_variance(BlochParams{p.rabi, p.delta_a, p.gamma, p.gamma_d}),
                   Catch::Matchers::WithinAbs(normally_ordered_variance(full), 1e-10));
    }
}

TEST_CASE("weak drive at large detuning keeps the excitation moderate") {
    // |delta_a| >~ rabi keeps <A_22> below about 1/3: the regime where
    // free-space squeezing survives.
    for (double rabi : {0.3, 0.6, 1.0}) {
        const AtomicState s = bloch_steady(BlochParams{rabi, 1.5 * rabi, 1.0, 0.0});
        CHECK(s.a22() < 1.0 / 3.0 + 0.05);
    }
}
