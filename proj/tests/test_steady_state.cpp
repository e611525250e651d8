#include "sqrf/steady_state.hpp"

#include "sqrf/bloch.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sqrf;

namespace {

SystemParams fig2_params(double delta_a) {
    SystemParams p;
    p.rabi = 14.0;
    p.delta_a = delta_a;
    p.delta_c = -34.0;
    p.coupling = 1.0;
    p.kappa = 1.58;
    p.gamma = 13.0 / 300.0;
    p.gamma_d = 0.0;
    p.n_max = 6;
    return p;
}

}  // namespace

TEST_CASE("pure decay relaxes to the vacuum-ground state") {
    SystemParams p;
    p.rabi = 0.0;
    p.coupling = 0.0;
    p.gamma = 1.0;
    p.kappa = 1.0;
    p.n_max = 4;
    const SteadyStateResult r = solve_steady(p);
    CHECK(r.converged);
    const Matrix target = DensityMatrix::vacuum_ground(4).elements;
    CHECK((r.rho.elements - target).cwiseAbs().maxCoeff() < 1e-12);

    p.n_max = 0;
    p.kappa = 0.0;
    const SteadyStateResult r0 = solve_steady(p);
    CHECK(std::abs(r0.rho.elements(0, 0) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("eliminated system is square, reduced by one, and solvable") {
    const SystemParams p = fig2_params(-19.0);
    const Liouvillian l = build_liouvillian_explicit(p);
    const EliminatedSystem sys = eliminate_trace(l);
    CHECK(sys.matrix.rows() == l.dim - 1);
    CHECK(sys.matrix.cols() == l.dim - 1);
    CHECK(sys.eliminated == 0);

    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(sys.matrix);
    CHECK(lu.info() == Eigen::Success);
}

TEST_CASE("solver contract: residual, trace, positivity, corrections") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        SystemParams p = test::random_params(rng, 3);
        p.gamma += 0.1;  // keep decay well away from zero
        const SteadyStateResult r = solve_steady(p);
        CHECK(r.converged);
        CHECK(r.residual <= 1e-10);
        CHECK(trace_defect(r.rho.elements) <= 1e-10);
        CHECK(hermiticity_defect(r.rho.elements) <= 1e-10);
        CHECK(min_eigenvalue(r.rho.elements) >= -1e-8);
        CHECK(r.hermiticity_correction <= 1e-6);
        CHECK(r.trace_correction <= 1e-6);
    }
}

TEST_CASE("solution is independent of the eliminated element") {
    const SystemParams p = fig2_params(-19.29);
    const SteadyStateResult a = solve_steady(p, 1e-10, 0, 1);
    const SteadyStateResult b = solve_steady(p, 1e-10, p.n_max, 2);
    CHECK((a.rho.elements - b.rho.elements).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("fig2 operating point reproduces the reference values") {
    const SteadyStateResult r = solve_steady(fig2_params(-19.29));
    CHECK(r.converged);
    const AtomicState s = reduce_atom(r.rho);
    CHECK_THAT(s.a22(), Catch::Matchers::WithinAbs(0.220, 0.005));
    CHECK_THAT(normally_ordered_variance(s), Catch::Matchers::WithinAbs(-0.236, 0.003));
    CHECK(cavity_excitation(r.rho) < 1e-2);
}

TEST_CASE("steady state annihilates under the generator") {
    const SystemParams p = fig2_params(-19.0);
    const SteadyStateResult r = solve_steady(p);
    const Matrix dot = apply(build_liouvillian_explicit(p), r.rho);
    CHECK(dot.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("g = 0 factorizes: Bloch atom times cavity vacuum") {
    SystemParams p;
    p.rabi = 0.8;
    p.delta_a = -0.4;
    p.delta_c = 0.6;
    p.coupling = 0.0;
    p.kappa = 1.3;
    p.gamma = 1.0;
    p.gamma_d = 0.2;
    p.n_max = 4;
    const SteadyStateResult r = solve_steady(p);
    const AtomicState full = reduce_atom(r.rho);
    const AtomicState oracle = bloch_steady(BlochParams{p.rabi, p.delta_a, p.gamma, p.gamma_d});
    CHECK((full.sigma - oracle.sigma).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(cavity_excitation(r.rho) <= 1e-10);

    // photon-sector occupation beyond the vacuum is numerically zero
    const int dh = p.dim_hilbert();
    double beyond = 0.0;
    for (int k = 2; k < dh; ++k) beyond = std::max(beyond, std::abs(r.rho.elements(k, k)));
    CHECK(beyond <= 1e-10);
}

TEST_CASE("degenerate inputs are rejected or reported") {
    SECTION("all rates zero is rejected upfront") {
        SystemParams p;
        p.gamma = 0.0;
        p.kappa = 0.0;
        CHECK_THROWS_AS(solve_steady(p), std::invalid_argument);
    }
    SECTION("decoupled undamped atom sector is singular") {
        SystemParams p;
        p.rabi = 0.0;
        p.coupling = 0.0;
        p.gamma = 0.0;
        p.gamma_d = 0.0;
        p.kappa = 1.0;
        p.n_max = 2;
        CHECK_THROWS_AS(solve_steady(p), solver_error);
    }
    SECTION("n_max beyond the hard cap") {
        SystemParams p = fig2_params(-19.0);
        p.n_max = kTruncationHardCap + 1;
        CHECK_THROWS_AS(solve_steady(p), solver_error);
    }
}

TEST_CASE("truncation doubling certifies the cutoff") {
    SECTION("fig2 point converges at the starting level") {
        SystemParams p = fig2_params(-19.29);
        const SteadyStateResult r = converge_truncation(p, 1e-8);
        CHECK(r.converged);
        CHECK(r.n_max_used == 6);

        // direct doubling check at the operating point
        SystemParams p12 = p;
        p12.n_max = 12;
        const Observables o6 = compute_observables(solve_steady(p).rho);
        const Observables o12 = compute_observables(solve_steady(p12).rho);
        CHECK(observables_change(o6, o12) < 1e-8);
    }
    SECTION("cavity decoupled: converges immediately at the starting value") {
        SystemParams p;
        p.rabi = 0.9;
        p.coupling = 0.0;
        p.kappa = 0.7;
        p.gamma = 1.0;
        p.n_max = 3;
        const SteadyStateResult r = converge_truncation(p, 1e-8);
        CHECK(r.converged);
        CHECK(r.n_max_used == 3);
    }
    SECTION("hard cap without agreement reports non-convergence") {
        // absurd tolerance forces the loop to the cap
        SystemParams p = fig2_params(-19.0);
        const SteadyStateResult r = converge_truncation(p, 1e-30);
        CHECK_FALSE(r.converged);
        CHECK(r.n_max_used == kTruncationHardCap);
    }
}
