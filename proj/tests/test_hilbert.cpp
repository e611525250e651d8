#include "sqrf/hilbert.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace sqrf;

TEST_CASE("composite_index convention") {
    CHECK(composite_index(0, 1, 5) == 0);
    CHECK(composite_index(0, 2, 5) == 1);
    CHECK(composite_index(3, 1, 5) == 6);
    CHECK(composite_index(5, 2, 5) == 11);
}

TEST_CASE("composite_index is a bijection onto [0, 2(n_max+1))") {
    const int n_max = 7;
    std::set<int> seen;
    for (int n = 0; n <= n_max; ++n)
        for (int i = 1; i <= 2; ++i)
            seen.insert(composite_index(n, i, n_max));
    CHECK(seen.size() == 2 * (n_max + 1));
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 2 * (n_max + 1) - 1);
}

TEST_CASE("composite_index rejects out-of-range labels") {
    CHECK_THROWS_AS(composite_index(-1, 1, 3), std::out_of_range);
    CHECK_THROWS_AS(composite_index(4, 1, 3), std::out_of_range);
    CHECK_THROWS_AS(composite_index(0, 3, 3), std::out_of_range);
    CHECK_THROWS_AS(composite_index(0, 0, 3), std::out_of_range);
}

TEST_CASE("vectorize lays rows out contiguously") {
    DensityMatrix rho(0, Matrix::Zero(2, 2));
    rho.elements(0, 0) = 0.5;
    rho.elements(1, 1) = 0.5;
    const Vector v = vectorize(rho);
    REQUIRE(v.size() == 4);
    CHECK(v(0) == Complex(0.5, 0.0));
    CHECK(v(1) == Complex(0.0, 0.0));
    CHECK(v(2) == Complex(0.0, 0.0));
    CHECK(v(3) == Complex(0.5, 0.0));

    const Vector ground = vectorize(DensityMatrix::vacuum_ground(2));
    CHECK(ground(0) == Complex(1.0, 0.0));
    CHECK(ground.tail(ground.size() - 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("devectorize inverts vectorize exactly") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = test::random_density_matrix(rng, 3);
        const DensityMatrix back = devectorize(vectorize(rho), 3);
        CHECK((back.elements - rho.elements).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK_THROWS_AS(devectorize(Vector::Zero(5), 1), std::invalid_argument);
}

TEST_CASE("reduce_atom on product states returns the atomic factor exactly") {
    const int n_max = 4;
    const int dh = 2 * (n_max + 1);

    SECTION("vacuum-ground projector") {
        const AtomicState s = reduce_atom(DensityMatrix::vacuum_ground(n_max));
        CHECK(s.sigma(0, 0) == Complex(1.0, 0.0));
        CHECK(s.sigma(1, 1) == Complex(0.0, 0.0));
        CHECK(s.coherence() == Complex(0.0, 0.0));
    }

    SECTION("cavity vacuum times maximally mixed atom") {
        Matrix m = Matrix::Zero(dh, dh);
        m(0, 0) = 0.5;
        m(1, 1) = 0.5;
        const AtomicState s = reduce_atom(DensityMatrix(n_max, m));
        CHECK(std::abs(s.a11() - 0.5) == 0.0);
        CHECK(std::abs(s.a22() - 0.5) == 0.0);
    }

    SECTION("thermal-like cavity times a random atomic state") {
        std::mt19937_64 rng(5);
        const AtomicState atom = test::random_atomic_state(rng);
        Matrix m = Matrix::Zero(dh, dh);
        double norm = 0.0;
        for (int n = 0; n <= n_max; ++n) norm += std::pow(0.4, n);
        for (int n = 0; n <= n_max; ++n)
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j)
                    m(composite_index(n, i, n_max), composite_index(n, j, n_max)) =
                        std::pow(0.4, n) / norm * atom.sigma(i - 1, j - 1);
        const AtomicState s = reduce_atom(DensityMatrix(n_max, m));
        CHECK((s.sigma - atom.sigma).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("reduce_atom preserves trace and Hermiticity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = test::random_density_matrix(rng, 4);
        const AtomicState s = reduce_atom(rho);
        CHECK(std::abs((s.sigma(0, 0) + s.sigma(1, 1)).real() - 1.0) < 1e-12);
        CHECK(std::abs((s.sigma(0, 0) + s.sigma(1, 1)).imag()) < 1e-12);
        CHECK(std::abs(s.sigma(1, 0) - std::conj(s.sigma(0, 1))) < 1e-12);
        CHECK(atomic_det(s) > -1e-10);
    }
}

TEST_CASE("cavity_excitation counts photons") {
    const int n_max = 4;
    const int dh = 2 * (n_max + 1);
    CHECK(cavity_excitation(DensityMatrix::vacuum_ground(n_max)) == 0.0);

    Matrix two = Matrix::Zero(dh, dh);
    two(composite_index(2, 1, n_max), composite_index(2, 1, n_max)) = 1.0;
    CHECK(cavity_excitation(DensityMatrix(n_max, two)) == 2.0);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(cavity_excitation(test::random_density_matrix(rng, 3)) > -1e-10);
}

TEST_CASE("SystemParams validation") {
    SystemParams p;
    p.kappa = -0.5;
    CHECK_THROWS_AS(p.validate_rates(), std::invalid_argument);
    p.kappa = 0.0;
    p.gamma = 0.0;
    CHECK_NOTHROW(p.validate_rates());
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);  // no dissipation at all
    p.kappa = 1.0;
    CHECK_NOTHROW(p.validate());
    p.n_max = -1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
