#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "spinent/errors.hpp"
#include "spinent/dynamics.hpp"
#include "spinent/model.hpp"

using namespace spinent;
using namespace spinent::testing;

namespace {

const complex kI{0.0, 1.0};

std::vector<complex> liouvillian_spectrum(const Liouvillian& l) {
    Eigen::ComplexEigenSolver<Matrix> es(l.matrix, false);
    std::vector<complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return ev;
}

} // namespace

TEST_CASE("SystemParams validation") {
    CHECK_NOTHROW(SystemParams::uniform(2, 1.0, 0.0, 1.5, 0.8, 0.0));
    CHECK_THROWS_AS(SystemParams::uniform(2, 1.0, 0.0, 1.5, -0.1, 0.0), ParameterError);
    CHECK_THROWS_AS(SystemParams::uniform(2, 1.0, 0.0, 1.5, 0.1, -0.01), ParameterError);
    CHECK_THROWS_AS(SystemParams::uniform(0, 1.0, 0.0, 1.5, 0.1, 0.0), ParameterError);
    CHECK_THROWS_AS(SystemParams::uniform(2, NAN, 0.0, 1.5, 0.1, 0.0), ParameterError);
    SystemParams p = SystemParams::uniform(2, 1.0, 0.0, 1.5, 0.8, 0.0);
    p.gamma.pop_back();
    CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("effective Hamiltonian: single decaying qubit") {
    const SystemParams p = SystemParams::uniform(1, 0.0, 0.0, 0.0, 1.0, 0.0);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = -kI;
    CHECK(max_abs_difference(build_effective_hamiltonian(p), expected) == 0.0);
}

TEST_CASE("effective Hamiltonian: pure Ising coupling") {
    const SystemParams p = SystemParams::uniform(2, 0.0, 0.0, 1.0, 0.0, 0.0);
    Matrix expected = Matrix::Zero(4, 4);
    expected.diagonal() << -1.0, 1.0, 1.0, -1.0;
    CHECK(max_abs_difference(build_effective_hamiltonian(p), expected) == 0.0);
}

TEST_CASE("effective Hamiltonian matches the Pauli-string builder") {
    std::mt19937_64 rng(101);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const SystemParams p = random_params(rng, n);
            const Matrix h = build_effective_hamiltonian(p);
            CHECK(max_abs_difference(h, string_operator_hamiltonian(p)) < 1e-14);

            // Anti-Hermitian part is -i sum Gamma [(nbar+1) s+s- + nbar s-s+].
            const Matrix anti = 0.5 * (h - h.adjoint());
            SystemParams closed = p;
            closed.gamma.assign(n, 0.0);
            const Matrix expected_anti = h - build_effective_hamiltonian(closed);
            CHECK(max_abs_difference(anti, expected_anti) < 1e-14);
            CHECK((build_effective_hamiltonian(closed) - build_effective_hamiltonian(closed).adjoint())
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("apply_generator: bare amplitude decay") {
    const SystemParams p = SystemParams::uniform(1, 0.0, 0.0, 0.0, 1.0, 0.0);
    const DensityMatrix up = DensityMatrix::from_pure(ops::product_state({0}));
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = -2.0;
    expected(1, 1) = 2.0;
    CHECK(max_abs_difference(apply_generator(p, up), expected) < 1e-15);
    CHECK_THROWS_AS(apply_generator(p, Matrix::Identity(4, 4)), ParameterError);
}

TEST_CASE("apply_generator: elementwise two-qubit expansion agrees") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 20; ++trial) {
        const SystemParams p = random_params(rng, 2);
        const DensityMatrix rho = random_density(rng, 2);
        const Matrix lhs = apply_generator(p, rho);
        CHECK(max_abs_difference(lhs, elementwise_rhs_n2(p, rho.matrix())) < 1e-12);
        CHECK(max_abs_difference(lhs, index_sum_generator(p, rho.matrix())) < 1e-12);
    }
}

TEST_CASE("apply_generator output is Hermitian and traceless") {
    std::mt19937_64 rng(303);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const SystemParams p = random_params(rng, n);
            const DensityMatrix rho = random_density(rng, n);
            const Matrix d = apply_generator(p, rho);
            CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(d.trace()) < 1e-12);
            CHECK(max_abs_difference(d, index_sum_generator(p, rho.matrix())) < 1e-12);
        }
    }
}

TEST_CASE("Liouvillian reproduces apply_generator and preserves trace") {
    std::mt19937_64 rng(404);
    for (int n = 1; n <= 3; ++n) {
        const SystemParams p = random_params(rng, n);
        const Liouvillian l = build_liouvillian(p);
        CHECK(l.matrix.rows() == (1 << (2 * n)));
        const Vector vid = vec(ops::identity(p.dim()));
        CHECK((vid.adjoint() * l.matrix).cwiseAbs().maxCoeff() < 1e-12);
        for (int trial = 0; trial < 5; ++trial) {
            const DensityMatrix rho = random_density(rng, n);
            const Vector lhs = l.apply(vec(rho.matrix()));
            const Vector rhs = vec(apply_generator(p, rho));
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    CHECK_THROWS_AS(build_liouvillian(SystemParams::uniform(6, 1, 0, 1, 1, 0)), CapacityError);
}

TEST_CASE("Liouvillian spectrum: single-qubit amplitude damping") {
    const Liouvillian l = build_liouvillian(SystemParams::uniform(1, 0.0, 0.0, 0.0, 1.0, 0.0));
    auto ev = liouvillian_spectrum(l);
    std::sort(ev.begin(), ev.end(), [](complex a, complex b) { return a.real() < b.real(); });
    CHECK(std::abs(ev[0] - complex(-2.0, 0.0)) < 1e-12);
    CHECK(std::abs(ev[1] - complex(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(ev[2] - complex(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(ev[3]) < 1e-12);
}

TEST_CASE("Liouvillian spectrum lies in the closed left half-plane with a zero mode") {
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 10; ++trial) {
        const Liouvillian l = build_liouvillian(random_params(rng, 2));
        double min_abs = 1e300;
        for (complex z : liouvillian_spectrum(l)) {
            CHECK(z.real() <= 1e-9);
            min_abs = std::min(min_abs, std::abs(z));
        }
        CHECK(min_abs < 1e-9);
    }
}

TEST_CASE("qubit relabelling conjugates the Liouvillian for uniform parameters") {
    const SystemParams p = SystemParams::uniform(3, 0.9, 0.3, 1.2, 0.4, 0.1);
    const Liouvillian l = build_liouvillian(p);
    // Reversing an open chain is a symmetry of the uniform model.
    const Matrix perm = qubit_permutation({2, 1, 0});
    const Matrix super = ops::kron(perm.conjugate(), perm);
    CHECK(max_abs_difference(super * l.matrix * super.adjoint(), l.matrix) < 1e-12);

    const SystemParams p2 = SystemParams::uniform(2, 1.0, 0.2, 1.5, 0.7, 0.05);
    const Liouvillian l2 = build_liouvillian(p2);
    const Matrix swap = qubit_permutation({1, 0});
    const Matrix super2 = ops::kron(swap.conjugate(), swap);
    const Matrix conj = super2 * l2.matrix * super2.adjoint();
    auto a = liouvillian_spectrum(l2);
    auto b = liouvillian_spectrum(Liouvillian{4, conj});
    // Each eigenvalue has a partner in the other spectrum.
    for (complex z : a) {
        double best = 1e300;
        for (complex w : b) best = std::min(best, std::abs(z - w));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("thermal_occupation") {
    // hbar w = k_B T
    const double hbar = 1.054571817e-34, kb = 1.380649e-23;
    const double t = 300.0;
    CHECK(thermal_occupation(t, kb * t / hbar) == doctest::Approx(0.58197670686932642).epsilon(1e-12));
    CHECK(thermal_occupation(1e-3, 4e13) == 0.0);
    // Bose-Einstein at 77 K and 4e13 rad/s; reference from 30-digit arithmetic.
    CHECK(thermal_occupation(77.0, 4e13) == doctest::Approx(0.019277454451825116).epsilon(1e-10));
    CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(thermal_occupation(1.0, -1.0), ParameterError);
}
