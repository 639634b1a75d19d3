// model.hpp — Driven Ising-coupled qubit chain with independent thermal baths
//
// All rates and frequencies are in units of a reference Rabi frequency Omega.
//
//   H_eff = sum_i delta_i/2 sz_i - J sum_i sz_i sz_{i+1} + sum_i Omega_i sx_i
//           - i sum_i Gamma_i (nbar+1) s+_i s-_i - i sum_i Gamma_i nbar s-_i s+_i
//
//   drho/dt = -i H_eff rho + i rho H_eff^dagger
//             + sum_i 2 Gamma_i (nbar+1) s-_i rho s+_i + sum_i 2 Gamma_i nbar s+_i rho s-_i
//
// The chain has open boundaries (no sz_N sz_1 term).

#pragma once

#include <vector>

#include "spinent/linalg.hpp"

namespace spinent {

inline constexpr int kMaxDenseQubits = 5;

struct SystemParams {
    int n_qubits{2};
    std::vector<double> omega{1.0, 1.0};  // Rabi frequency per qubit
    std::vector<double> delta{0.0, 0.0};  // detuning per qubit
    double coupling_j{1.5};
    std::vector<double> gamma{0.8, 0.8};  // decay rate per qubit
    double nbar{0.0};                     // mean thermal boson number

    // Broadcast single Omega, delta, Gamma values to every qubit.
    static SystemParams uniform(int n_qubits, double omega, double delta, double coupling_j,
                                double gamma, double nbar);

    // Throws ParameterError on any violated invariant.
    void validate() const;

    int dim() const { return 1 << n_qubits; }
};

Matrix build_effective_hamiltonian(const SystemParams& p);

// Precomputed generator for repeated application (integrators, event refinement).
class LindbladGenerator {
public:
    explicit LindbladGenerator(const SystemParams& p);

    Matrix apply(const Matrix& rho) const;
    const Matrix& effective_hamiltonian() const noexcept { return h_eff_; }
    int dim() const noexcept { return static_cast<int>(h_eff_.rows()); }

private:
    struct Jump {
        Matrix op;
        double rate;  // coefficient in front of op rho op^dagger
    };
    Matrix h_eff_;
    std::vector<Jump> jumps_;
};

Matrix apply_generator(const SystemParams& p, const Matrix& rho);
Matrix apply_generator(const SystemParams& p, const DensityMatrix& rho);

// Superoperator acting on column-stacked density matrices.
struct Liouvillian {
    int hilbert_dim{0};
    Matrix matrix;  // hilbert_dim^2 x hilbert_dim^2

    int dim() const { return hilbert_dim * hilbert_dim; }
    Vector apply(const Vector& v) const { return matrix * v; }
};

Liouvillian build_liouvillian(const SystemParams& p);

// Bose-Einstein occupation 1/(exp(hbar w / k_B T) - 1); temperature in kelvin,
// angular frequency in rad/s.
double thermal_occupation(double temperature_kelvin, double angular_frequency);

} // namespace spinent
