// dynamics.hpp — Time propagation of the master equation
//
// Three independent routes:
//   evolve                  adaptive RK 5(4) on the vectorized Liouvillian
//   evolve_elementwise_n2   the 16 scalar equations for a two-qubit rho_ij, written out by hand
//   propagate_exponential   exp(L t) applied to vec(rho0)

#pragma once

#include <optional>
#include <vector>

#include "spinent/linalg.hpp"
#include "spinent/model.hpp"
#include "spinent/ode.hpp"

namespace spinent {

// Either the pure family cos(theta)|dd..d> + sin(theta)|uu..u>, or an explicit state.
class InitialState {
public:
    static InitialState from_theta(double theta);
    static InitialState from_density(DensityMatrix rho);

    DensityMatrix density(int n_qubits) const;

    bool has_theta() const noexcept { return !explicit_.has_value(); }
    double theta() const noexcept { return theta_; }

private:
    InitialState() = default;
    double theta_{0.0};
    std::optional<DensityMatrix> explicit_;
};

DensityMatrix theta_state(double theta, int n_qubits = 2);

struct Trajectory {
    SystemParams params;
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    StepStats stats;

    std::size_t size() const { return times.size(); }
};

// Uniform sample grid t_k = k t_end / (sample_count - 1), k = 0..sample_count-1.
std::vector<double> uniform_grid(double t_end, int sample_count);

// Longest relaxation scale: max(40 / Gamma_min, 200) in units of 1/Omega.
double default_steady_t_end(const SystemParams& p);

Trajectory evolve(const SystemParams& p, const InitialState& rho0, double t_end, int sample_count,
                  const IntegratorOptions& opts = {});

// Right-hand side of the two-qubit equations; rho in the {uu, ud, du, dd} basis.
Matrix elementwise_rhs_n2(const SystemParams& p, const Matrix& rho);

Trajectory evolve_elementwise_n2(const SystemParams& p, const InitialState& rho0, double t_end,
                                 int sample_count, const IntegratorOptions& opts = {});

DensityMatrix propagate_exponential(const Liouvillian& l, const DensityMatrix& rho0, double t);

// exp(L t_k) vec(rho0) evaluated independently at every grid time.
Trajectory evolve_exponential(const SystemParams& p, const InitialState& rho0, double t_end,
                              int sample_count);

} // namespace spinent
