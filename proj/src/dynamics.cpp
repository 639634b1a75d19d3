// dynamics.cpp — Adaptive and exponential propagation of the master equation

#include "spinent/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinent/errors.hpp"
#include "spinent/expm.hpp"

namespace spinent {

InitialState InitialState::from_theta(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
        throw ParameterError("theta must lie in [0, pi/2], got " + std::to_string(theta));
    InitialState s;
    s.theta_ = theta;
    return s;
}

InitialState InitialState::from_density(DensityMatrix rho) {
    InitialState s;
    s.explicit_ = std::move(rho);
    return s;
}

DensityMatrix InitialState::density(int n_qubits) const {
    if (explicit_) {
        if (explicit_->n_qubits() != n_qubits)
            throw ParameterError("initial state has " + std::to_string(explicit_->n_qubits()) +
                                 " qubits, system has " + std::to_string(n_qubits));
        return *explicit_;
    }
    return theta_state(theta_, n_qubits);
}

DensityMatrix theta_state(double theta, int n_qubits) {
    if (n_qubits < 1) throw ParameterError("theta_state: need at least one qubit");
    const int d = 1 << n_qubits;
    Vector psi = Vector::Zero(d);
    psi(d - 1) += std::cos(theta);  // |dd..d>
    psi(0) += std::sin(theta);      // |uu..u>
    return DensityMatrix::from_pure(psi);
}

std::vector<double> uniform_grid(double t_end, int sample_count) {
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw ParameterError("t_end must be positive and finite");
    if (sample_count < 2) throw ParameterError("sample_count must be >= 2");
    std::vector<double> grid(sample_count);
    for (int k = 0; k < sample_count; ++k)
        grid[k] = t_end * static_cast<double>(k) / static_cast<double>(sample_count - 1);
    grid.back() = t_end;
    return grid;
}

double default_steady_t_end(const SystemParams& p) {
    p.validate();
    const double gmin = *std::min_element(p.gamma.begin(), p.gamma.end());
    if (!(gmin > 0.0)) throw ParameterError("default_steady_t_end: some qubit has no dissipation");
    return std::max(40.0 / gmin, 200.0);
}

namespace {

DensityMatrix checked_sample(Matrix m, double t) {
    try {
        return DensityMatrix::from_matrix(std::move(m));
    } catch (const NumericalError& e) {
        throw NumericalError("unphysical state at t = " + std::to_string(t) + ": " + e.what());
    }
}

template <class MakeRhs>
Trajectory integrate_route(const SystemParams& p, const InitialState& rho0, double t_end,
                           int sample_count, const IntegratorOptions& opts, MakeRhs&& rhs) {
    p.validate();
    Trajectory traj;
    traj.params = p;
    traj.times = uniform_grid(t_end, sample_count);
    traj.states.reserve(sample_count);
    const int d = p.dim();
    const DensityMatrix start = rho0.density(p.n_qubits);
    // The generator only ever sees the Hermitian part, so roundoff in the anti-Hermitian
    // part cannot be amplified by modes near the edge of the stability region.
    const auto projected = [&](double t, const Vector& y) -> Vector {
        const Matrix m = unvec(y, d);
        return rhs(t, vec(0.5 * (m + m.adjoint())));
    };
    traj.stats = integrate_dopri5(projected, vec(start.matrix()), traj.times, opts,
                                  [&](std::size_t k, double t, const Vector& y) {
                                      if (k == 0)
                                          traj.states.push_back(start);
                                      else
                                          traj.states.push_back(checked_sample(unvec(y, d), t));
                                  });
    return traj;
}

} // namespace

Trajectory evolve(const SystemParams& p, const InitialState& rho0, double t_end, int sample_count,
                  const IntegratorOptions& opts) {
    const Liouvillian l = build_liouvillian(p);
    return integrate_route(p, rho0, t_end, sample_count, opts,
                           [&](double, const Vector& y) -> Vector { return l.matrix * y; });
}

Trajectory evolve_elementwise_n2(const SystemParams& p, const InitialState& rho0, double t_end,
                                 int sample_count, const IntegratorOptions& opts) {
    if (p.n_qubits != 2) throw ParameterError("evolve_elementwise_n2: requires n_qubits = 2");
    return integrate_route(p, rho0, t_end, sample_count, opts,
                           [&](double, const Vector& y) -> Vector {
                               return vec(elementwise_rhs_n2(p, unvec(y, 4)));
                           });
}

DensityMatrix propagate_exponential(const Liouvillian& l, const DensityMatrix& rho0, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("propagate_exponential: t must be >= 0");
    if (rho0.dim() != l.hilbert_dim)
        throw ParameterError("propagate_exponential: state dimension " +
                             std::to_string(rho0.dim()) + " does not match Liouvillian (" +
                             std::to_string(l.hilbert_dim) + ")");
    if (t == 0.0) return rho0;
    const Vector out = expm(l.matrix * t) * vec(rho0.matrix());
    return checked_sample(unvec(out, l.hilbert_dim), t);
}

Trajectory evolve_exponential(const SystemParams& p, const InitialState& rho0, double t_end,
                              int sample_count) {
    const Liouvillian l = build_liouvillian(p);
    Trajectory traj;
    traj.params = p;
    traj.times = uniform_grid(t_end, sample_count);
    const DensityMatrix start = rho0.density(p.n_qubits);
    traj.states.reserve(sample_count);
    for (double t : traj.times) traj.states.push_back(propagate_exponential(l, start, t));
    return traj;
}

} // namespace spinent
