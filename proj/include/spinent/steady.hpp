// steady.hpp — Steady states as the null space of the Liouvillian

#pragma once

#include "spinent/linalg.hpp"
#include "spinent/model.hpp"

namespace spinent {

struct SteadyStateResult {
    DensityMatrix rho_ss;
    double residual;        // ||L vec(rho_ss)||_2 after Hermitization and normalization
    double uniqueness_gap;  // second-smallest singular value of L
};

// Right singular vector of the smallest singular value, Hermitized and trace-normalized.
// Throws MultiplicityError if the null space is not one-dimensional.
SteadyStateResult steady_state(const SystemParams& p,
                               const NumericalSettings& s = default_settings());

// Zero-temperature resonant threshold Omega^2 / (2 J); steady states with Gamma below it
// are separable when nbar = 0 and delta = 0.
double analytic_threshold(double omega, double coupling_j);

} // namespace spinent
