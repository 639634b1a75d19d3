// settings.hpp — Central numerical tolerances

#pragma once

namespace spinent {

struct NumericalSettings {
    double hermiticity_tol{1e-10};     // max |m_ij - conj(m_ji)| for a stored density matrix
    double trace_tol{1e-8};            // |tr rho - 1|
    double positivity_tol{1e-7};       // smallest eigenvalue must be >= -positivity_tol
    double eig_hermiticity_tol{1e-9};  // precondition of hermitian_eigenvalues
    double uniqueness_gap_min{1e-8};   // second-smallest singular value of a unique steady state
};

inline const NumericalSettings& default_settings() {
    static const NumericalSettings settings{};
    return settings;
}

} // namespace spinent
