// steady.cpp — Null-space steady-state solver

#include "spinent/steady.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "spinent/errors.hpp"

namespace spinent {

SteadyStateResult steady_state(const SystemParams& p, const NumericalSettings& s) {
    const Liouvillian l = build_liouvillian(p);
    const int d = l.hilbert_dim;

    Eigen::BDCSVD<Matrix> svd(l.matrix, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();  // descending
    const Eigen::Index last = sv.size() - 1;
    const double gap = sv(last - 1);
    if (!(gap > s.uniqueness_gap_min)) {
        std::ostringstream msg;
        msg << "steady_state: degenerate null space (second-smallest singular value " << gap
            << ")";
        throw MultiplicityError(msg.str(), gap);
    }

    Matrix rho = unvec(svd.matrixV().col(last), d);
    const complex tr = rho.trace();
    if (std::abs(tr) < 1e-14) throw NumericalError("steady_state: null vector has zero trace");
    rho /= tr;
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();

    const double residual = (l.matrix * vec(rho)).norm();
    return SteadyStateResult{DensityMatrix::from_matrix(std::move(rho), s), residual, gap};
}

double analytic_threshold(double omega, double coupling_j) {
    if (!(coupling_j > 0.0)) throw ParameterError("analytic_threshold: J must be positive");
    if (!std::isfinite(omega)) throw ParameterError("analytic_threshold: omega must be finite");
    return omega * omega / (2.0 * coupling_j);
}

} // namespace spinent
