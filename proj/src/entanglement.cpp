// entanglement.cpp — Negativity and sudden death / birth detection

#include "spinent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinent/errors.hpp"
#include "spinent/expm.hpp"

namespace spinent {

double negativity(const DensityMatrix& rho, const std::vector<int>& subsystem) {
    if (subsystem.empty()) throw ParameterError("negativity: empty subsystem");
    // Equals (||rho^T_A||_1 - 1) / 2 for unit trace, without cancellation against the 1.
    double sum = 0.0;
    for (double x : hermitian_eigenvalues(partial_transpose(rho, subsystem)))
        if (x < 0.0) sum -= x;
    return sum;
}

double negativity(const DensityMatrix& rho) {
    if (rho.n_qubits() != 2)
        throw ParameterError("negativity: state has " + std::to_string(rho.n_qubits()) +
                             " qubits; pass an explicit bipartition or reduce to a pair");
    return negativity(rho, {0});
}

double pairwise_negativity(const DensityMatrix& rho, int a, int b) {
    if (a == b) throw ParameterError("pairwise_negativity: qubits must differ");
    return negativity(partial_trace(rho, {std::min(a, b), std::max(a, b)}));
}

double min_pt_eigenvalue(const DensityMatrix& rho, const std::vector<int>& subsystem) {
    return hermitian_eigenvalues(partial_transpose(rho, subsystem)).front();
}

double present_negativity(double canonical_value, NegativityScale scale) {
    return scale == NegativityScale::doubled ? 2.0 * canonical_value : canonical_value;
}

namespace {

double sample_negativity(const DensityMatrix& rho) {
    return rho.n_qubits() == 2 ? negativity(rho) : pairwise_negativity(rho, 0, 1);
}

} // namespace

std::vector<double> negativity_series(const Trajectory& traj) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const DensityMatrix& rho : traj.states) out.push_back(sample_negativity(rho));
    return out;
}

const char* to_string(EntanglementEvent::Kind kind) {
    return kind == EntanglementEvent::Kind::death ? "death" : "birth";
}

std::vector<EntanglementEvent> detect_events(const Trajectory& traj, const EventOptions& opts) {
    if (traj.size() < 2) throw ParameterError("detect_events: trajectory needs >= 2 samples");
    if (!(opts.epsilon > 0.0)) throw ParameterError("detect_events: epsilon must be positive");

    const std::vector<double> neg = negativity_series(traj);
    std::vector<EntanglementEvent> events;
    Liouvillian l;  // built lazily; most trajectories have few crossings
    bool have_l = false;

    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const bool above0 = neg[k] >= opts.epsilon;
        const bool above1 = neg[k + 1] >= opts.epsilon;
        if (above0 == above1) continue;
        if (!have_l) {
            l = build_liouvillian(traj.params);
            have_l = true;
        }

        const DensityMatrix& base = traj.states[k];
        const Vector v0 = vec(base.matrix());
        double lo = traj.times[k];
        double hi = traj.times[k + 1];
        while (hi - lo > opts.time_resolution) {
            const double mid = 0.5 * (lo + hi);
            const Vector v = expm(l.matrix * (mid - traj.times[k])) * v0;
            const DensityMatrix rho = DensityMatrix::from_matrix(unvec(v, l.hilbert_dim));
            if ((sample_negativity(rho) >= opts.epsilon) == above0)
                lo = mid;
            else
                hi = mid;
        }
        events.push_back({above0 ? EntanglementEvent::Kind::death : EntanglementEvent::Kind::birth,
                          0.5 * (lo + hi), lo, hi, neg[k], neg[k + 1]});
    }
    return events;
}

} // namespace spinent
