// entanglement.hpp — Negativity and sudden death / birth detection

#pragma once

#include <vector>

#include "spinent/dynamics.hpp"
#include "spinent/linalg.hpp"

namespace spinent {

inline constexpr double kDefaultEventEpsilon = 1e-6;

// (||rho^{T_A}||_1 - 1) / 2 for the bipartition `subsystem` | rest, clamped at 0.
// Ranges over [0, 1/2] for two qubits.
double negativity(const DensityMatrix& rho, const std::vector<int>& subsystem);

// Two-qubit convenience: transposes qubit 0. Throws ParameterError for n_qubits != 2.
double negativity(const DensityMatrix& rho);

// Negativity of the reduced state of qubits (a, b).
double pairwise_negativity(const DensityMatrix& rho, int a, int b);

// Smallest eigenvalue of the partial transpose.
double min_pt_eigenvalue(const DensityMatrix& rho, const std::vector<int>& subsystem);

// Presentation scale only: `doubled` reports -2 * sum(negative PT eigenvalues)
// = 2 * negativity. Thresholds and events always use the canonical value.
enum class NegativityScale { canonical, doubled };
double present_negativity(double canonical_value, NegativityScale scale);

// Negativity of each sample; pairwise (0, 1) for registers larger than two qubits.
std::vector<double> negativity_series(const Trajectory& traj);

struct EntanglementEvent {
    enum class Kind { death, birth };
    Kind kind;
    double time;          // midpoint of the refined bracket
    double bracket_lo;
    double bracket_hi;
    double negativity_before;  // at the grid sample preceding the crossing
    double negativity_after;   // at the grid sample following the crossing
};

const char* to_string(EntanglementEvent::Kind kind);

struct EventOptions {
    double epsilon{kDefaultEventEpsilon};
    double time_resolution{1e-6};  // bisection stops below this bracket width
};

// Crossings of negativity through epsilon between consecutive samples, refined by
// bisection on states propagated exactly from the earlier sample.
std::vector<EntanglementEvent> detect_events(const Trajectory& traj, const EventOptions& opts = {});

} // namespace spinent
