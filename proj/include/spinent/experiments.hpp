// experiments.hpp — Steady-state entanglement sweeps, threshold and optimum locators,
// entangled/separable border maps, and the optimum-versus-temperature relation

#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "spinent/model.hpp"
#include "spinent/settings.hpp"

namespace spinent {

// Physical parameter a sweep or map axis varies. Per-qubit values are broadcast.
enum class Axis { gamma, coupling_j, delta, nbar };

Axis parse_axis(std::string_view name);   // "gamma" | "J" | "delta" | "nbar"
const char* axis_name(Axis axis);
const char* axis_label(Axis axis);        // column header with unit, e.g. "gamma[Omega]"
SystemParams with_axis(SystemParams base, Axis axis, double value);

inline constexpr double kDefaultBorderEpsilon = 1e-6;
inline constexpr int kDefaultCoarsePoints = 64;

struct ExperimentOptions {
    double epsilon{kDefaultBorderEpsilon};  // entangled iff steady negativity > epsilon
    int threads{1};
    NumericalSettings settings{};
};

struct PointResult {
    double negativity{std::numeric_limits<double>::quiet_NaN()};
    double residual{std::numeric_limits<double>::quiet_NaN()};
    double uniqueness_gap{std::numeric_limits<double>::quiet_NaN()};
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

// Steady state + negativity at one parameter point; failures are captured, not thrown.
PointResult evaluate_point(const SystemParams& p, const NumericalSettings& s = default_settings());

// Steady-state negativity; throws on solver failure.
double steady_negativity(const SystemParams& p, const NumericalSettings& s = default_settings());

struct Marker {
    enum class Kind { threshold, maximum };
    Kind kind;
    double location;
    double tolerance;  // half-width of the bracketing grid interval (threshold) or grid spacing (maximum)
    double value;      // epsilon for thresholds, negativity for maxima
};

const char* to_string(Marker::Kind kind);

struct SweepResult {
    Axis axis{Axis::gamma};
    std::vector<double> grid;
    std::vector<PointResult> points;
    std::vector<Marker> markers;
    double epsilon{kDefaultBorderEpsilon};

    std::vector<double> values() const;
    bool all_ok() const;
};

// Grid must be strictly ascending and non-empty.
SweepResult sweep(const SystemParams& base, Axis axis, std::vector<double> grid,
                  const ExperimentOptions& opts = {});
SweepResult sweep_gamma(const SystemParams& base, std::vector<double> grid,
                        const ExperimentOptions& opts = {});
SweepResult sweep_delta(const SystemParams& base, std::vector<double> grid,
                        const ExperimentOptions& opts = {});

// Bisection for the epsilon crossing of steady-state negativity along `axis`.
// The bracket must straddle the crossing; the returned value is the midpoint of a
// final bracket no wider than tol.
double find_threshold(const SystemParams& base, Axis axis, double lo, double hi, double tol,
                      const ExperimentOptions& opts = {});
double find_gamma_c(const SystemParams& base, double lo, double hi, double tol = 1e-4,
                    const ExperimentOptions& opts = {});

struct Optimum {
    double location;  // arg max along the axis
    double value;     // steady-state negativity there
    double bracket_lo;
    double bracket_hi;
};

// Coarse scan (coarse_points samples) followed by golden-section refinement.
// Throws AmbiguityError on several local maxima, BracketError when no interior
// entangled maximum exists on [lo, hi].
Optimum find_optimum(const SystemParams& base, Axis axis, double lo, double hi, double tol,
                     int coarse_points = kDefaultCoarsePoints, const ExperimentOptions& opts = {});
Optimum find_gamma_m(const SystemParams& base, double lo, double hi, double tol = 1e-6,
                     int coarse_points = kDefaultCoarsePoints, const ExperimentOptions& opts = {});

struct BorderMap {
    Axis axis1{Axis::coupling_j};
    Axis axis2{Axis::gamma};
    std::vector<double> grid1;
    std::vector<double> grid2;
    // Row-major over (grid1 index, grid2 index).
    std::vector<PointResult> cells;
    double epsilon{kDefaultBorderEpsilon};

    const PointResult& cell(std::size_t i, std::size_t j) const { return cells[i * grid2.size() + j]; }
    bool entangled(std::size_t i, std::size_t j) const;
};

BorderMap border_map(const SystemParams& base, Axis axis1, std::vector<double> grid1, Axis axis2,
                     std::vector<double> grid2, const ExperimentOptions& opts = {});

struct LineFit {
    double slope{std::numeric_limits<double>::quiet_NaN()};
    double intercept{std::numeric_limits<double>::quiet_NaN()};
    double rms_residual{std::numeric_limits<double>::quiet_NaN()};
    double relative_rms{std::numeric_limits<double>::quiet_NaN()};  // rms_residual / mean |y|
    int points{0};
};

// Ordinary least squares y = slope * x + intercept. Needs >= 2 points with distinct x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct NbarOptimum {
    double nbar;
    Optimum optimum;
    std::string error;  // empty on success
};

struct NbarRelation {
    std::vector<NbarOptimum> rows;
    LineFit fit;  // E_max against Gamma_m over successful rows with nbar <= fit_nbar_max
    double fit_nbar_max;
};

NbarRelation gamma_m_vs_nbar(const SystemParams& base, const std::vector<double>& nbar_list,
                             double gamma_lo, double gamma_hi, double tol = 1e-6,
                             double fit_nbar_max = 0.05, const ExperimentOptions& opts = {});

} // namespace spinent
