// config.hpp — Strict YAML run configuration for the spinent command-line tool
//
// Top-level sections: system, initial, run, tolerances, output. Every section and key
// is optional; unknown keys are rejected with their line and column.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinent/entanglement.hpp"
#include "spinent/errors.hpp"
#include "spinent/experiments.hpp"
#include "spinent/linalg.hpp"
#include "spinent/model.hpp"
#include "spinent/ode.hpp"
#include "spinent/settings.hpp"

namespace spinent::cli {

class ConfigError : public Error {
public:
    using Error::Error;
};

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);
const char* format_name(OutputFormat f);

struct InitialConfig {
    std::optional<double> theta;    // cos(theta)|d..d> + sin(theta)|u..u>
    std::optional<Matrix> matrix;   // explicit density matrix
};

struct RunConfig {
    // Defaults: resonant pair at J = 1.5, Gamma = 0.8, zero temperature.
    SystemParams system{};
    InitialConfig initial{};

    struct Run {
        double t_end{60.0};
        int sample_count{601};
        std::optional<Axis> axis;
        std::vector<double> grid;
        std::optional<Axis> axis2;
        std::vector<double> grid2;
        std::optional<double> bracket_lo;
        std::optional<double> bracket_hi;
        int coarse_points{kDefaultCoarsePoints};
        std::vector<double> nbar_list;
        double fit_nbar_max{0.05};
        NegativityScale scale{NegativityScale::canonical};
    } run;

    // tolerances section
    IntegratorOptions integrator{};
    NumericalSettings settings{};
    double epsilon{kDefaultBorderEpsilon};  // entangled iff negativity > epsilon
    double locator_tol{1e-6};               // final bracket width of threshold/optimum searches
    double time_resolution{1e-6};           // event bracket width

    struct Output {
        std::string path;  // empty writes to stdout
        OutputFormat format{OutputFormat::csv};
    } output;
};

// Parses YAML text. `source` names the input in error messages.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

// Applies "key=value" for a key of the tolerances section.
void apply_tolerance_override(RunConfig& cfg, const std::string& assignment);

// Keys accepted in the tolerances section.
const std::vector<std::string>& tolerance_keys();

} // namespace spinent::cli
