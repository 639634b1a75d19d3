// commands.cpp — Subcommand pipelines, exit-code mapping and the CLI11 front end

#include "spinent/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "spinent/dynamics.hpp"
#include "spinent/entanglement.hpp"
#include "spinent/experiments.hpp"
#include "spinent/steady.hpp"

namespace spinent::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNearThresholdNegativity = 1e-3;
constexpr double kNearThresholdRelativeStep = 0.01;

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + format_number(v[k]);
    return s;
}

void add_system_meta(Report& r, const RunConfig& cfg) {
    const SystemParams& p = cfg.system;
    r.add_meta("n_qubits", static_cast<double>(p.n_qubits));
    r.add_meta("omega", join(p.omega));
    r.add_meta("delta", join(p.delta));
    r.add_meta("J", p.coupling_j);
    r.add_meta("gamma", join(p.gamma));
    r.add_meta("nbar", p.nbar);
    r.add_meta("units", "energies and rates in Omega, time in 1/Omega");
}

InitialState initial_state(const RunConfig& cfg) {
    if (cfg.initial.matrix) return InitialState::from_density(DensityMatrix::from_matrix(*cfg.initial.matrix, cfg.settings));
    return InitialState::from_theta(cfg.initial.theta.value_or(0.0));
}

void add_initial_meta(Report& r, const RunConfig& cfg) {
    if (cfg.initial.matrix)
        r.add_meta("initial", "explicit matrix");
    else
        r.add_meta("theta", cfg.initial.theta.value_or(0.0));
}

const char* scale_name(NegativityScale s) { return s == NegativityScale::canonical ? "canonical" : "doubled"; }

double state_negativity(const DensityMatrix& rho) {
    return rho.n_qubits() == 2 ? negativity(rho) : pairwise_negativity(rho, 0, 1);
}

std::string population_label(int k, int d) {
    return d <= 9 ? "rho" + std::to_string(k) + std::to_string(k)
                  : "rho_" + std::to_string(k) + "_" + std::to_string(k);
}

std::string label_for(Axis a, const char* suffix) {
    std::string base = axis_label(a);
    const auto bracket = base.find('[');
    return base.substr(0, bracket) + suffix + base.substr(bracket);
}

// Sweeps default to 60 gamma points or 41 points on the other axes; maps to 40 per axis.
std::vector<double> default_grid(Axis a, bool map) {
    auto lin = [](double lo, double hi, int n) {
        std::vector<double> g(n);
        for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
        g.back() = hi;
        return g;
    };
    switch (a) {
        case Axis::gamma: return map ? lin(0.05, 2.0, 40) : lin(0.05, 3.0, 60);
        case Axis::coupling_j: return lin(0.5, 3.0, map ? 40 : 41);
        case Axis::delta: return lin(0.0, 2.0, map ? 40 : 41);
        case Axis::nbar: return lin(0.0, 0.3, map ? 40 : 41);
    }
    return {};
}

ExperimentOptions experiment_options(const RunConfig& cfg, int threads) {
    ExperimentOptions o;
    o.epsilon = cfg.epsilon;
    o.threads = threads;
    o.settings = cfg.settings;
    return o;
}

int point_exit_code(const std::vector<PointResult>& pts) {
    int code = kExitOk;
    for (const PointResult& p : pts) {
        if (p.ok()) continue;
        if (std::isfinite(p.uniqueness_gap) && code == kExitOk)
            code = kExitDegenerate;
        else if (!std::isfinite(p.uniqueness_gap))
            code = kExitNumerical;
    }
    return code;
}

std::string markers_text(const std::vector<Marker>& markers) {
    std::string s;
    for (const Marker& m : markers) {
        if (!s.empty()) s += "; ";
        s += std::string(to_string(m.kind)) + " at " + format_number(m.location) + " +- " +
             format_number(m.tolerance);
    }
    return s.empty() ? "none" : s;
}

// True when steady entanglement at gamma * (1 +- step) is classified differently.
bool classification_changes_nearby(const SystemParams& p, double epsilon, const NumericalSettings& s) {
    const bool here = steady_negativity(p, s) > epsilon;
    for (double f : {1.0 - kNearThresholdRelativeStep, 1.0 + kNearThresholdRelativeStep}) {
        SystemParams q = p;
        for (double& g : q.gamma) g *= f;
        try {
            if ((steady_negativity(q, s) > epsilon) != here) return true;
        } catch (const Error&) {
        }
    }
    return false;
}

} // namespace

CommandResult cmd_evolve(const RunConfig& cfg) {
    const Trajectory traj = evolve(cfg.system, initial_state(cfg), cfg.run.t_end, cfg.run.sample_count, cfg.integrator);
    CommandResult res;
    Report& r = res.report;
    r.command = "evolve";
    add_system_meta(r, cfg);
    add_initial_meta(r, cfg);
    r.add_meta("t_end", cfg.run.t_end);
    r.add_meta("sample_count", static_cast<double>(cfg.run.sample_count));
    r.add_meta("rtol", cfg.integrator.rtol);
    r.add_meta("atol", cfg.integrator.atol);
    r.add_meta("accepted_steps", static_cast<double>(traj.stats.accepted));
    r.add_meta("rejected_steps", static_cast<double>(traj.stats.rejected));
    r.add_meta("negativity_scale", scale_name(cfg.run.scale));
    if (cfg.system.n_qubits > 2) r.add_meta("negativity_pair", "0 1");

    const int d = cfg.system.dim();
    r.columns = {"t[1/Omega]", "negativity"};
    for (int k = 1; k <= d; ++k) r.columns.push_back(population_label(k, d));
    r.columns.push_back("purity");
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const DensityMatrix& rho = traj.states[k];
        std::vector<Cell> row{traj.times[k], present_negativity(state_negativity(rho), cfg.run.scale)};
        for (int i = 0; i < d; ++i) row.emplace_back(rho(i, i).real());
        row.emplace_back(rho.purity());
        r.add_row(std::move(row));
    }
    return res;
}

CommandResult cmd_steady(const RunConfig& cfg) {
    CommandResult res;
    Report& r = res.report;
    r.command = "steady";
    add_system_meta(r, cfg);
    r.add_meta("epsilon", cfg.epsilon);
    r.add_meta("negativity_scale", scale_name(cfg.run.scale));

    const int d = cfg.system.dim();
    r.columns = {"negativity", "residual", "uniqueness_gap", "purity"};
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            const std::string base = "rho_" + std::to_string(i) + "_" + std::to_string(j);
            r.columns.push_back(base + ".re");
            r.columns.push_back(base + ".im");
        }
    r.columns.push_back("error");

    try {
        const SteadyStateResult ss = steady_state(cfg.system, cfg.settings);
        const double e = state_negativity(ss.rho_ss);
        std::vector<Cell> row{present_negativity(e, cfg.run.scale), ss.residual, ss.uniqueness_gap,
                              ss.rho_ss.purity()};
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                row.emplace_back(ss.rho_ss(i, j).real());
                row.emplace_back(ss.rho_ss(i, j).imag());
            }
        row.emplace_back(std::string{});
        r.add_row(std::move(row));
        r.add_meta("entangled", e > cfg.epsilon ? "yes" : "no");
        if (e < kNearThresholdNegativity && classification_changes_nearby(cfg.system, cfg.epsilon, cfg.settings))
            r.warnings.push_back("small negativity near the entanglement threshold: the classification "
                                 "changes within 1% of gamma");
    } catch (const MultiplicityError& e) {
        std::vector<Cell> row{kNaN, kNaN, e.gap(), kNaN};
        for (int k = 0; k < 2 * d * d; ++k) row.emplace_back(kNaN);
        row.emplace_back(std::string(e.what()));
        r.add_row(std::move(row));
        res.exit_code = kExitDegenerate;
    }
    return res;
}

CommandResult cmd_sweep(const RunConfig& cfg, int threads) {
    const Axis axis = cfg.run.axis.value_or(Axis::gamma);
    std::vector<double> grid = cfg.run.grid.empty() ? default_grid(axis, false) : cfg.run.grid;
    const SweepResult s = sweep(cfg.system, axis, std::move(grid), experiment_options(cfg, threads));

    CommandResult res;
    Report& r = res.report;
    r.command = "sweep";
    add_system_meta(r, cfg);
    r.add_meta("axis", axis_name(axis));
    r.add_meta("epsilon", s.epsilon);
    r.add_meta("negativity_scale", scale_name(cfg.run.scale));
    r.add_meta("markers", markers_text(s.markers));
    r.columns = {axis_label(axis), "negativity", "residual", "uniqueness_gap", "error"};
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
        const PointResult& p = s.points[k];
        r.add_row({s.grid[k], present_negativity(p.negativity, cfg.run.scale), p.residual, p.uniqueness_gap, p.error});
    }
    res.exit_code = point_exit_code(s.points);
    return res;
}

CommandResult cmd_border(const RunConfig& cfg, int threads) {
    const Axis a1 = cfg.run.axis.value_or(Axis::coupling_j);
    const Axis a2 = cfg.run.axis2.value_or(Axis::gamma);
    std::vector<double> g1 = cfg.run.grid.empty() ? default_grid(a1, true) : cfg.run.grid;
    std::vector<double> g2 = cfg.run.grid2.empty() ? default_grid(a2, true) : cfg.run.grid2;
    const BorderMap m = border_map(cfg.system, a1, std::move(g1), a2, std::move(g2), experiment_options(cfg, threads));

    CommandResult res;
    Report& r = res.report;
    r.command = "border";
    add_system_meta(r, cfg);
    r.add_meta("axis1", axis_name(a1));
    r.add_meta("axis2", axis_name(a2));
    r.add_meta("epsilon", m.epsilon);
    r.add_meta("negativity_scale", scale_name(cfg.run.scale));
    r.columns = {axis_label(a1), axis_label(a2), "negativity", "entangled", "error"};
    for (std::size_t i = 0; i < m.grid1.size(); ++i)
        for (std::size_t j = 0; j < m.grid2.size(); ++j) {
            const PointResult& c = m.cell(i, j);
            r.add_row({m.grid1[i], m.grid2[j], present_negativity(c.negativity, cfg.run.scale),
                       c.ok() ? (m.entangled(i, j) ? 1.0 : 0.0) : kNaN, c.error});
        }
    res.exit_code = point_exit_code(m.cells);
    return res;
}

CommandResult cmd_optimum(const RunConfig& cfg, int threads) {
    const Axis axis = cfg.run.axis.value_or(Axis::gamma);
    if (axis == Axis::nbar && !cfg.run.nbar_list.empty())
        throw ConfigError("optimum: run.nbar_list cannot be combined with axis nbar");
    if (axis == Axis::gamma && cfg.run.bracket_lo && !(*cfg.run.bracket_lo > 0.0))
        throw ConfigError("optimum: a gamma bracket must lie in (0, inf)");
    const double lo = cfg.run.bracket_lo.value_or(axis == Axis::gamma ? 0.05 : 0.0);
    const double hi = cfg.run.bracket_hi.value_or(axis == Axis::gamma ? 3.0 : 2.0);
    const ExperimentOptions opts = experiment_options(cfg, threads);
    const std::vector<double> nbars =
        cfg.run.nbar_list.empty() ? std::vector<double>{cfg.system.nbar} : cfg.run.nbar_list;

    CommandResult res;
    Report& r = res.report;
    r.command = "optimum";
    add_system_meta(r, cfg);
    r.add_meta("axis", axis_name(axis));
    r.add_meta("bracket", join({lo, hi}));
    r.add_meta("epsilon", cfg.epsilon);
    r.add_meta("locator_tolerance", cfg.locator_tol);
    r.add_meta("coarse_points", static_cast<double>(cfg.run.coarse_points));
    r.add_meta("negativity_scale", scale_name(cfg.run.scale));
    r.columns = {"nbar[1]", label_for(axis, "_m"), "E_max", "bracket_lo", "bracket_hi"};
    if (axis == Axis::gamma) r.columns.push_back("gamma_c[Omega]");
    r.columns.push_back("error");

    std::vector<double> fit_x, fit_y;
    for (double nbar : nbars) {
        const SystemParams base = with_axis(cfg.system, Axis::nbar, nbar);
        std::vector<Cell> row{nbar};
        std::string error;
        try {
            const Optimum o = find_optimum(base, axis, lo, hi, cfg.locator_tol, cfg.run.coarse_points, opts);
            row.insert(row.end(), {o.location, present_negativity(o.value, cfg.run.scale), o.bracket_lo, o.bracket_hi});
            if (axis == Axis::gamma) {
                double gc = kNaN;
                if (steady_negativity(with_axis(base, Axis::gamma, lo), cfg.settings) <= cfg.epsilon)
                    gc = find_threshold(base, Axis::gamma, lo, o.location, cfg.locator_tol, opts);
                row.emplace_back(gc);
            }
            if (nbar <= cfg.run.fit_nbar_max) {
                fit_x.push_back(o.location);
                fit_y.push_back(o.value);
            }
        } catch (const Error& e) {
            row.insert(row.end(), {kNaN, kNaN, kNaN, kNaN});
            if (axis == Axis::gamma) row.emplace_back(kNaN);
            error = e.what();
            res.exit_code = kExitNumerical;
        }
        row.emplace_back(error);
        r.add_row(std::move(row));
    }
    if (nbars.size() > 1) {
        const LineFit fit = fit_line(fit_x, fit_y);
        r.add_meta("fit_nbar_max", cfg.run.fit_nbar_max);
        r.add_meta("fit_points", static_cast<double>(fit.points));
        r.add_meta("fit_slope", fit.slope);
        r.add_meta("fit_intercept", fit.intercept);
        r.add_meta("fit_rms_residual", fit.rms_residual);
        r.add_meta("fit_relative_rms", fit.relative_rms);
    }
    return res;
}

CommandResult cmd_events(const RunConfig& cfg) {
    const Trajectory traj = evolve(cfg.system, initial_state(cfg), cfg.run.t_end, cfg.run.sample_count, cfg.integrator);
    EventOptions eo;
    eo.epsilon = cfg.epsilon;
    eo.time_resolution = cfg.time_resolution;
    const auto events = detect_events(traj, eo);

    CommandResult res;
    Report& r = res.report;
    r.command = "events";
    add_system_meta(r, cfg);
    add_initial_meta(r, cfg);
    r.add_meta("t_end", cfg.run.t_end);
    r.add_meta("sample_count", static_cast<double>(cfg.run.sample_count));
    r.add_meta("epsilon", cfg.epsilon);
    r.add_meta("time_resolution", cfg.time_resolution);
    r.add_meta("negativity_scale", scale_name(cfg.run.scale));
    r.add_meta("final_negativity", present_negativity(state_negativity(traj.states.back()), cfg.run.scale));
    r.columns = {"kind", "t[1/Omega]", "bracket_lo", "bracket_hi", "negativity_before", "negativity_after"};
    for (const EntanglementEvent& e : events)
        r.add_row({std::string(to_string(e.kind)), e.time, e.bracket_lo, e.bracket_hi,
                   present_negativity(e.negativity_before, cfg.run.scale),
                   present_negativity(e.negativity_after, cfg.run.scale)});
    return res;
}

CommandResult cmd_oracle_check(const RunConfig& cfg) {
    if (cfg.system.n_qubits != 2) throw ConfigError("oracle-check: requires system.n_qubits = 2");
    const InitialState start = initial_state(cfg);
    const Trajectory ode = evolve(cfg.system, start, cfg.run.t_end, cfg.run.sample_count, cfg.integrator);
    const Trajectory elem = evolve_elementwise_n2(cfg.system, start, cfg.run.t_end, cfg.run.sample_count, cfg.integrator);
    const Trajectory ex = evolve_exponential(cfg.system, start, cfg.run.t_end, cfg.run.sample_count);

    CommandResult res;
    Report& r = res.report;
    r.command = "oracle-check";
    add_system_meta(r, cfg);
    add_initial_meta(r, cfg);
    r.add_meta("t_end", cfg.run.t_end);
    r.add_meta("sample_count", static_cast<double>(cfg.run.sample_count));
    r.add_meta("rtol", cfg.integrator.rtol);
    r.add_meta("atol", cfg.integrator.atol);
    r.columns = {"t[1/Omega]", "ode_vs_expm", "ode_vs_elementwise", "expm_vs_elementwise"};
    double worst = 0.0;
    for (std::size_t k = 0; k < ode.size(); ++k) {
        const double a = max_abs_difference(ode.states[k].matrix(), ex.states[k].matrix());
        const double b = max_abs_difference(ode.states[k].matrix(), elem.states[k].matrix());
        const double c = max_abs_difference(ex.states[k].matrix(), elem.states[k].matrix());
        worst = std::max({worst, a, b, c});
        r.add_row({ode.times[k], a, b, c});
    }
    r.add_meta("max_deviation", worst);
    return res;
}

CommandResult run_command(const std::string& name, const RunConfig& cfg, int threads) {
    if (threads < 1) throw ConfigError("--threads must be >= 1");
    if (name == "evolve") return cmd_evolve(cfg);
    if (name == "steady") return cmd_steady(cfg);
    if (name == "sweep") return cmd_sweep(cfg, threads);
    if (name == "border") return cmd_border(cfg, threads);
    if (name == "optimum") return cmd_optimum(cfg, threads);
    if (name == "events") return cmd_events(cfg);
    if (name == "oracle-check") return cmd_oracle_check(cfg);
    throw ConfigError("unknown command '" + name + "'");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParameterError*>(&e) ||
        dynamic_cast<const CapacityError*>(&e))
        return kExitConfig;
    if (dynamic_cast<const MultiplicityError*>(&e)) return kExitDegenerate;
    return kExitNumerical;
}

namespace {

void write_atomically(const std::string& path, const std::string& text) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot open output file '" + path + "'");
        f << text;
        f.close();
        if (!f) {
            std::filesystem::remove(tmp);
            throw ConfigError("cannot write output file '" + path + "'");
        }
    }
    std::filesystem::rename(tmp, target);
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Driven, coupled, dissipative spin qubits: dynamics and steady-state entanglement", "spinent"};
    std::string command, config_path, output_path, format;
    int threads = 1;
    std::vector<std::string> overrides;
    app.add_option("command", command, "evolve | steady | sweep | border | optimum | events | oracle-check")
        ->required()
        ->check(CLI::IsMember(known_commands()));
    app.add_option("--config", config_path, "YAML run configuration");
    app.add_option("--output", output_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads for sweeps, maps and optimum scans")
        ->check(CLI::PositiveNumber);
    app.add_option("--tolerance", overrides, "tolerance override key=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "spinent: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const std::string& o : overrides) apply_tolerance_override(cfg, o);
        if (!format.empty()) cfg.output.format = parse_format(format);
        if (!output_path.empty()) cfg.output.path = output_path;

        const CommandResult res = run_command(command, cfg, threads);
        const std::string text = cfg.output.format == OutputFormat::csv ? to_csv(res.report)
                                                                       : to_json_text(res.report);
        for (const std::string& w : res.report.warnings) err << "spinent: warning: " << w << "\n";
        if (cfg.output.path.empty())
            out << text;
        else
            write_atomically(cfg.output.path, text);
        if (res.exit_code != kExitOk)
            err << "spinent: " << command << ": some points failed (see the error column)\n";
        return res.exit_code;
    } catch (const std::exception& e) {
        err << "spinent: " << command << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace spinent::cli
