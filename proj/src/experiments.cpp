// experiments.cpp — Parameter sweeps and locators over steady-state negativity

#include "spinent/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinent/entanglement.hpp"
#include "spinent/errors.hpp"
#include "spinent/optimize.hpp"
#include "spinent/parallel.hpp"
#include "spinent/steady.hpp"

namespace spinent {

Axis parse_axis(std::string_view name) {
    if (name == "gamma") return Axis::gamma;
    if (name == "J") return Axis::coupling_j;
    if (name == "delta") return Axis::delta;
    if (name == "nbar") return Axis::nbar;
    throw ParameterError("unknown axis '" + std::string(name) + "' (expected gamma, J, delta, nbar)");
}

const char* axis_name(Axis axis) {
    switch (axis) {
        case Axis::gamma: return "gamma";
        case Axis::coupling_j: return "J";
        case Axis::delta: return "delta";
        case Axis::nbar: return "nbar";
    }
    return "?";
}

const char* axis_label(Axis axis) {
    switch (axis) {
        case Axis::gamma: return "gamma[Omega]";
        case Axis::coupling_j: return "J[Omega]";
        case Axis::delta: return "delta[Omega]";
        case Axis::nbar: return "nbar[1]";
    }
    return "?";
}

SystemParams with_axis(SystemParams base, Axis axis, double value) {
    switch (axis) {
        case Axis::gamma: base.gamma.assign(base.n_qubits, value); break;
        case Axis::coupling_j: base.coupling_j = value; break;
        case Axis::delta: base.delta.assign(base.n_qubits, value); break;
        case Axis::nbar: base.nbar = value; break;
    }
    return base;
}

const char* to_string(Marker::Kind kind) {
    return kind == Marker::Kind::threshold ? "threshold" : "maximum";
}

PointResult evaluate_point(const SystemParams& p, const NumericalSettings& s) {
    PointResult r;
    try {
        const SteadyStateResult ss = steady_state(p, s);
        r.residual = ss.residual;
        r.uniqueness_gap = ss.uniqueness_gap;
        r.negativity = ss.rho_ss.n_qubits() == 2 ? negativity(ss.rho_ss)
                                                 : pairwise_negativity(ss.rho_ss, 0, 1);
    } catch (const MultiplicityError& e) {
        r.uniqueness_gap = e.gap();
        r.error = e.what();
    } catch (const Error& e) {
        r.error = e.what();
    }
    return r;
}

double steady_negativity(const SystemParams& p, const NumericalSettings& s) {
    const SteadyStateResult ss = steady_state(p, s);
    return ss.rho_ss.n_qubits() == 2 ? negativity(ss.rho_ss) : pairwise_negativity(ss.rho_ss, 0, 1);
}

std::vector<double> SweepResult::values() const {
    std::vector<double> v;
    v.reserve(points.size());
    for (const PointResult& p : points) v.push_back(p.negativity);
    return v;
}

bool SweepResult::all_ok() const {
    return std::all_of(points.begin(), points.end(), [](const PointResult& p) { return p.ok(); });
}

namespace {

void check_grid(const std::vector<double>& grid, const char* what) {
    if (grid.empty()) throw ParameterError(std::string(what) + ": grid is empty");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k])) throw ParameterError(std::string(what) + ": non-finite grid value");
        if (k > 0 && !(grid[k] > grid[k - 1]))
            throw ParameterError(std::string(what) + ": grid must be strictly ascending");
    }
}

std::vector<Marker> locate_markers(const std::vector<double>& grid,
                                   const std::vector<PointResult>& pts, double eps) {
    std::vector<Marker> markers;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        if (!pts[k].ok() || !pts[k + 1].ok()) continue;
        if ((pts[k].negativity > eps) != (pts[k + 1].negativity > eps))
            markers.push_back({Marker::Kind::threshold, 0.5 * (grid[k] + grid[k + 1]),
                               0.5 * (grid[k + 1] - grid[k]), eps});
    }
    for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
        if (!pts[k - 1].ok() || !pts[k].ok() || !pts[k + 1].ok()) continue;
        const double v = pts[k].negativity;
        if (v > eps && v > pts[k - 1].negativity && v >= pts[k + 1].negativity)
            markers.push_back({Marker::Kind::maximum, grid[k],
                               std::max(grid[k] - grid[k - 1], grid[k + 1] - grid[k]), v});
    }
    return markers;
}

} // namespace

SweepResult sweep(const SystemParams& base, Axis axis, std::vector<double> grid,
                  const ExperimentOptions& opts) {
    check_grid(grid, "sweep");
    base.validate();
    SweepResult out;
    out.axis = axis;
    out.epsilon = opts.epsilon;
    out.points = parallel_map(grid.size(), opts.threads, [&](std::size_t k) {
        PointResult r;
        try {
            r = evaluate_point(with_axis(base, axis, grid[k]), opts.settings);
        } catch (const Error& e) {
            r.error = e.what();
        }
        return r;
    });
    out.grid = std::move(grid);
    out.markers = locate_markers(out.grid, out.points, opts.epsilon);
    return out;
}

SweepResult sweep_gamma(const SystemParams& base, std::vector<double> grid,
                        const ExperimentOptions& opts) {
    if (!grid.empty() && !(grid.front() > 0.0))
        throw ParameterError("sweep_gamma: grid must lie in (0, inf)");
    return sweep(base, Axis::gamma, std::move(grid), opts);
}

SweepResult sweep_delta(const SystemParams& base, std::vector<double> grid,
                        const ExperimentOptions& opts) {
    return sweep(base, Axis::delta, std::move(grid), opts);
}

double find_threshold(const SystemParams& base, Axis axis, double lo, double hi, double tol,
                      const ExperimentOptions& opts) {
    auto entangled = [&](double x) {
        return steady_negativity(with_axis(base, axis, x), opts.settings) > opts.epsilon;
    };
    try {
        return bisect_predicate(entangled, lo, hi, tol).mid();
    } catch (const BracketError&) {
        std::ostringstream msg;
        msg << "find_threshold: [" << lo << ", " << hi << "] along " << axis_name(axis)
            << " does not straddle the entanglement threshold";
        throw BracketError(msg.str());
    }
}

double find_gamma_c(const SystemParams& base, double lo, double hi, double tol,
                    const ExperimentOptions& opts) {
    if (!(lo > 0.0)) throw ParameterError("find_gamma_c: bracket must lie in (0, inf)");
    const bool lo_sep = steady_negativity(with_axis(base, Axis::gamma, lo), opts.settings) <= opts.epsilon;
    const bool hi_ent = steady_negativity(with_axis(base, Axis::gamma, hi), opts.settings) > opts.epsilon;
    if (!lo_sep || !hi_ent) {
        std::ostringstream msg;
        msg << "find_gamma_c: need separable steady state at gamma = " << lo
            << " and entangled at gamma = " << hi;
        throw BracketError(msg.str());
    }
    return find_threshold(base, Axis::gamma, lo, hi, tol, opts);
}

Optimum find_optimum(const SystemParams& base, Axis axis, double lo, double hi, double tol,
                     int coarse_points, const ExperimentOptions& opts) {
    if (!(lo < hi)) throw BracketError("find_optimum: need lo < hi");
    if (coarse_points < 3) throw ParameterError("find_optimum: need at least 3 coarse points");
    std::vector<double> grid(coarse_points);
    for (int k = 0; k < coarse_points; ++k)
        grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(coarse_points - 1);
    grid.back() = hi;

    const std::vector<double> v = parallel_map(grid.size(), opts.threads, [&](std::size_t k) {
        return steady_negativity(with_axis(base, axis, grid[k]), opts.settings);
    });

    std::vector<std::size_t> maxima;
    const std::size_t m = v.size();
    if (v[0] > opts.epsilon && v[0] > v[1]) maxima.push_back(0);
    for (std::size_t k = 1; k + 1 < m; ++k)
        if (v[k] > opts.epsilon && v[k] > v[k - 1] && v[k] >= v[k + 1]) maxima.push_back(k);
    if (v[m - 1] > opts.epsilon && v[m - 1] > v[m - 2]) maxima.push_back(m - 1);

    if (maxima.empty()) {
        std::ostringstream msg;
        msg << "find_optimum: no entangled maximum along " << axis_name(axis) << " on [" << lo
            << ", " << hi << "]";
        throw BracketError(msg.str());
    }
    if (maxima.size() > 1) {
        std::vector<double> where;
        std::ostringstream msg;
        msg << "find_optimum: coarse scan is not unimodal; local maxima at";
        for (std::size_t k : maxima) {
            where.push_back(grid[k]);
            msg << ' ' << grid[k];
        }
        throw AmbiguityError(msg.str(), std::move(where));
    }
    const std::size_t k = maxima.front();
    if (k == 0 || k == m - 1) {
        std::ostringstream msg;
        msg << "find_optimum: maximum sits on the bracket edge at " << grid[k];
        throw BracketError(msg.str());
    }

    const auto f = [&](double x) {
        return steady_negativity(with_axis(base, axis, x), opts.settings);
    };
    const Bracket b = golden_section_maximize(f, grid[k - 1], grid[k + 1], tol);
    const double x = b.mid();
    return Optimum{x, f(x), b.lo, b.hi};
}

Optimum find_gamma_m(const SystemParams& base, double lo, double hi, double tol, int coarse_points,
                     const ExperimentOptions& opts) {
    if (!(lo > 0.0)) throw ParameterError("find_gamma_m: bracket must lie in (0, inf)");
    return find_optimum(base, Axis::gamma, lo, hi, tol, coarse_points, opts);
}

bool BorderMap::entangled(std::size_t i, std::size_t j) const {
    const PointResult& c = cell(i, j);
    return c.ok() && c.negativity > epsilon;
}

BorderMap border_map(const SystemParams& base, Axis axis1, std::vector<double> grid1, Axis axis2,
                     std::vector<double> grid2, const ExperimentOptions& opts) {
    if (axis1 == axis2) throw ParameterError("border_map: axes must differ");
    check_grid(grid1, "border_map axis1");
    check_grid(grid2, "border_map axis2");
    base.validate();
    BorderMap map;
    map.axis1 = axis1;
    map.axis2 = axis2;
    map.epsilon = opts.epsilon;
    const std::size_t n2 = grid2.size();
    map.cells = parallel_map(grid1.size() * n2, opts.threads, [&](std::size_t idx) {
        PointResult r;
        try {
            const SystemParams p = with_axis(with_axis(base, axis1, grid1[idx / n2]), axis2, grid2[idx % n2]);
            r = evaluate_point(p, opts.settings);
        } catch (const Error& e) {
            r.error = e.what();
        }
        return r;
    });
    map.grid1 = std::move(grid1);
    map.grid2 = std::move(grid2);
    return map;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ParameterError("fit_line: size mismatch");
    LineFit fit;
    fit.points = static_cast<int>(x.size());
    if (x.size() < 2) return fit;
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    if (!(sxx > 0.0)) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0, mean_abs = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double r = y[k] - (fit.slope * x[k] + fit.intercept);
        ss += r * r;
        mean_abs += std::abs(y[k]);
    }
    fit.rms_residual = std::sqrt(ss / n);
    mean_abs /= n;
    fit.relative_rms = mean_abs > 0.0 ? fit.rms_residual / mean_abs
                                      : std::numeric_limits<double>::infinity();
    return fit;
}

NbarRelation gamma_m_vs_nbar(const SystemParams& base, const std::vector<double>& nbar_list,
                             double gamma_lo, double gamma_hi, double tol, double fit_nbar_max,
                             const ExperimentOptions& opts) {
    check_grid(nbar_list, "gamma_m_vs_nbar");
    NbarRelation rel;
    rel.fit_nbar_max = fit_nbar_max;
    for (double nbar : nbar_list) {
        NbarOptimum row{nbar, Optimum{std::numeric_limits<double>::quiet_NaN(),
                                      std::numeric_limits<double>::quiet_NaN(),
                                      gamma_lo, gamma_hi},
                        {}};
        try {
            row.optimum = find_gamma_m(with_axis(base, Axis::nbar, nbar), gamma_lo, gamma_hi, tol,
                                       kDefaultCoarsePoints, opts);
        } catch (const Error& e) {
            row.error = e.what();
        }
        rel.rows.push_back(std::move(row));
    }
    std::vector<double> xs, ys;
    for (const NbarOptimum& r : rel.rows) {
        if (r.error.empty() && r.nbar <= fit_nbar_max) {
            xs.push_back(r.optimum.location);
            ys.push_back(r.optimum.value);
        }
    }
    rel.fit = fit_line(xs, ys);
    return rel;
}

} // namespace spinent
