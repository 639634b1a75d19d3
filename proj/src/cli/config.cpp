// config.cpp — YAML run configuration with strict key checking

#include "spinent/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace spinent::cli {

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

const char* format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

namespace {

class Parser {
public:
    explicit Parser(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& msg) const {
        std::ostringstream out;
        out << source_;
        if (node.IsDefined() && !node.Mark().is_null())
            out << ":" << node.Mark().line + 1 << ":" << node.Mark().column + 1;
        out << ": " << msg;
        throw ConfigError(out.str());
    }

    // Rejects keys outside `allowed`.
    void check_keys(const YAML::Node& node, const std::string& section,
                    const std::set<std::string>& allowed) const {
        if (!node.IsMap()) fail(node, "section '" + section + "' must be a mapping");
        for (const auto& kv : node) {
            const std::string key = kv.first.as<std::string>();
            if (!allowed.count(key)) {
                std::string list;
                for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
                fail(kv.first, "unknown key '" + key + "' in section '" + section + "' (allowed: " +
                                   list + ")");
            }
        }
    }

    double number(const YAML::Node& node, const std::string& field) const {
        if (!node.IsScalar()) fail(node, "field '" + field + "' must be a number");
        const std::string text = node.as<std::string>();
        if (const auto v = parse_pi_expression(text)) return *v;
        try {
            return node.as<double>();
        } catch (const YAML::Exception&) {
            fail(node, "field '" + field + "': cannot parse '" + text + "' as a number");
        }
    }

    int integer(const YAML::Node& node, const std::string& field) const {
        if (!node.IsScalar()) fail(node, "field '" + field + "' must be an integer");
        try {
            return node.as<int>();
        } catch (const YAML::Exception&) {
            fail(node, "field '" + field + "': cannot parse '" + node.as<std::string>() +
                           "' as an integer");
        }
    }

    std::string text(const YAML::Node& node, const std::string& field) const {
        if (!node.IsScalar()) fail(node, "field '" + field + "' must be a string");
        return node.as<std::string>();
    }

    std::vector<double> number_list(const YAML::Node& node, const std::string& field) const {
        if (!node.IsSequence()) fail(node, "field '" + field + "' must be a list of numbers");
        std::vector<double> out;
        for (std::size_t k = 0; k < node.size(); ++k)
            out.push_back(number(node[k], field + "[" + std::to_string(k) + "]"));
        return out;
    }

    // Scalar broadcast to n entries, or a list of exactly n entries.
    std::vector<double> per_qubit(const YAML::Node& node, const std::string& field, int n) const {
        if (node.IsScalar()) return std::vector<double>(static_cast<std::size_t>(n), number(node, field));
        std::vector<double> v = number_list(node, field);
        if (static_cast<int>(v.size()) != n)
            fail(node, "field '" + field + "' has " + std::to_string(v.size()) + " entries, expected " +
                           std::to_string(n));
        return v;
    }

    // Explicit list, or {start, stop, count} for a uniform grid. Must be non-empty and ascending.
    std::vector<double> grid(const YAML::Node& node, const std::string& field) const {
        std::vector<double> g;
        if (node.IsMap()) {
            check_keys(node, field, {"start", "stop", "count"});
            for (const char* k : {"start", "stop", "count"})
                if (!node[k]) fail(node, "grid '" + field + "' needs start, stop and count");
            const double a = number(node["start"], field + ".start");
            const double b = number(node["stop"], field + ".stop");
            const int n = integer(node["count"], field + ".count");
            if (n < 1) fail(node["count"], "grid '" + field + "' count must be >= 1");
            if (n == 1) {
                g.push_back(a);
            } else {
                for (int k = 0; k < n; ++k) g.push_back(a + (b - a) * k / (n - 1));
                g.back() = b;
            }
        } else {
            g = number_list(node, field);
        }
        if (g.empty()) fail(node, "grid '" + field + "' is empty");
        for (std::size_t k = 1; k < g.size(); ++k)
            if (!(g[k] > g[k - 1])) fail(node, "grid '" + field + "' must be strictly ascending");
        return g;
    }

    Axis axis(const YAML::Node& node, const std::string& field) const {
        try {
            return parse_axis(text(node, field));
        } catch (const ParameterError& e) {
            fail(node, e.what());
        }
    }

    static std::optional<double> parse_pi_expression(const std::string& s) {
        // Accepts "pi", "pi/k", "k*pi", "k*pi/m".
        const auto pos = s.find("pi");
        if (pos == std::string::npos) return std::nullopt;
        double factor = 1.0, divisor = 1.0;
        const std::string head = s.substr(0, pos);
        const std::string tail = s.substr(pos + 2);
        try {
            if (!head.empty()) {
                if (head.back() != '*') return std::nullopt;
                std::size_t used = 0;
                factor = std::stod(head.substr(0, head.size() - 1), &used);
                if (used != head.size() - 1) return std::nullopt;
            }
            if (!tail.empty()) {
                if (tail.front() != '/') return std::nullopt;
                std::size_t used = 0;
                divisor = std::stod(tail.substr(1), &used);
                if (used != tail.size() - 1) return std::nullopt;
            }
        } catch (const std::exception&) {
            return std::nullopt;
        }
        return factor * std::numbers::pi / divisor;
    }

private:
    std::string source_;
};

void parse_system(const Parser& P, const YAML::Node& node, RunConfig& cfg) {
    P.check_keys(node, "system",
                 {"n_qubits", "omega", "delta", "J", "gamma", "nbar", "temperature", "frequency"});
    SystemParams& s = cfg.system;
    if (node["n_qubits"]) s.n_qubits = P.integer(node["n_qubits"], "system.n_qubits");
    if (s.n_qubits < 1) P.fail(node["n_qubits"], "system.n_qubits must be >= 1");
    const int n = s.n_qubits;
    s.omega = node["omega"] ? P.per_qubit(node["omega"], "system.omega", n)
                            : std::vector<double>(n, s.omega.empty() ? 1.0 : s.omega.front());
    s.delta = node["delta"] ? P.per_qubit(node["delta"], "system.delta", n)
                            : std::vector<double>(n, s.delta.empty() ? 0.0 : s.delta.front());
    s.gamma = node["gamma"] ? P.per_qubit(node["gamma"], "system.gamma", n)
                            : std::vector<double>(n, s.gamma.empty() ? 0.8 : s.gamma.front());
    if (node["J"]) s.coupling_j = P.number(node["J"], "system.J");

    const bool thermal = node["temperature"] || node["frequency"];
    if (thermal && node["nbar"])
        P.fail(node["nbar"], "give either system.nbar or system.temperature + system.frequency");
    if (node["nbar"]) s.nbar = P.number(node["nbar"], "system.nbar");
    if (thermal) {
        if (!node["temperature"] || !node["frequency"])
            P.fail(node, "system.temperature and system.frequency must be given together");
        try {
            s.nbar = thermal_occupation(P.number(node["temperature"], "system.temperature"),
                                        P.number(node["frequency"], "system.frequency"));
        } catch (const ParameterError& e) {
            P.fail(node["temperature"], e.what());
        }
    }
    try {
        s.validate();
    } catch (const ParameterError& e) {
        P.fail(node, std::string("invalid system parameters: ") + e.what());
    }
}

void parse_initial(const Parser& P, const YAML::Node& node, RunConfig& cfg) {
    P.check_keys(node, "initial", {"theta", "matrix"});
    if (node["theta"] && node["matrix"]) P.fail(node, "give either initial.theta or initial.matrix");
    if (node["theta"]) {
        const double th = P.number(node["theta"], "initial.theta");
        if (!(th >= 0.0 && th <= std::numbers::pi / 2 + 1e-12))
            P.fail(node["theta"], "initial.theta must lie in [0, pi/2]");
        cfg.initial.theta = std::min(th, std::numbers::pi / 2);
    }
    if (node["matrix"]) {
        const std::vector<double> flat = P.number_list(node["matrix"], "initial.matrix");
        const long d = cfg.system.dim();
        if (static_cast<long>(flat.size()) != 2 * d * d)
            P.fail(node["matrix"], "initial.matrix needs " + std::to_string(2 * d * d) +
                                       " numbers (row-major real/imag pairs) for " +
                                       std::to_string(cfg.system.n_qubits) + " qubits");
        Matrix m(d, d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                m(i, j) = complex(flat[2 * (i * d + j)], flat[2 * (i * d + j) + 1]);
        try {
            (void)DensityMatrix::from_matrix(m, cfg.settings);
        } catch (const Error& e) {
            P.fail(node["matrix"], std::string("initial.matrix: ") + e.what());
        }
        cfg.initial.matrix = std::move(m);
    }
}

void parse_run(const Parser& P, const YAML::Node& node, RunConfig& cfg) {
    P.check_keys(node, "run",
                 {"t_end", "sample_count", "axis", "grid", "axis2", "grid2", "bracket",
                  "coarse_points", "nbar_list", "fit_nbar_max", "negativity_scale"});
    auto& r = cfg.run;
    if (node["t_end"]) {
        r.t_end = P.number(node["t_end"], "run.t_end");
        if (!(r.t_end > 0.0)) P.fail(node["t_end"], "run.t_end must be positive");
    }
    if (node["sample_count"]) {
        r.sample_count = P.integer(node["sample_count"], "run.sample_count");
        if (r.sample_count < 2) P.fail(node["sample_count"], "run.sample_count must be >= 2");
    }
    if (node["axis"]) r.axis = P.axis(node["axis"], "run.axis");
    if (node["grid"]) r.grid = P.grid(node["grid"], "run.grid");
    if (node["axis2"]) r.axis2 = P.axis(node["axis2"], "run.axis2");
    if (node["grid2"]) r.grid2 = P.grid(node["grid2"], "run.grid2");
    if (node["bracket"]) {
        const std::vector<double> b = P.number_list(node["bracket"], "run.bracket");
        if (b.size() != 2 || !(b[0] < b[1]))
            P.fail(node["bracket"], "run.bracket must be [lo, hi] with lo < hi");
        r.bracket_lo = b[0];
        r.bracket_hi = b[1];
    }
    if (node["coarse_points"]) {
        r.coarse_points = P.integer(node["coarse_points"], "run.coarse_points");
        if (r.coarse_points < 3) P.fail(node["coarse_points"], "run.coarse_points must be >= 3");
    }
    if (node["nbar_list"]) r.nbar_list = P.grid(node["nbar_list"], "run.nbar_list");
    if (node["fit_nbar_max"]) r.fit_nbar_max = P.number(node["fit_nbar_max"], "run.fit_nbar_max");
    if (node["negativity_scale"]) {
        const std::string s = P.text(node["negativity_scale"], "run.negativity_scale");
        if (s == "canonical")
            r.scale = NegativityScale::canonical;
        else if (s == "doubled")
            r.scale = NegativityScale::doubled;
        else
            P.fail(node["negativity_scale"], "run.negativity_scale must be canonical or doubled");
    }
}

void set_tolerance(RunConfig& cfg, const std::string& key, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError("tolerance '" + key + "' must be a positive finite number");
    if (key == "rtol") cfg.integrator.rtol = v;
    else if (key == "atol") cfg.integrator.atol = v;
    else if (key == "hermiticity") cfg.settings.hermiticity_tol = v;
    else if (key == "trace") cfg.settings.trace_tol = v;
    else if (key == "positivity") cfg.settings.positivity_tol = v;
    else if (key == "uniqueness_gap") cfg.settings.uniqueness_gap_min = v;
    else if (key == "epsilon") cfg.epsilon = v;
    else if (key == "locator") cfg.locator_tol = v;
    else if (key == "time_resolution") cfg.time_resolution = v;
    else throw ConfigError("unknown tolerance key '" + key + "'");
}

void parse_tolerances(const Parser& P, const YAML::Node& node, RunConfig& cfg) {
    const auto& keys = tolerance_keys();
    P.check_keys(node, "tolerances", std::set<std::string>(keys.begin(), keys.end()));
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        try {
            set_tolerance(cfg, key, P.number(kv.second, "tolerances." + key));
        } catch (const ConfigError& e) {
            P.fail(kv.second, e.what());
        }
    }
}

void parse_output(const Parser& P, const YAML::Node& node, RunConfig& cfg) {
    P.check_keys(node, "output", {"path", "format"});
    if (node["path"]) cfg.output.path = P.text(node["path"], "output.path");
    if (node["format"]) {
        try {
            cfg.output.format = parse_format(P.text(node["format"], "output.format"));
        } catch (const ConfigError& e) {
            P.fail(node["format"], e.what());
        }
    }
}

} // namespace

const std::vector<std::string>& tolerance_keys() {
    static const std::vector<std::string> keys = {"rtol",     "atol",    "hermiticity",
                                                  "trace",    "positivity", "uniqueness_gap",
                                                  "epsilon",  "locator", "time_resolution"};
    return keys;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
    RunConfig cfg;
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" +
                          std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    if (root.IsNull()) return cfg;
    const Parser P(source);
    P.check_keys(root, "top level", {"system", "initial", "run", "tolerances", "output"});
    // Tolerances first so explicit states are validated against them.
    if (root["tolerances"]) parse_tolerances(P, root["tolerances"], cfg);
    if (root["system"]) parse_system(P, root["system"], cfg);
    if (root["initial"]) parse_initial(P, root["initial"], cfg);
    if (root["run"]) parse_run(P, root["run"], cfg);
    if (root["output"]) parse_output(P, root["output"], cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

void apply_tolerance_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--tolerance expects key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
        throw ConfigError("--tolerance " + key + ": cannot parse '" + value + "' as a number");
    }
    set_tolerance(cfg, key, v);
}

} // namespace spinent::cli
