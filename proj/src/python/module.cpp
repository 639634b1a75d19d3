// module.cpp — Python bindings for the spinent core

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinent/dynamics.hpp"
#include "spinent/entanglement.hpp"
#include "spinent/errors.hpp"
#include "spinent/experiments.hpp"
#include "spinent/steady.hpp"

namespace py = pybind11;
using namespace spinent;

namespace {

InitialState to_initial(const py::object& start) {
    if (py::isinstance<py::float_>(start) || py::isinstance<py::int_>(start))
        return InitialState::from_theta(start.cast<double>());
    return InitialState::from_density(DensityMatrix::from_matrix(start.cast<Matrix>()));
}

py::dict trajectory_dict(const Trajectory& t) {
    std::vector<Matrix> states;
    states.reserve(t.size());
    for (const DensityMatrix& rho : t.states) states.push_back(rho.matrix());
    py::dict d;
    d["times"] = t.times;
    d["states"] = states;
    d["negativity"] = negativity_series(t);
    d["accepted_steps"] = t.stats.accepted;
    d["rejected_steps"] = t.stats.rejected;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Driven, coupled, dissipative spin qubits: dynamics and steady-state entanglement";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<MultiplicityError>(m, "MultiplicityError", numerical.ptr());
    py::register_exception<StiffnessError>(m, "StiffnessError", numerical.ptr());
    py::register_exception<BracketError>(m, "BracketError", base.ptr());
    py::register_exception<AmbiguityError>(m, "AmbiguityError", base.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", base.ptr());

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_static("uniform", &SystemParams::uniform, py::arg("n_qubits"), py::arg("omega"), py::arg("delta"),
                    py::arg("J"), py::arg("gamma"), py::arg("nbar"))
        .def_readwrite("n_qubits", &SystemParams::n_qubits)
        .def_readwrite("omega", &SystemParams::omega)
        .def_readwrite("delta", &SystemParams::delta)
        .def_readwrite("J", &SystemParams::coupling_j)
        .def_readwrite("gamma", &SystemParams::gamma)
        .def_readwrite("nbar", &SystemParams::nbar)
        .def("validate", &SystemParams::validate)
        .def("dim", &SystemParams::dim)
        .def("__repr__", [](const SystemParams& p) {
            return "SystemParams(n_qubits=" + std::to_string(p.n_qubits) + ", J=" + std::to_string(p.coupling_j) +
                   ", nbar=" + std::to_string(p.nbar) + ")";
        });

    m.def("effective_hamiltonian", &build_effective_hamiltonian, py::arg("params"));
    m.def("liouvillian", [](const SystemParams& p) { return build_liouvillian(p).matrix; }, py::arg("params"));
    m.def("generator", [](const SystemParams& p, const Matrix& rho) { return apply_generator(p, rho); },
          py::arg("params"), py::arg("rho"));
    m.def("theta_state", [](double theta, int n) { return theta_state(theta, n).matrix(); }, py::arg("theta"),
          py::arg("n_qubits") = 2);
    m.def("thermal_occupation", &thermal_occupation, py::arg("temperature"), py::arg("frequency"));
    m.def("analytic_threshold", &analytic_threshold, py::arg("omega"), py::arg("J"));

    m.def("negativity", [](const Matrix& rho) { return negativity(DensityMatrix::from_matrix(rho)); }, py::arg("rho"));
    m.def("partial_transpose", [](const Matrix& rho, const std::vector<int>& sub) { return partial_transpose(rho, sub); },
          py::arg("rho"), py::arg("subsystem"));

    m.def("evolve",
          [](const SystemParams& p, const py::object& start, double t_end, int samples, const std::string& method) {
              const InitialState s = to_initial(start);
              if (method == "rk") return trajectory_dict(evolve(p, s, t_end, samples));
              if (method == "elementwise") return trajectory_dict(evolve_elementwise_n2(p, s, t_end, samples));
              if (method == "expm") return trajectory_dict(evolve_exponential(p, s, t_end, samples));
              throw ParameterError("evolve: method must be rk, elementwise or expm");
          },
          py::arg("params"), py::arg("initial") = 0.0, py::arg("t_end") = 60.0, py::arg("samples") = 601,
          py::arg("method") = "rk");

    m.def("steady_state",
          [](const SystemParams& p) {
              const SteadyStateResult r = steady_state(p);
              py::dict d;
              d["rho"] = r.rho_ss.matrix();
              d["residual"] = r.residual;
              d["uniqueness_gap"] = r.uniqueness_gap;
              d["negativity"] = r.rho_ss.n_qubits() == 2 ? negativity(r.rho_ss) : pairwise_negativity(r.rho_ss, 0, 1);
              return d;
          },
          py::arg("params"));

    m.def("sweep",
          [](const SystemParams& p, const std::string& axis, std::vector<double> grid, int threads) {
              ExperimentOptions o;
              o.threads = threads;
              const SweepResult s = sweep(p, parse_axis(axis), std::move(grid), o);
              std::vector<std::string> errors;
              for (const PointResult& pt : s.points) errors.push_back(pt.error);
              py::list markers;
              for (const Marker& mk : s.markers)
                  markers.append(py::make_tuple(to_string(mk.kind), mk.location, mk.tolerance));
              py::dict d;
              d["grid"] = s.grid;
              d["negativity"] = s.values();
              d["errors"] = errors;
              d["markers"] = markers;
              return d;
          },
          py::arg("params"), py::arg("axis"), py::arg("grid"), py::arg("threads") = 1);

    m.def("find_gamma_c",
          [](const SystemParams& p, double lo, double hi, double tol) { return find_gamma_c(p, lo, hi, tol); },
          py::arg("params"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-6);
    m.def("find_gamma_m",
          [](const SystemParams& p, double lo, double hi, double tol) {
              const Optimum o = find_gamma_m(p, lo, hi, tol);
              return py::make_tuple(o.location, o.value);
          },
          py::arg("params"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-6);
}
