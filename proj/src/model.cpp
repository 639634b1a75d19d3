// model.cpp — Effective Hamiltonian, Lindblad generator and Liouvillian

#include "spinent/model.hpp"

#include <cmath>
#include <string>

#include "spinent/errors.hpp"

namespace spinent {

namespace {

constexpr complex kI{0.0, 1.0};

// CODATA exact values.
constexpr double kHbar = 1.054571817e-34;    // J s
constexpr double kBoltzmann = 1.380649e-23;  // J / K

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw ParameterError(std::string(name) + " must be finite");
}

void check_per_qubit(const std::vector<double>& v, int n, const char* name) {
    if (static_cast<int>(v.size()) != n)
        throw ParameterError(std::string(name) + " has " + std::to_string(v.size()) +
                             " entries, expected " + std::to_string(n));
    for (double x : v) require_finite(x, name);
}

} // namespace

SystemParams SystemParams::uniform(int n_qubits, double omega, double delta, double coupling_j,
                                   double gamma, double nbar) {
    if (n_qubits < 1) throw ParameterError("n_qubits must be >= 1");
    SystemParams p;
    p.n_qubits = n_qubits;
    p.omega.assign(n_qubits, omega);
    p.delta.assign(n_qubits, delta);
    p.coupling_j = coupling_j;
    p.gamma.assign(n_qubits, gamma);
    p.nbar = nbar;
    p.validate();
    return p;
}

void SystemParams::validate() const {
    if (n_qubits < 1) throw ParameterError("n_qubits must be >= 1");
    if (n_qubits > 20) throw CapacityError("n_qubits too large for a dense register");
    check_per_qubit(omega, n_qubits, "omega");
    check_per_qubit(delta, n_qubits, "delta");
    check_per_qubit(gamma, n_qubits, "gamma");
    require_finite(coupling_j, "coupling_j");
    require_finite(nbar, "nbar");
    for (double g : gamma)
        if (g < 0.0) throw ParameterError("gamma must be >= 0, got " + std::to_string(g));
    if (nbar < 0.0) throw ParameterError("nbar must be >= 0, got " + std::to_string(nbar));
}

Matrix build_effective_hamiltonian(const SystemParams& p) {
    p.validate();
    const int n = p.n_qubits;
    const int d = p.dim();
    const Matrix sz = ops::sigma_z();
    const Matrix sx = ops::sigma_x();
    const Matrix up_proj = ops::sigma_plus() * ops::sigma_minus();    // |up><up|
    const Matrix down_proj = ops::sigma_minus() * ops::sigma_plus();  // |down><down|

    Matrix h = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
        h += 0.5 * p.delta[i] * ops::embed(sz, i, n);
        h += p.omega[i] * ops::embed(sx, i, n);
        h -= kI * p.gamma[i] * (p.nbar + 1.0) * ops::embed(up_proj, i, n);
        h -= kI * p.gamma[i] * p.nbar * ops::embed(down_proj, i, n);
    }
    for (int i = 0; i + 1 < n; ++i)
        h -= p.coupling_j * ops::embed(sz, i, n) * ops::embed(sz, i + 1, n);
    return h;
}

LindbladGenerator::LindbladGenerator(const SystemParams& p) : h_eff_(build_effective_hamiltonian(p)) {
    const Matrix lower = ops::sigma_minus();
    const Matrix raise = ops::sigma_plus();
    for (int i = 0; i < p.n_qubits; ++i) {
        const double emission = 2.0 * p.gamma[i] * (p.nbar + 1.0);
        const double absorption = 2.0 * p.gamma[i] * p.nbar;
        if (emission != 0.0) jumps_.push_back({ops::embed(lower, i, p.n_qubits), emission});
        if (absorption != 0.0) jumps_.push_back({ops::embed(raise, i, p.n_qubits), absorption});
    }
}

Matrix LindbladGenerator::apply(const Matrix& rho) const {
    if (rho.rows() != h_eff_.rows() || rho.cols() != h_eff_.cols())
        throw ParameterError("apply_generator: state dimension " + std::to_string(rho.rows()) +
                             " does not match generator dimension " +
                             std::to_string(h_eff_.rows()));
    Matrix out = -kI * h_eff_ * rho + kI * rho * h_eff_.adjoint();
    for (const Jump& j : jumps_) out += j.rate * (j.op * rho * j.op.adjoint());
    return out;
}

Matrix apply_generator(const SystemParams& p, const Matrix& rho) {
    return LindbladGenerator(p).apply(rho);
}

Matrix apply_generator(const SystemParams& p, const DensityMatrix& rho) {
    return apply_generator(p, rho.matrix());
}

Liouvillian build_liouvillian(const SystemParams& p) {
    p.validate();
    if (p.n_qubits > kMaxDenseQubits)
        throw CapacityError("build_liouvillian: n_qubits = " + std::to_string(p.n_qubits) +
                            " exceeds the dense cap of " + std::to_string(kMaxDenseQubits));
    const int d = p.dim();
    const Matrix id = ops::identity(d);
    const Matrix h = build_effective_hamiltonian(p);

    // vec(A X B) = (B^T kron A) vec(X)
    Matrix l = -kI * ops::kron(id, h) + kI * ops::kron(h.conjugate(), id);
    const Matrix lower = ops::sigma_minus();
    const Matrix raise = ops::sigma_plus();
    for (int i = 0; i < p.n_qubits; ++i) {
        const Matrix sm = ops::embed(lower, i, p.n_qubits);
        const Matrix sp = ops::embed(raise, i, p.n_qubits);
        l += 2.0 * p.gamma[i] * (p.nbar + 1.0) * ops::kron(sp.transpose(), sm);
        l += 2.0 * p.gamma[i] * p.nbar * ops::kron(sm.transpose(), sp);
    }
    return Liouvillian{d, std::move(l)};
}

double thermal_occupation(double temperature_kelvin, double angular_frequency) {
    if (!(temperature_kelvin > 0.0) || !std::isfinite(temperature_kelvin))
        throw ParameterError("thermal_occupation: temperature must be positive");
    if (!(angular_frequency > 0.0) || !std::isfinite(angular_frequency))
        throw ParameterError("thermal_occupation: angular frequency must be positive");
    const double x = kHbar * angular_frequency / (kBoltzmann * temperature_kelvin);
    return 1.0 / std::expm1(x);
}

} // namespace spinent
