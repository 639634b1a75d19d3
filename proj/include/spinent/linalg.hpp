// linalg.hpp — Dense complex linear algebra and qubit-register primitives
//
// Basis convention: a register of n qubits is ordered with qubit 0 as the most
// significant bit, and bit value 0 = |up> (excited), 1 = |down> (ground). For two
// qubits this gives {|uu>, |ud>, |du>, |dd>}. sigma_z = diag(+1, -1) and
// sigma_plus = |up><down|.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spinent/settings.hpp"

namespace spinent {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace ops {

Matrix identity(int dim);
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_plus();   // |up><down|
Matrix sigma_minus();  // |down><up|

Matrix kron(const Matrix& a, const Matrix& b);

// Lift a single-qubit operator onto `site` of an n-qubit register.
Matrix embed(const Matrix& local, int site, int n_qubits);

// Basis vector of the product state; bits[q] = 0 for up, 1 for down.
Vector product_state(const std::vector<int>& bits);

} // namespace ops

struct PhysicalityReport {
    double hermiticity_error{0.0};
    double trace_error{0.0};
    double min_eigenvalue{0.0};

    bool ok(const NumericalSettings& s = default_settings()) const {
        return hermiticity_error <= s.hermiticity_tol && trace_error <= s.trace_tol &&
               min_eigenvalue >= -s.positivity_tol;
    }
};

PhysicalityReport check_physical(const Matrix& m);

// Immutable qubit-register density matrix. Construction validates hermiticity,
// unit trace and positivity against NumericalSettings.
class DensityMatrix {
public:
    static DensityMatrix from_matrix(Matrix m, const NumericalSettings& s = default_settings());
    static DensityMatrix from_pure(const Vector& psi);
    static DensityMatrix maximally_mixed(int n_qubits);

    const Matrix& matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    int n_qubits() const noexcept { return n_qubits_; }
    std::vector<int> local_dims() const { return std::vector<int>(n_qubits_, 2); }

    complex operator()(int i, int j) const { return m_(i, j); }
    double purity() const;

private:
    DensityMatrix(Matrix m, int n_qubits) : m_(std::move(m)), n_qubits_(n_qubits) {}

    Matrix m_;
    int n_qubits_;
};

// Number of qubits for a 2^n dimension; throws ParameterError otherwise.
int qubits_for_dim(Eigen::Index dim);

// Transpose the listed qubits' indices. Involution; preserves the trace.
Matrix partial_transpose(const Matrix& m, const std::vector<int>& subsystem);
Matrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& subsystem);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Ascending real spectrum of (m + m^dagger)/2. Throws NumericalError if m is not
// Hermitian within s.eig_hermiticity_tol.
std::vector<double> hermitian_eigenvalues(const Matrix& m,
                                          const NumericalSettings& s = default_settings());

double trace_norm(const Matrix& m, const NumericalSettings& s = default_settings());

// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int dim);

// Unitary permutation of qubit labels: qubit q of the input becomes qubit perm[q].
Matrix qubit_permutation(const std::vector<int>& perm);

double frobenius_distance(const Matrix& a, const Matrix& b);
double max_abs_difference(const Matrix& a, const Matrix& b);

} // namespace spinent
