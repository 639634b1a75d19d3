// linalg.cpp — Dense complex linear algebra and qubit-register primitives

#include "spinent/linalg.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinent/errors.hpp"

namespace spinent {

namespace ops {

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, complex(0.0, -1.0),
         complex(0.0, 1.0), 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix embed(const Matrix& local, int site, int n_qubits) {
    if (site < 0 || site >= n_qubits)
        throw ParameterError("embed: site " + std::to_string(site) + " out of range");
    if (local.rows() != 2 || local.cols() != 2)
        throw ParameterError("embed: local operator must be 2x2");
    const int left = 1 << site;
    const int right = 1 << (n_qubits - site - 1);
    return kron(kron(identity(left), local), identity(right));
}

Vector product_state(const std::vector<int>& bits) {
    int index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw ParameterError("product_state: bits must be 0 or 1");
        index = (index << 1) | b;
    }
    Vector v = Vector::Zero(1 << bits.size());
    v(index) = 1.0;
    return v;
}

} // namespace ops

int qubits_for_dim(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    if (dim < 2 || (Eigen::Index{1} << n) != dim)
        throw ParameterError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
    return n;
}

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

} // namespace

PhysicalityReport check_physical(const Matrix& m) {
    PhysicalityReport r;
    r.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    r.trace_error = std::abs(m.trace() - complex(1.0, 0.0));
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    return r;
}

DensityMatrix DensityMatrix::from_matrix(Matrix m, const NumericalSettings& s) {
    if (m.rows() != m.cols()) throw ParameterError("density matrix must be square");
    const int n = qubits_for_dim(m.rows());
    const PhysicalityReport r = check_physical(m);
    if (r.hermiticity_error > s.hermiticity_tol)
        throw NumericalError("density matrix not Hermitian: error " +
                             sci(r.hermiticity_error));
    if (r.trace_error > s.trace_tol)
        throw NumericalError("density matrix trace deviates from 1 by " +
                             sci(r.trace_error));
    if (r.min_eigenvalue < -s.positivity_tol)
        throw NumericalError("density matrix not positive: min eigenvalue " +
                             sci(r.min_eigenvalue));
    return DensityMatrix(std::move(m), n);
}

DensityMatrix DensityMatrix::from_pure(const Vector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) throw ParameterError("from_pure: zero state vector");
    const Vector u = psi / norm;
    return from_matrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    if (n_qubits < 1) throw ParameterError("maximally_mixed: need at least one qubit");
    const int d = 1 << n_qubits;
    return DensityMatrix(ops::identity(d) / static_cast<double>(d), n_qubits);
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

namespace {

int subsystem_mask(const std::vector<int>& subsystem, int n_qubits) {
    int mask = 0;
    for (int q : subsystem) {
        if (q < 0 || q >= n_qubits)
            throw ParameterError("subsystem index " + std::to_string(q) + " out of range for " +
                                 std::to_string(n_qubits) + " qubits");
        mask |= 1 << (n_qubits - 1 - q);
    }
    return mask;
}

} // namespace

Matrix partial_transpose(const Matrix& m, const std::vector<int>& subsystem) {
    if (m.rows() != m.cols()) throw ParameterError("partial_transpose: matrix must be square");
    const int n = qubits_for_dim(m.rows());
    const int mask = subsystem_mask(subsystem, n);
    const int d = static_cast<int>(m.rows());
    Matrix out(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const int ii = (i & ~mask) | (j & mask);
            const int jj = (j & ~mask) | (i & mask);
            out(i, j) = m(ii, jj);
        }
    }
    return out;
}

Matrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& subsystem) {
    return partial_transpose(rho.matrix(), subsystem);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    if (keep.empty()) throw ParameterError("partial_trace: keep set is empty");
    const int n = rho.n_qubits();
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw ParameterError("partial_trace: duplicate qubit in keep set");
    subsystem_mask(kept, n);  // range check

    std::vector<int> traced;
    for (int q = 0; q < n; ++q)
        if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

    const int k = static_cast<int>(kept.size());
    const int dk = 1 << k;
    const int de = 1 << traced.size();

    // Full-register index from kept-bits `a` and traced-bits `e`.
    auto compose = [&](int a, int e) {
        int idx = 0;
        for (int p = 0; p < k; ++p)
            if ((a >> (k - 1 - p)) & 1) idx |= 1 << (n - 1 - kept[p]);
        const int t = static_cast<int>(traced.size());
        for (int p = 0; p < t; ++p)
            if ((e >> (t - 1 - p)) & 1) idx |= 1 << (n - 1 - traced[p]);
        return idx;
    };

    Matrix out = Matrix::Zero(dk, dk);
    for (int a = 0; a < dk; ++a)
        for (int b = 0; b < dk; ++b)
            for (int e = 0; e < de; ++e) out(a, b) += rho(compose(a, e), compose(b, e));
    return DensityMatrix::from_matrix(std::move(out));
}

std::vector<double> hermitian_eigenvalues(const Matrix& m, const NumericalSettings& s) {
    if (m.rows() != m.cols()) throw ParameterError("hermitian_eigenvalues: matrix must be square");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > s.eig_hermiticity_tol)
        throw NumericalError("hermitian_eigenvalues: matrix not Hermitian (error " +
                             std::to_string(herm) + ")");
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("hermitian_eigenvalues: no convergence");
    const Eigen::VectorXd& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double trace_norm(const Matrix& m, const NumericalSettings& s) {
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(m, s)) sum += std::abs(lambda);
    return sum;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim)
        throw ParameterError("unvec: vector length does not match dim^2");
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix qubit_permutation(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int q = 0; q < n; ++q)
        if (sorted[q] != q) throw ParameterError("qubit_permutation: not a permutation");
    const int d = 1 << n;
    Matrix p = Matrix::Zero(d, d);
    for (int in = 0; in < d; ++in) {
        int out = 0;
        for (int q = 0; q < n; ++q)
            if ((in >> (n - 1 - q)) & 1) out |= 1 << (n - 1 - perm[q]);
        p(out, in) = 1.0;
    }
    return p;
}

double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

double max_abs_difference(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace spinent
