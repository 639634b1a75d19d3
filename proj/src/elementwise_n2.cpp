// elementwise_n2.cpp — Two-qubit master equation expanded into 16 scalar equations
//
// Basis {|uu>, |ud>, |du>, |dd>} indexed 1..4; qubit 1 is the left factor.
// Per-qubit parameters: drive O1, O2; detuning d1, d2; decay G1, G2; shared nbar n.
// Each coherence rho_ij decays at the sum of the anti-Hermitian weights of |i> and |j>:
// a qubit in |u> contributes G(n+1), a qubit in |d> contributes G n.

#include "spinent/dynamics.hpp"

#include "spinent/errors.hpp"

namespace spinent {

Matrix elementwise_rhs_n2(const SystemParams& p, const Matrix& rho) {
    if (p.n_qubits != 2) throw ParameterError("elementwise_rhs_n2: requires n_qubits = 2");
    if (rho.rows() != 4 || rho.cols() != 4)
        throw ParameterError("elementwise_rhs_n2: state must be 4x4");

    const complex i{0.0, 1.0};
    const double O1 = p.omega[0], O2 = p.omega[1];
    const double d1 = p.delta[0], d2 = p.delta[1];
    const double G1 = p.gamma[0], G2 = p.gamma[1];
    const double J = p.coupling_j;
    const double n = p.nbar;

    auto r = [&](int a, int b) { return rho(a - 1, b - 1); };

    // Pairwise decay constants of the coherences.
    const double g_uu_ud = 2 * G1 * (n + 1) + G2 * (2 * n + 1);  // rho_12, rho_21
    const double g_uu_du = G1 * (2 * n + 1) + 2 * G2 * (n + 1);  // rho_13, rho_31
    const double g_flip2 = G1 * (2 * n + 1) + G2 * (2 * n + 1);  // rho_14, rho_23, rho_32, rho_41
    const double g_ud_dd = G1 * (2 * n + 1) + 2 * G2 * n;        // rho_24, rho_42
    const double g_du_dd = 2 * G1 * n + G2 * (2 * n + 1);        // rho_34, rho_43

    Matrix d(4, 4);
    d(0, 0) = -2 * (G1 + G2) * (n + 1) * r(1, 1) + 2 * G2 * n * r(2, 2) + 2 * G1 * n * r(3, 3)
              + i * O2 * (r(1, 2) - r(2, 1)) + i * O1 * (r(1, 3) - r(3, 1));

    d(0, 1) = i * O2 * r(1, 1) - (g_uu_ud + i * (d2 - 2 * J)) * r(1, 2) + i * O1 * r(1, 4)
              - i * O2 * r(2, 2) - i * O1 * r(3, 2) + 2 * G1 * n * r(3, 4);

    d(0, 2) = i * O1 * r(1, 1) - (g_uu_du + i * (d1 - 2 * J)) * r(1, 3) + i * O2 * r(1, 4)
              - i * O2 * r(2, 3) + 2 * G2 * n * r(2, 4) - i * O1 * r(3, 3);

    d(0, 3) = i * O1 * r(1, 2) + i * O2 * r(1, 3) - (g_flip2 + i * (d1 + d2)) * r(1, 4)
              - i * O2 * r(2, 4) - i * O1 * r(3, 4);

    d(1, 0) = -i * O2 * r(1, 1) - (g_uu_ud - i * (d2 - 2 * J)) * r(2, 1) + i * O2 * r(2, 2)
              + i * O1 * r(2, 3) - i * O1 * r(4, 1) + 2 * G1 * n * r(4, 3);

    d(1, 1) = 2 * G2 * (n + 1) * r(1, 1) - 2 * (G1 * (n + 1) + G2 * n) * r(2, 2)
              + 2 * G1 * n * r(4, 4) + i * O2 * (r(2, 1) - r(1, 2)) + i * O1 * (r(2, 4) - r(4, 2));

    d(1, 2) = -i * O2 * r(1, 3) + i * O1 * r(2, 1) - (g_flip2 + i * (d1 - d2)) * r(2, 3)
              + i * O2 * r(2, 4) - i * O1 * r(4, 3);

    d(1, 3) = 2 * G2 * (n + 1) * r(1, 3) - i * O2 * r(1, 4) + i * O1 * r(2, 2) + i * O2 * r(2, 3)
              - (g_ud_dd + i * (d1 + 2 * J)) * r(2, 4) - i * O1 * r(4, 4);

    d(2, 0) = -i * O1 * r(1, 1) - (g_uu_du - i * (d1 - 2 * J)) * r(3, 1) + i * O2 * r(3, 2)
              + i * O1 * r(3, 3) - i * O2 * r(4, 1) + 2 * G2 * n * r(4, 2);

    d(2, 1) = -i * O1 * r(1, 2) + i * O2 * r(3, 1) - (g_flip2 - i * (d1 - d2)) * r(3, 2)
              + i * O1 * r(3, 4) - i * O2 * r(4, 2);

    d(2, 2) = 2 * G1 * (n + 1) * r(1, 1) - 2 * (G1 * n + G2 * (n + 1)) * r(3, 3)
              + 2 * G2 * n * r(4, 4) + i * O1 * (r(3, 1) - r(1, 3)) + i * O2 * (r(3, 4) - r(4, 3));

    d(2, 3) = 2 * G1 * (n + 1) * r(1, 2) - i * O1 * r(1, 4) + i * O1 * r(3, 2) + i * O2 * r(3, 3)
              - (g_du_dd + i * (d2 + 2 * J)) * r(3, 4) - i * O2 * r(4, 4);

    d(3, 0) = -i * O1 * r(2, 1) - i * O2 * r(3, 1) - (g_flip2 - i * (d1 + d2)) * r(4, 1)
              + i * O2 * r(4, 2) + i * O1 * r(4, 3);

    d(3, 1) = -i * O1 * r(2, 2) + 2 * G2 * (n + 1) * r(3, 1) - i * O2 * r(3, 2) + i * O2 * r(4, 1)
              - (g_ud_dd - i * (d1 + 2 * J)) * r(4, 2) + i * O1 * r(4, 4);

    d(3, 2) = 2 * G1 * (n + 1) * r(2, 1) - i * O1 * r(2, 3) - i * O2 * r(3, 3) + i * O1 * r(4, 1)
              - (g_du_dd - i * (d2 + 2 * J)) * r(4, 3) + i * O2 * r(4, 4);

    d(3, 3) = 2 * G1 * (n + 1) * r(2, 2) + 2 * G2 * (n + 1) * r(3, 3) - 2 * n * (G1 + G2) * r(4, 4)
              + i * O1 * (r(4, 2) - r(2, 4)) + i * O2 * (r(4, 3) - r(3, 4));
    return d;
}

} // namespace spinent
