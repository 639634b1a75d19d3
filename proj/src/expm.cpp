// expm.cpp — Scaling-and-squaring matrix exponential

#include "spinent/expm.hpp"

#include <array>
#include <cmath>

#include <Eigen/LU>

#include "spinent/errors.hpp"

namespace spinent {

namespace {

double one_norm(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Pade numerator/denominator pieces: exp(A) ~ (V - U)^{-1} (V + U).
struct PadeTerms {
    Matrix u;
    Matrix v;
};

template <std::size_t N>
PadeTerms pade_low(const Matrix& a, const std::array<double, N>& b) {
    const Eigen::Index n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    Matrix odd = b[1] * id;
    Matrix even = b[0] * id;
    Matrix power = id;
    for (std::size_t k = 2; k < N; k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < N) odd += b[k + 1] * power;
    }
    return {a * odd, even};
}

PadeTerms pade13(const Matrix& a) {
    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    const Eigen::Index n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                           b[3] * a2 + b[1] * id;
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                     b[2] * a2 + b[0] * id;
    return {a * u_inner, v};
}

} // namespace

Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols()) throw ParameterError("expm: matrix must be square");
    if (a.size() == 0) return a;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!std::isfinite(a.data()[i].real()) || !std::isfinite(a.data()[i].imag()))
            throw NumericalError("expm: non-finite matrix entry");

    static constexpr double theta3 = 1.495585217958292e-2;
    static constexpr double theta5 = 2.539398330063230e-1;
    static constexpr double theta7 = 9.504178996162932e-1;
    static constexpr double theta9 = 2.097847961257068e+0;
    static constexpr double theta13 = 5.371920351148152e+0;

    const double norm = one_norm(a);
    PadeTerms t;
    int squarings = 0;
    if (norm <= theta3) {
        t = pade_low(a, std::array<double, 4>{120.0, 60.0, 12.0, 1.0});
    } else if (norm <= theta5) {
        t = pade_low(a, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
    } else if (norm <= theta7) {
        t = pade_low(a, std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                               25200.0, 1512.0, 56.0, 1.0});
    } else if (norm <= theta9) {
        t = pade_low(a, std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0,
                                                302702400.0, 30270240.0, 2162160.0, 110880.0,
                                                3960.0, 90.0, 1.0});
    } else {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
        t = pade13(a / std::ldexp(1.0, squarings));
    }

    Matrix r = (t.v - t.u).partialPivLu().solve(t.v + t.u);
    for (int k = 0; k < squarings; ++k) r = r * r;
    return r;
}

} // namespace spinent
