// ode.hpp — Adaptive Dormand-Prince 5(4) integrator for complex state vectors

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "spinent/errors.hpp"
#include "spinent/linalg.hpp"

namespace spinent {

struct IntegratorOptions {
    double rtol{1e-8};
    double atol{1e-10};
    double initial_step{0.0};  // 0 selects a step from the local derivative scale
    double min_step{1e-12};
    double max_step{std::numeric_limits<double>::infinity()};
    long max_steps{50'000'000};
};

struct StepStats {
    long accepted{0};
    long rejected{0};
    double max_error_estimate{0.0};  // largest normalized local error of an accepted step
};

namespace detail {

inline double scaled_rms(const Vector& err, const Vector& y0, const Vector& y1,
                         const IntegratorOptions& o) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = o.atol + o.rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double r = std::abs(err(i)) / sc;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

} // namespace detail

// Integrates y' = f(t, y) from sample_times.front() through every sample time,
// landing exactly on each. observe(index, t, y) is called at every sample
// including the first. Throws StiffnessError when the step size underflows.
template <class Rhs, class Observer>
StepStats integrate_dopri5(Rhs&& f, Vector y, const std::vector<double>& sample_times,
                           const IntegratorOptions& o, Observer&& observe) {
    // Dormand & Prince (1980) tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    StepStats stats;
    if (sample_times.empty()) return stats;
    for (std::size_t k = 1; k < sample_times.size(); ++k)
        if (!(sample_times[k] > sample_times[k - 1]))
            throw ParameterError("integrate_dopri5: sample times must be strictly increasing");

    double t = sample_times.front();
    observe(std::size_t{0}, t, y);
    if (sample_times.size() == 1) return stats;

    Vector k1 = f(t, y);
    double h = o.initial_step;
    if (!(h > 0.0)) {
        // Hairer, Norsett & Wanner, starting step heuristic.
        Vector zero = Vector::Zero(y.size());
        const double d0 = detail::scaled_rms(y, y, zero, o);
        const double d1 = detail::scaled_rms(k1, y, zero, o);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        const Vector y1 = y + h0 * k1;
        const Vector k1b = f(t + h0, y1);
        const double d2 = detail::scaled_rms(k1b - k1, y, zero, o) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5);
        h = std::min(100 * h0, h1);
    }
    h = std::min(h, o.max_step);

    long steps = 0;
    for (std::size_t next = 1; next < sample_times.size(); ++next) {
        const double target = sample_times[next];
        while (t < target) {
            if (++steps > o.max_steps)
                throw StiffnessError("integrate_dopri5: step budget exhausted at t = " +
                                         std::to_string(t),
                                     t);
            const bool clipped = t + h >= target;
            const double step = clipped ? target - t : h;
            if (step < o.min_step * std::max(1.0, std::abs(t)) && !clipped)
                throw StiffnessError("integrate_dopri5: step size underflow at t = " +
                                         std::to_string(t),
                                     t);

            const Vector k2 = f(t + c2 * step, y + step * (a21 * k1));
            const Vector k3 = f(t + c3 * step, y + step * (a31 * k1 + a32 * k2));
            const Vector k4 = f(t + c4 * step, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
            const Vector k5 =
                f(t + c5 * step, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Vector k6 = f(t + step, y + step * (a61 * k1 + a62 * k2 + a63 * k3 +
                                                       a64 * k4 + a65 * k5));
            Vector y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            Vector k7 = f(t + step, y_new);
            const Vector err =
                step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double en = detail::scaled_rms(err, y, y_new, o);
            if (!std::isfinite(en))
                throw StiffnessError("integrate_dopri5: non-finite error estimate at t = " +
                                         std::to_string(t),
                                     t);

            if (en <= 1.0) {
                ++stats.accepted;
                stats.max_error_estimate = std::max(stats.max_error_estimate, en);
                t = clipped ? target : t + step;
                y = std::move(y_new);
                k1 = std::move(k7);
                const double fac = en == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.2)));
                // A clipped step says nothing about the natural step size.
                if (!clipped || step >= h) h = std::min(o.max_step, h * fac);
            } else {
                ++stats.rejected;
                h = step * std::max(0.2, 0.9 * std::pow(en, -0.2));
                if (h < o.min_step * std::max(1.0, std::abs(t)))
                    throw StiffnessError("integrate_dopri5: step size underflow at t = " +
                                             std::to_string(t),
                                         t);
            }
        }
        observe(next, t, y);
    }
    return stats;
}

} // namespace spinent
