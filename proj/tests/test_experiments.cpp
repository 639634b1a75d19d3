#include "doctest.h"

#include <cmath>

#include "spinent/errors.hpp"
#include "spinent/experiments.hpp"
#include "spinent/steady.hpp"

using namespace spinent;

namespace {

SystemParams reference(double gamma = 0.8, double nbar = 0.0) {
    return SystemParams::uniform(2, 1.0, 0.0, 1.5, gamma, nbar);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = a + (b - a) * k / (n - 1);
    g.back() = b;
    return g;
}

} // namespace

TEST_CASE("axis names round-trip") {
    for (Axis a : {Axis::gamma, Axis::coupling_j, Axis::delta, Axis::nbar})
        CHECK(parse_axis(axis_name(a)) == a);
    CHECK_THROWS_AS(parse_axis("omega"), ParameterError);
    CHECK(std::string(axis_label(Axis::gamma)) == "gamma[Omega]");
    const SystemParams p = with_axis(reference(), Axis::delta, 0.4);
    CHECK(p.delta == std::vector<double>{0.4, 0.4});
}

TEST_CASE("gamma sweep: separable below the analytic threshold, one crossing, one maximum") {
    const SweepResult s = sweep_gamma(reference(), linspace(0.05, 3.0, 60));
    REQUIRE(s.all_ok());
    const double gc = analytic_threshold(1.0, 1.5);
    std::size_t first_positive = s.grid.size();
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
        if (s.grid[k] < gc) CHECK(s.points[k].negativity <= s.epsilon);
        if (s.points[k].negativity > s.epsilon && first_positive == s.grid.size()) first_positive = k;
    }
    REQUIRE(first_positive < s.grid.size());
    CHECK(s.grid[first_positive] == doctest::Approx(0.35));

    int thresholds = 0, maxima = 0;
    for (const Marker& m : s.markers) {
        if (m.kind == Marker::Kind::threshold) {
            ++thresholds;
            CHECK(std::abs(m.location - gc) <= m.tolerance);
        } else {
            ++maxima;
            CHECK(std::abs(m.location - 0.9057629) <= m.tolerance);
        }
    }
    CHECK(thresholds == 1);
    CHECK(maxima == 1);
}

TEST_CASE("sweep argument checks") {
    CHECK_THROWS_AS(sweep_gamma(reference(), {}), ParameterError);
    CHECK_THROWS_AS(sweep_gamma(reference(), {0.0, 1.0}), ParameterError);
    CHECK_THROWS_AS(sweep_gamma(reference(), {1.0, 0.5}), ParameterError);
    CHECK_THROWS_AS(sweep_delta(reference(), {0.1, 0.1}), ParameterError);
}

TEST_CASE("failed points are recorded, not thrown") {
    SystemParams closed = reference();
    closed.gamma.assign(2, 0.0);
    const SweepResult s = sweep(closed, Axis::delta, {0.0, 0.5});
    CHECK(!s.all_ok());
    CHECK(!s.points[0].error.empty());
    CHECK(std::isnan(s.points[0].negativity));
}

TEST_CASE("find_gamma_c reproduces Omega^2 / 2J at zero temperature") {
    for (double j : {1.0, 1.5, 2.0}) {
        const SystemParams base = SystemParams::uniform(2, 1.0, 0.0, j, 0.5, 0.0);
        const double gc = find_gamma_c(base, 0.05, 3.0, 1e-6);
        CHECK(std::abs(gc - analytic_threshold(1.0, j)) / analytic_threshold(1.0, j) < 0.02);
        CHECK(std::abs(gc - analytic_threshold(1.0, j)) < 1e-4);
    }
}

TEST_CASE("thermal occupation raises the threshold") {
    // Reference from an independent root finder. The entangled window closes at large Gamma here.
    const double gc = find_gamma_c(reference(0.5, 0.05), 0.05, 0.75, 1e-7);
    CHECK(gc > 1.0 / 3.0);
    CHECK(std::abs(gc - 0.3680715015253042) < 1e-6);
}

TEST_CASE("find_gamma_c bracket checks") {
    CHECK_THROWS_AS(find_gamma_c(reference(), 0.5, 3.0), BracketError);
    CHECK_THROWS_AS(find_gamma_c(reference(), 0.05, 0.2), BracketError);
    CHECK_THROWS_AS(find_gamma_c(reference(), 0.0, 3.0), ParameterError);
}

TEST_CASE("find_gamma_m at the reference point") {
    // Independent reference from a bounded scalar maximizer at tolerance 1e-12.
    const Optimum o = find_gamma_m(reference(), 0.05, 3.0, 1e-7);
    CHECK(std::abs(o.location - 0.9057629070903715) < 1e-5);
    CHECK(std::abs(o.value - 0.09712925384563809) < 1e-10);
    CHECK(o.bracket_lo <= o.location);
    CHECK(o.location <= o.bracket_hi);
    CHECK(o.bracket_hi - o.bracket_lo <= 1e-7);
}

TEST_CASE("find_optimum failure modes") {
    // Entirely separable window.
    CHECK_THROWS_AS(find_gamma_m(reference(), 0.05, 0.3), BracketError);
    // Maximum beyond the upper edge.
    CHECK_THROWS_AS(find_gamma_m(reference(), 0.4, 0.8), BracketError);
    CHECK_THROWS_AS(find_gamma_m(reference(), 0.0, 3.0), ParameterError);
    CHECK_THROWS_AS(find_gamma_m(reference(), 0.05, 3.0, 1e-6, 2), ParameterError);
    // Too hot to entangle anywhere.
    CHECK_THROWS_AS(find_gamma_m(reference(0.8, 0.3), 0.05, 3.0), BracketError);
}

TEST_CASE("find_optimum reports several maxima as ambiguous") {
    // Below threshold the detuning profile has one peak on each side of resonance.
    const SystemParams base = reference(0.8 / 3.0);
    try {
        find_optimum(base, Axis::delta, -2.0, 2.0, 1e-4, 41);
        FAIL("expected AmbiguityError");
    } catch (const AmbiguityError& e) {
        REQUIRE(e.maxima().size() == 2);
        CHECK(e.maxima()[0] < -0.5);
        CHECK(e.maxima()[1] > 0.5);
    }
}

TEST_CASE("border map agrees with one-dimensional sweeps") {
    const std::vector<double> js{1.0, 1.5, 2.0};
    const std::vector<double> gammas = linspace(0.1, 1.5, 8);
    const BorderMap map = border_map(reference(), Axis::coupling_j, js, Axis::gamma, gammas);
    REQUIRE(map.cells.size() == js.size() * gammas.size());
    for (std::size_t i = 0; i < js.size(); ++i) {
        const SweepResult row = sweep_gamma(with_axis(reference(), Axis::coupling_j, js[i]), gammas);
        for (std::size_t j = 0; j < gammas.size(); ++j) {
            CHECK(map.cell(i, j).negativity == row.points[j].negativity);
            CHECK(map.entangled(i, j) == (gammas[j] > analytic_threshold(1.0, js[i])));
        }
    }
    CHECK_THROWS_AS(border_map(reference(), Axis::gamma, gammas, Axis::gamma, gammas), ParameterError);
}

TEST_CASE("threaded evaluation is bitwise deterministic") {
    const std::vector<double> grid = linspace(0.2, 2.0, 12);
    ExperimentOptions one, four;
    four.threads = 4;
    const SweepResult a = sweep_gamma(reference(), grid, one);
    const SweepResult b = sweep_gamma(reference(), grid, four);
    CHECK(a.values() == b.values());
    const BorderMap ma = border_map(reference(), Axis::delta, {0.0, 0.5}, Axis::gamma, grid, one);
    const BorderMap mb = border_map(reference(), Axis::delta, {0.0, 0.5}, Axis::gamma, grid, four);
    for (std::size_t k = 0; k < ma.cells.size(); ++k) CHECK(ma.cells[k].negativity == mb.cells[k].negativity);
}

TEST_CASE("fit_line") {
    const LineFit exact = fit_line({0.0, 1.0, 2.0}, {1.0, 3.0, 5.0});
    CHECK(exact.slope == doctest::Approx(2.0));
    CHECK(exact.intercept == doctest::Approx(1.0));
    CHECK(exact.rms_residual < 1e-14);
    CHECK(exact.points == 3);

    const LineFit noisy = fit_line({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 0.0, 1.0});
    CHECK(noisy.slope == doctest::Approx(0.2));
    CHECK(noisy.rms_residual == doctest::Approx(std::sqrt(0.2)));
    CHECK(noisy.relative_rms == doctest::Approx(std::sqrt(0.2) / 0.5));

    CHECK(std::isnan(fit_line({1.0}, {1.0}).slope));
    CHECK(std::isnan(fit_line({1.0, 1.0}, {1.0, 2.0}).slope));
    CHECK_THROWS_AS(fit_line({1.0}, {1.0, 2.0}), ParameterError);
}

TEST_CASE("optimum versus thermal occupation") {
    const NbarRelation rel = gamma_m_vs_nbar(reference(), {0.0, 0.02, 0.05, 0.3}, 0.05, 3.0, 1e-6);
    REQUIRE(rel.rows.size() == 4);
    CHECK(rel.rows[0].error.empty());
    CHECK(std::abs(rel.rows[1].optimum.location - 0.8478866608619794) < 1e-5);
    CHECK(std::abs(rel.rows[1].optimum.value - 0.07675257623958488) < 1e-10);
    CHECK(std::abs(rel.rows[2].optimum.location - 0.7823448049257001) < 1e-5);
    CHECK(std::abs(rel.rows[2].optimum.value - 0.051617372374559004) < 1e-10);
    CHECK(!rel.rows[3].error.empty());
    CHECK(rel.fit.points == 3);
    CHECK(rel.rows[0].optimum.value > rel.rows[1].optimum.value);
    CHECK(rel.rows[1].optimum.value > rel.rows[2].optimum.value);
}
