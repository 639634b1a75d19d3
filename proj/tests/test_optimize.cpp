#include "doctest.h"

#include <cmath>
#include <vector>

#include "spinent/errors.hpp"
#include "spinent/optimize.hpp"
#include "spinent/parallel.hpp"

using namespace spinent;

TEST_CASE("bisect_predicate brackets the flip point") {
    const Bracket b = bisect_predicate([](double x) { return x > std::sqrt(2.0); }, 0.0, 3.0, 1e-10);
    CHECK(b.width() <= 1e-10);
    CHECK(b.lo <= std::sqrt(2.0));
    CHECK(b.hi >= std::sqrt(2.0));
    CHECK_THROWS_AS(bisect_predicate([](double x) { return x > 5.0; }, 0.0, 3.0, 1e-6), BracketError);
}

TEST_CASE("golden_section_maximize on a smooth unimodal function") {
    int calls = 0;
    auto f = [&](double x) {
        ++calls;
        return -(x - 0.7) * (x - 0.7) + std::sin(x) * 0.01;
    };
    const Bracket b = golden_section_maximize(f, 0.0, 2.0, 1e-8);
    // Stationary point of -(x-0.7)^2 + 0.01 sin x: 2(x-0.7) = 0.01 cos x.
    const double x = b.mid();
    CHECK(std::abs(2.0 * (x - 0.7) - 0.01 * std::cos(x)) < 1e-7);
    CHECK(calls < 60);
}

TEST_CASE("parallel_map is ordered and deterministic") {
    auto f = [](std::size_t i) { return std::sin(static_cast<double>(i) * 0.37); };
    const auto serial = parallel_map(200, 1, f);
    const auto parallel = parallel_map(200, 4, f);
    CHECK(serial == parallel);
    CHECK_THROWS_AS(parallel_map(10, 3,
                                 [](std::size_t i) -> int {
                                     if (i == 7) throw ParameterError("boom");
                                     return 0;
                                 }),
                    ParameterError);
}
