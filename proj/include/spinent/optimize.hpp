// optimize.hpp — Scalar bracketing: predicate bisection and golden-section maximization

#pragma once

#include <cmath>
#include <utility>

#include "spinent/errors.hpp"

namespace spinent {

struct Bracket {
    double lo;
    double hi;
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

// Shrinks [lo, hi] around the point where `pred` flips. Requires pred(lo) != pred(hi).
template <class Pred>
Bracket bisect_predicate(Pred&& pred, double lo, double hi, double tol) {
    if (!(lo < hi)) throw BracketError("bisect_predicate: need lo < hi");
    if (!(tol > 0.0)) throw ParameterError("bisect_predicate: tol must be positive");
    const bool at_lo = pred(lo);
    if (at_lo == pred(hi)) throw BracketError("bisect_predicate: bracket does not straddle a crossing");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid) == at_lo)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
Bracket golden_section_maximize(F&& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw BracketError("golden_section_maximize: need lo < hi");
    if (!(tol > 0.0)) throw ParameterError("golden_section_maximize: tol must be positive");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return {lo, hi};
}

} // namespace spinent
