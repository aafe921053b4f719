#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "effidx/error.hpp"

namespace effidx::optimize {

struct Minimum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search for a unimodal f on [lo, hi], stopping once the
/// bracket is narrower than tol.
template <class F>
Minimum golden_section(F&& f, double lo, double hi, double tol, std::size_t max_iter = 200) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    std::size_t iter = 0;
    while (b - a > tol) {
        if (++iter > max_iter) {
            throw Error(ErrorKind::NonConvergence, "golden-section search exceeded iteration budget");
        }
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

/// Coarse grid scan to locate the bracketing cell, then golden-section
/// refinement inside it. Grid end points are candidates in their own right,
/// so a minimum on the boundary is returned exactly.
template <class F>
Minimum grid_then_golden(F&& f, double lo, double hi, std::size_t grid_points, double tol) {
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid_points; ++k) {
        const double v = f(lo + step * static_cast<double>(k));
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    if (!std::isfinite(best_value)) {
        throw Error(ErrorKind::NonConvergence, "objective is not finite on the search grid");
    }
    const double a = lo + step * static_cast<double>(best == 0 ? 0 : best - 1);
    const double b = lo + step * static_cast<double>(best + 1 >= grid_points ? grid_points - 1 : best + 1);
    Minimum refined = golden_section(f, a, b, tol);
    Minimum grid_best{lo + step * static_cast<double>(best), best_value};
    return refined.value <= grid_best.value ? refined : grid_best;
}

}  // namespace effidx::optimize
