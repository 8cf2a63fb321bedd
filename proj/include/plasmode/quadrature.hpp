#pragma once

#include "plasmode/params.hpp"

#include <cstddef>
#include <functional>

namespace plasmode {

struct QuadratureResult {
    Complex value{};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

using Integrand = std::function<Complex(double)>;

struct QuadratureOptions {
    double tol = 1e-10;               // error_estimate <= tol * max(1, |value|)
    std::size_t max_panels = 1 << 18; // subdivision budget
    bool split_at_zero = true;        // cut integrands are only piecewise smooth at 0
};

// Globally adaptive Gauss-Kronrod 7/15 over (a, b).  Endpoints are never
// evaluated, so integrable log endpoints are fine.  On budget exhaustion the
// partial value and its estimate are returned with converged = false.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureOptions& opts = {});

// Same, but throws ConvergenceError instead of returning a partial result.
Complex integrate_or_throw(const Integrand& f, double a, double b,
                           const QuadratureOptions& opts = {});

// Cauchy principal value of int_a^b f, where f carries a simple pole at s
// (supplied by the caller).  Symmetric excision around s with Richardson
// extrapolation in the excision radius.  Poles closer than 1e-8 to an
// endpoint are rejected.
QuadratureResult integrate_pv(const Integrand& f, double s, double a, double b,
                              const QuadratureOptions& opts = {});

struct SeriesOptions {
    double tol = 1e-15;
    int max_terms = 2000000;
};

struct SeriesResult {
    Complex value{};
    int terms = 0;
    bool converged = true;
};

// Sum over all integers of a sequence whose terms pair up under
// k -> -(k+1); returns 2 * sum_{k>=0} term(k), truncated once three
// consecutive terms fall below tol * |partial sum|.
SeriesResult sum_symmetric_series(const std::function<Complex(int)>& term,
                                  const SeriesOptions& opts = {});

}  // namespace plasmode
