#pragma once

#include "plasmode/solution.hpp"

namespace plasmode {

// Absorbed energy of the driving field in the slab, dimensionless part:
//   Q1 = (1/2) int_{-1}^{1} e(x) dx,   Q0 = -Im Q1 >= 0.
// Three independent routes must agree:
//   closed:     Q1 = lambda1/lambda_inf + 2 E0 (eta0/w0) sinh(w0/eta0)
//                    + [(lambda1 - lambda_inf A~/2) J1 + (A~/3) J0] / w0
//   quadrature: continuum term integrated directly as int eta E(eta) sinh(w0/eta) deta
//   spatial:    (1/2) int e(x) dx through the reconstructed field profile.
struct AbsorptionResult {
    Complex Q1_closed{};
    Complex Q1_quadrature{};
    Complex Q1_spatial{};
    double Q0 = 0.0;              // -Im Q1_closed
    std::size_t series_terms = 0; // residue-series terms consumed
    double agreement = 0.0;       // max pairwise relative deviation
};

// Residue form of J1 = (1/2c) int eta^3 tanh(w0/eta)/(lambda+ lambda-) deta:
//   -w0/lambda_inf + 2 eta0^2 tanh(w0/eta0)/(lambda'(eta0)(eta0^2-eta1^2))
//   + (eta1/lambda1) tanh(w0/eta1)
//   - (1/w0) sum_k t_k^4 / (lambda(t_k)(t_k^2 - eta1^2)),
// with t_k = 2 w0 i / (pi (2k+1)) the zeros of cosh(w0/z).  The eta0 term
// drops in D-.
struct J1SeriesResult {
    Complex value{};
    std::size_t terms = 0;
};

J1SeriesResult J1_series(const DerivedConstants& dc, std::optional<Complex> eta0,
                         double tol);

// Direct quadrature of the same integral.
Complex J1_absorb_quadrature(const DerivedConstants& dc, double tol);

// J0 = (1/2c) int_{-1}^{1} eta^2 T1(eta) tanh(w0/eta)/(lambda+ lambda-) deta;
// no residue form exists (T1 does not continue analytically off the axis).
Complex J0_quadrature(const DerivedConstants& dc, double tol);

// All three routes.  with_spatial=false skips the (expensive) field
// reconstruction and reports agreement over the remaining pair.
// A negative Q0 is a convention failure and throws ConvergenceError.
AbsorptionResult compute_absorption(const SolutionCoefficients& sol,
                                    bool with_spatial = true);

}  // namespace plasmode
