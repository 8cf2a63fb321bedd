#pragma once

#include "plasmode/params.hpp"
#include "plasmode/spectrum.hpp"

#include <optional>
#include <vector>

namespace plasmode {

struct SolveOptions {
    double tol_coeff = 1e-10;  // moment/coefficient integrals
    double tol_field = 1e-8;   // field-profile reconstruction
    double tol_series = 1e-15; // residue series truncation
};

// Solved expansion of the boundary-value problem.  The electric field is
//   e(x) = E_inf + 2 E0 cosh(w0 x / eta0) + int_{-1}^{1} cosh(w0 x / eta) E(eta) deta
// and the distribution at the wall
//   h(-1,mu) = (1/w0) [ E_inf mu + E0-pair of F(+-eta0, mu)
//                       + int F(eta,mu) e^{w0/eta} E(eta) deta ],
// with the continuum coefficient
//   E(eta) = [lambda1 eta^2 + (A~/6)(2 eta T1(eta) - 3 lambda_inf eta^2)]
//            / (2 c cosh(w0/eta) lambda+ lambda-).
// Normalizations fixed here: A~ = w0 A1 is the single accommodation unknown,
// the external field amplitude is 1 (e(+-1) = 1), and the continuum terms of
// e(x) and h carry unit weight against E(eta).
struct SolutionCoefficients {
    DerivedConstants dc;
    SpectrumResult spectrum;
    SolveOptions opts;

    Complex E_inf;     // Drude amplitude, lambda1/lambda_inf
    Complex A1_tilde;  // accommodation constant A~ = w0 A1; 0 for alpha_p = 0
    Complex E0;        // Debye amplitude; 0 in D-
    Complex C1;        // (E_inf - A~/2) lambda_inf
    Complex debye_pair;// E0 cosh(w0/eta0), finite form used by the kernels

    // Continuum coefficient E(eta), eta in (-1,1)\{0}.  For |Re(w0)/eta|
    // beyond the cosh range the analytically-zero limit is returned and
    // *cosh_suppressed (if given) is set.
    Complex continuum(double eta, bool* cosh_suppressed = nullptr) const;

    // cosh(w0/eta) E(eta): the cosh-free continuum weight entering every
    // integral kernel; bounded on (-1,1).
    Complex continuum_weight(double eta) const;
};

SolutionCoefficients solve(const PlasmaParams& p, const SolveOptions& opts = {});

// Moment machinery behind the accommodation constant:
//   beta(eta) = m(eta) e^{w0/eta} / (lambda+ lambda- cosh(w0/eta)),
//   I0 = (1/c) int eta^2 beta,  I1 = (1/c) int eta T1 beta,
//   beta0 = [m0(eta0) e^{w0/eta0} + m0(-eta0) e^{-w0/eta0}]
//           / (lambda'(eta0)(eta0^2 - eta1^2) cosh(w0/eta0)).
struct MomentIntegrals {
    Complex I0;
    Complex I1;
    Complex beta0;  // 0 in D-
};

MomentIntegrals moment_integrals(const DerivedConstants& dc,
                                 std::optional<Complex> eta0, double tol);

// Accommodation constant A~ from the wall moment equation
//   lambda1 [1/(36 lambda_inf) - eta0 beta0 + I0/2]
//   + A~ [ -(T(eta0)/3 - lambda_inf eta0/2) beta0 + I1/6 - lambda_inf I0/4
//          + (1 - alpha_p)/(36 alpha_p) ] = 0
// (the eta0/beta0 terms drop in D-).  alpha_p = 0 short-circuits to 0.
Complex compute_A1(const DerivedConstants& dc, std::optional<Complex> eta0,
                   double alpha_p, double tol);

// Debye amplitude from regularity of the jump-problem solution at eta0:
//   E0 = -[lambda1 eta0 + A~ (T(eta0)/3 - lambda_inf eta0/2)]
//        / (lambda'(eta0)(eta0^2 - eta1^2) cosh(w0/eta0)).
Complex compute_E0(const DerivedConstants& dc, Complex eta0, Complex A1_tilde);

// Contour-integration constants of the field condition and their direct
// quadrature twins:
//   J1 = (1/2c) int_{-1}^{1} eta^2 / (lambda+ lambda-) deta
//      = -1/lambda_inf + 1/lambda1 + 2 eta0/((eta0^2-eta1^2) lambda'(eta0)),
//   J2 = (1/2c) int_{-1}^{1} eta T1 / (lambda+ lambda-) deta
//      = 1/(2 c lambda1) + 2 T(eta0)/((eta0^2-eta1^2) lambda'(eta0)).
Complex J1_field_residue(const DerivedConstants& dc, std::optional<Complex> eta0);
Complex J2_residue(const DerivedConstants& dc, std::optional<Complex> eta0);
Complex J1_field_quadrature(const DerivedConstants& dc, double tol);
Complex J2_quadrature(const DerivedConstants& dc, double tol);

// Jump-problem solution off the cut,
//   M(z) = -E_inf z - E0 phi(eta0,z) cosh(w0/eta0) + (A~/2) z
//          + [(A~/3) T(z) + C1 z] / lambda(z).
Complex M_closed(const SolutionCoefficients& sol, Complex z);

Complex field_at(const SolutionCoefficients& sol, double x);

struct FieldProfile {
    std::vector<double> x;
    std::vector<Complex> e;
    double boundary_residual = 0.0;  // |e(1) - 1|
    double symmetry_residual = 0.0;  // max |e(x) - e(-x)|
};

FieldProfile field_profile(const SolutionCoefficients& sol,
                           const std::vector<double>& x_grid);
FieldProfile field_profile(const SolutionCoefficients& sol, int points);

// Wall distribution h(-1, mu), mu in (-1,1)\{0}; principal-value integral
// plus the explicit delta contribution at eta = mu.
Complex boundary_distribution(const SolutionCoefficients& sol, double mu);

// Independent residuals of everything the solution promises.  Gates are the
// verification thresholds; `pass` is the conjunction.
struct Diagnostics {
    double field_boundary = 0.0;     // |e(1) - 1|                     < 1e-6
    double field_symmetry = 0.0;     // max |e(x)-e(-x)|               < 1e-8
    double nonflow = 0.0;            // |int mu h(-1,mu) dmu|          < 1e-6
    double bc_fit = 0.0;             // wall-jump linear fit residual  < 1e-5
    double bc_coeff_dev = 0.0;       // fitted slope vs A~/w0 (relative)
    double moment_eq = 0.0;          // moment-equation residual       < 1e-8
    double moment_roundtrip = 0.0;   // wall-moment quadrature vs A~   < 1e-6
    double pole_bracket = 0.0;       // M regularity bracket at eta0   < 1e-10
    double pole_probe = 0.0;         // |M| growth ratio near eta0 (<~ 1)
    double m_tail = 0.0;             // max |M(z)/z| on |z| = 1e3      < 1e-6
    double j1_dev = 0.0;             // J1 residue vs quadrature (rel) < 1e-7
    double j2_dev = 0.0;             // J2 residue vs quadrature (rel) < 1e-7
    double jump_dev = 0.0;           // PV-quadrature M(mu) vs closed  < 1e-8
    double dedx_dev = 0.0;           // de/dx vs density moment        < 1e-5
    bool pass = false;
};

Diagnostics run_diagnostics(const SolutionCoefficients& sol);

}  // namespace plasmode
