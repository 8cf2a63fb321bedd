#include "plasmode/solution.hpp"

#include "plasmode/quadrature.hpp"
#include "plasmode/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace plasmode;

namespace {
const PlasmaParams kP1{0.5, 0.2, 5.0, 0.5};

double rel(Complex a, Complex b) {
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}
}  // namespace

TEST_CASE("Drude amplitude is the closed-form ratio") {
    const SolutionCoefficients sol = solve(kP1);
    CHECK(rel(sol.E_inf * sol.dc.lambda_inf, sol.dc.lambda1) < 1e-15);
    // the companion dispersion function vanishes with lambda at eta0
    CHECK(std::abs(h_disp(*sol.spectrum.eta0, sol.dc)) < 1e-12);
}

TEST_CASE("specular limit of the accommodation constant") {
    // alpha_p = 0 short-circuits
    const SolutionCoefficients s0 = solve({0.5, 0.2, 5.0, 0.0});
    CHECK(std::abs(s0.A1_tilde) == 0.0);

    // E0 reduces to the accommodation-free form
    const DerivedConstants& dc = s0.dc;
    const Complex eta0 = *s0.spectrum.eta0;
    const Complex e0_free =
        -dc.lambda1 * eta0 /
        (lambda_prime(eta0, dc) * (eta0 * eta0 - dc.eta1_sq) * std::cosh(dc.w0 / eta0));
    CHECK(rel(s0.E0, e0_free) < 1e-12);

    // A~(alpha_p)/alpha_p settles to a finite limit
    Complex prev;
    bool first = true;
    for (double a : {1e-2, 1e-4, 1e-6}) {
        const DerivedConstants d = derive({0.5, 0.2, 5.0, a});
        const Complex ratio =
            compute_A1(d, analyze_spectrum(d).eta0, a, 1e-10) / a;
        if (!first) CHECK(std::abs(ratio - prev) / std::abs(ratio) < 0.01);
        prev = ratio;
        first = false;
    }

    // specular wall distribution is even in mu
    for (double mu : {0.25, 0.5, 0.75}) {
        const Complex d =
            boundary_distribution(s0, mu) - boundary_distribution(s0, -mu);
        CHECK(std::abs(d) < 1e-6);
    }
}

TEST_CASE("moment equation round trip") {
    const SolutionCoefficients sol = solve(kP1);
    const Diagnostics d = run_diagnostics(sol);
    CHECK(d.moment_eq < 1e-8);         // defining equation, re-evaluated
    CHECK(d.moment_roundtrip < 1e-6);  // wall-moment quadrature route
    CHECK(d.bc_fit < 1e-5);            // jump shape is linear in (mu - 2/3)
    CHECK(d.bc_coeff_dev < 1e-6);      // with the accommodation slope
    CHECK(d.nonflow < 1e-6);
}

TEST_CASE("continuum coefficient") {
    const SolutionCoefficients sol = solve(kP1);
    const DerivedConstants& dc = sol.dc;

    // evenness in eta
    for (double eta : {0.15, 0.4, 0.77})
        CHECK(rel(sol.continuum(-eta), sol.continuum(eta)) < 1e-13);

    // closed form against its pieces at a sample point
    {
        const double eta = 0.5;
        const Complex t1 = T1_cut(eta, dc);
        const Complex num =
            dc.lambda1 * eta * eta +
            sol.A1_tilde / 6.0 *
                (2.0 * eta * t1 - 3.0 * dc.lambda_inf * eta * eta);
        const Complex expect =
            num / (2.0 * dc.c * std::cosh(dc.w0 / eta) *
                   lambda_pm_product(eta, dc));
        CHECK(rel(sol.continuum(eta), expect) < 1e-13);
    }

    // bounded (vanishing) at the endpoints, suppressed at small eta
    CHECK(std::abs(sol.continuum(1.0 - 1e-9)) < 10.0);
    bool suppressed = false;
    const Complex tiny = sol.continuum(1e-3, &suppressed);
    CHECK(suppressed);
    CHECK(std::abs(tiny) == 0.0);

    CHECK_THROWS_AS(sol.continuum(0.0), EvalDomainError);
    CHECK_THROWS_AS(sol.continuum(1.0), EvalDomainError);
}

TEST_CASE("accommodation-free continuum matches the jump formula") {
    // with A~ = 0 the coefficient is lambda1 eta^2/(2 c cosh lam+ lam-);
    // cross-check against the jump of the closed solution M across the cut
    const SolutionCoefficients sol = solve({0.5, 0.2, 5.0, 0.0});
    const DerivedConstants& dc = sol.dc;
    const double eta = 0.5;
    const Complex direct = dc.lambda1 * eta * eta /
                           (2.0 * dc.c * std::cosh(dc.w0 / eta) *
                            lambda_pm_product(eta, dc));
    CHECK(rel(sol.continuum(eta), direct) < 1e-14);

    const auto bp = lambda_boundary(eta, dc);
    const Complex Tc = T_cut(eta, dc);
    const Complex tj = Complex(0.0, std::numbers::pi) * eta *
                       (eta * eta - dc.eta1_sq) / (2.0 * dc.c);
    const Complex Tp = Tc + tj, Tm = Tc - tj;
    const Complex Mp = (sol.A1_tilde / 3.0 * Tp + sol.C1 * eta) / bp.plus;
    const Complex Mm = (sol.A1_tilde / 3.0 * Tm + sol.C1 * eta) / bp.minus;
    const Complex jump = (Mp - Mm) / (Complex(0.0, 2.0 * std::numbers::pi) *
                                      std::cosh(dc.w0 / eta) *
                                      (eta * eta - dc.eta1_sq));
    CHECK(rel(sol.continuum(eta), jump) < 1e-8);
}

TEST_CASE("field profile closes the boundary-value problem") {
    const SolutionCoefficients sol = solve(kP1);

    CHECK(std::abs(field_at(sol, 1.0) - 1.0) < 1e-6);
    CHECK(std::abs(field_at(sol, -1.0) - 1.0) < 1e-6);

    const FieldProfile fp = field_profile(sol, 21);
    CHECK(fp.boundary_residual < 1e-6);
    CHECK(fp.symmetry_residual < 1e-8);
    CHECK(fp.x.front() == -1.0);
    CHECK(fp.x.back() == 1.0);

    // centre value from a tighter reconstruction as self-convergence check
    SolutionCoefficients tight = sol;
    tight.opts.tol_field = 1e-11;
    CHECK(std::abs(field_at(sol, 0.0) - field_at(tight, 0.0)) < 1e-7);

    CHECK_THROWS_AS(field_at(sol, 1.5), EvalDomainError);
}

TEST_CASE("jump-problem solution is regular where promised") {
    const SolutionCoefficients sol = solve(kP1);
    const Diagnostics d = run_diagnostics(sol);
    CHECK(d.pole_bracket < 1e-10);
    CHECK(d.pole_probe < 2.0);  // no 1/(z - eta0) growth
    CHECK(d.m_tail < 1e-5);     // M(z)/z -> 0 at |z| = 1e3
    CHECK(d.jump_dev < 1e-8);
    CHECK(d.j1_dev < 1e-7);
    CHECK(d.j2_dev < 1e-7);
    CHECK(d.dedx_dev < 1e-5);
    CHECK(d.field_boundary < 1e-6);
    CHECK(d.field_symmetry < 1e-8);
    CHECK(d.pass);
}

TEST_CASE("contour constants against quadrature") {
    const SolutionCoefficients sol = solve(kP1);
    const DerivedConstants& dc = sol.dc;
    const Complex j1r = J1_field_residue(dc, sol.spectrum.eta0);
    const Complex j2r = J2_residue(dc, sol.spectrum.eta0);
    CHECK(rel(J1_field_quadrature(dc, 1e-11), j1r) < 1e-7);
    CHECK(rel(J2_quadrature(dc, 1e-11), j2r) < 1e-7);
}

TEST_CASE("solution in the no-mode region") {
    const SolutionCoefficients sol = solve({5.0, 2.0, 5.0, 0.5});
    CHECK(sol.spectrum.region == Region::DMinus);
    CHECK(std::abs(sol.E0) == 0.0);
    // the boundary condition still closes without the Debye pair
    CHECK(std::abs(field_at(sol, 1.0) - 1.0) < 1e-6);
    CHECK(std::abs(field_at(sol, -1.0) - 1.0) < 1e-6);
}

TEST_CASE("near-curve parameters are refused") {
    const CurveLPoint p = curve_l_point(0.96);
    CHECK_THROWS_AS(solve({p.Omega, p.eps, 5.0, 0.5}), NearCurveError);
}

TEST_CASE("wall distribution sanity") {
    const SolutionCoefficients sol = solve(kP1);
    // finite and continuous-looking away from 0
    const Complex a = boundary_distribution(sol, 0.595);
    const Complex b = boundary_distribution(sol, 0.605);
    CHECK(std::abs(a - b) < 0.1);
    CHECK_THROWS_AS(boundary_distribution(sol, 0.0), EvalDomainError);
    CHECK_THROWS_AS(boundary_distribution(sol, 1.0), EvalDomainError);
}
