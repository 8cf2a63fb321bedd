#include "plasmode/absorption.hpp"

#include "plasmode/quadrature.hpp"
#include "plasmode/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace plasmode {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

J1SeriesResult J1_series(const DerivedConstants& dc, std::optional<Complex> eta0,
                         double tol) {
    J1SeriesResult out;
    Complex j = -dc.w0 / dc.lambda_inf +
                (dc.eta1 / dc.lambda1) * tanh_safe(dc.w0 / dc.eta1);
    if (eta0) {
        const Complex e0 = *eta0;
        j += 2.0 * e0 * e0 * tanh_safe(dc.w0 / e0) /
             (lambda_prime(e0, dc) * (e0 * e0 - dc.eta1_sq));
    }

    // poles of tanh(w0/z): t_k = 2 w0 i / (pi (2k+1)); strictly off the real
    // axis for eps > 0, paired under k -> -(k+1)
    auto term = [&](int k) {
        const Complex t = 2.0 * dc.w0 * Complex(0.0, 1.0) / (kPi * (2.0 * k + 1.0));
        if (!(t.imag() > 0.0)) {
            std::ostringstream msg;
            msg << "series pole t_" << k << " = (" << t.real() << "," << t.imag()
                << ") touches the real axis";
            throw ConvergenceError(msg.str());
        }
        const Complex lt = lambda(t, dc);
        if (std::abs(lt) < 1e-10) {
            std::ostringstream msg;
            msg << "series pole t_" << k << " collides with a dispersion zero, |lambda| = "
                << std::abs(lt);
            throw ConvergenceError(msg.str());
        }
        const Complex t2 = t * t;
        return t2 * t2 / (lt * (t2 - dc.eta1_sq));
    };
    SeriesOptions sopts;
    sopts.tol = tol;
    const SeriesResult s = sum_symmetric_series(term, sopts);
    if (!s.converged)
        throw ConvergenceError("residue series for J1 did not converge after " +
                               std::to_string(s.terms) + " terms");
    out.terms = static_cast<std::size_t>(s.terms);
    out.value = j - s.value / dc.w0;
    return out;
}

Complex J1_absorb_quadrature(const DerivedConstants& dc, double tol) {
    QuadratureOptions opts;
    opts.tol = tol;
    return integrate_or_throw(
               [&](double eta) {
                   return eta * eta * eta * tanh_safe(dc.w0 / eta) /
                          lambda_pm_product(eta, dc);
               },
               -1.0, 1.0, opts) /
           (2.0 * dc.c);
}

Complex J0_quadrature(const DerivedConstants& dc, double tol) {
    QuadratureOptions opts;
    opts.tol = std::min(tol, 1e-9);
    return integrate_or_throw(
               [&](double eta) {
                   return eta * eta * T1_cut(eta, dc) * tanh_safe(dc.w0 / eta) /
                          lambda_pm_product(eta, dc);
               },
               -1.0, 1.0, opts) /
           (2.0 * dc.c);
}

AbsorptionResult compute_absorption(const SolutionCoefficients& sol,
                                    bool with_spatial) {
    const DerivedConstants& dc = sol.dc;
    const double tol = sol.opts.tol_coeff;
    AbsorptionResult res;

    Complex debye_term = 0.0;
    if (sol.spectrum.region == Region::DPlus) {
        const Complex eta0 = *sol.spectrum.eta0;
        debye_term = 2.0 * sol.debye_pair * (eta0 / dc.w0) * tanh_safe(dc.w0 / eta0);
    }

    // closed route: residue series for J1, quadrature for J0
    const J1SeriesResult j1 = J1_series(dc, sol.spectrum.eta0, sol.opts.tol_series);
    res.series_terms = j1.terms;
    const Complex j0 = J0_quadrature(dc, tol);
    res.Q1_closed =
        sol.E_inf + debye_term +
        ((dc.lambda1 - dc.lambda_inf * sol.A1_tilde / 2.0) * j1.value +
         sol.A1_tilde / 3.0 * j0) /
            dc.w0;

    // direct route: one quadrature of the full continuum integrand
    {
        QuadratureOptions opts;
        opts.tol = tol;
        const Complex cont = integrate_or_throw(
            [&](double eta) {
                return eta * tanh_safe(dc.w0 / eta) * sol.continuum_weight(eta);
            },
            0.0, 1.0, opts);
        res.Q1_quadrature = sol.E_inf + debye_term + 2.0 * cont / dc.w0;
    }

    // spatial route: integrate the reconstructed field profile
    if (with_spatial) {
        SolutionCoefficients inner = sol;
        inner.opts.tol_field = std::min(sol.opts.tol_field, 1e-9);
        QuadratureOptions opts;
        opts.tol = 1e-9;
        res.Q1_spatial = integrate_or_throw(
            [&](double x) { return field_at(inner, x); }, 0.0, 1.0, opts);
    } else {
        res.Q1_spatial = res.Q1_quadrature;
    }

    res.Q0 = -res.Q1_closed.imag();

    const double scale =
        std::max({std::abs(res.Q1_closed), std::abs(res.Q1_quadrature),
                  std::abs(res.Q1_spatial), 1e-300});
    double agree = std::abs(res.Q1_closed - res.Q1_quadrature);
    agree = std::max(agree, std::abs(res.Q1_closed - res.Q1_spatial));
    agree = std::max(agree, std::abs(res.Q1_quadrature - res.Q1_spatial));
    res.agreement = agree / scale;

    if (res.Q0 < -1e-12) {
        std::ostringstream msg;
        msg << "absorption convention error: Q0 = " << res.Q0 << " < 0";
        throw ConvergenceError(msg.str());
    }
    return res;
}

}  // namespace plasmode
