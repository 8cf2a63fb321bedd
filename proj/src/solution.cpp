#include "plasmode/solution.hpp"

#include "plasmode/quadrature.hpp"
#include "plasmode/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace plasmode {

namespace {

constexpr double kCoshRange = 700.0;  // |Re w| beyond which cosh overflows

// Numerator of the continuum coefficient:
//   N(eta) = lambda1 eta^2 + (A~/6)(2 eta T1(eta) - 3 lambda_inf eta^2)
Complex continuum_numerator(double eta, const DerivedConstants& dc,
                            Complex A1_tilde, Complex lambda_inf) {
    const Complex t1 = T1_cut(eta, dc);
    return dc.lambda1 * eta * eta +
           (A1_tilde / 6.0) * (2.0 * eta * t1 - 3.0 * lambda_inf * eta * eta);
}

Complex debye_pair_value(const DerivedConstants& dc, Complex eta0,
                         Complex A1_tilde) {
    const Complex Teta0 = T_fun(eta0, dc);
    const Complex num = dc.lambda1 * eta0 +
                        A1_tilde * (Teta0 / 3.0 - dc.lambda_inf * eta0 / 2.0);
    const Complex den = lambda_prime(eta0, dc) * (eta0 * eta0 - dc.eta1_sq);
    return -num / den;
}

}  // namespace

Complex SolutionCoefficients::continuum_weight(double eta) const {
    return continuum_numerator(eta, dc, A1_tilde, dc.lambda_inf) /
           (2.0 * dc.c * lambda_pm_product(eta, dc));
}

Complex SolutionCoefficients::continuum(double eta, bool* cosh_suppressed) const {
    if (cosh_suppressed) *cosh_suppressed = false;
    if (!(std::abs(eta) < 1.0) || eta == 0.0)
        throw EvalDomainError("continuum coefficient requires eta in (-1,1), eta != 0");
    const Complex w = dc.w0 / eta;
    if (std::abs(w.real()) > kCoshRange) {
        if (cosh_suppressed) *cosh_suppressed = true;
        return Complex(0.0);
    }
    return continuum_weight(eta) * inv_cosh(w);
}

MomentIntegrals moment_integrals(const DerivedConstants& dc,
                                 std::optional<Complex> eta0, double tol) {
    MomentIntegrals mi;
    auto beta = [&](double eta) {
        return m_cut(eta, dc) * exp_over_cosh(dc.w0 / eta) /
               lambda_pm_product(eta, dc);
    };
    QuadratureOptions opts;
    opts.tol = tol;
    mi.I0 = integrate_or_throw([&](double eta) { return eta * eta * beta(eta); },
                               -1.0, 1.0, opts) / dc.c;
    mi.I1 = integrate_or_throw(
                [&](double eta) { return eta * T1_cut(eta, dc) * beta(eta); },
                -1.0, 1.0, opts) / dc.c;
    if (eta0) {
        const Complex w = dc.w0 / *eta0;
        const Complex num = m0_moment(*eta0, dc) * exp_over_cosh(w) +
                            m0_moment(-*eta0, dc) * exp_over_cosh(-w);
        mi.beta0 = num / (lambda_prime(*eta0, dc) * (*eta0 * *eta0 - dc.eta1_sq));
    }
    return mi;
}

Complex compute_A1(const DerivedConstants& dc, std::optional<Complex> eta0,
                   double alpha_p, double tol) {
    if (alpha_p == 0.0) return Complex(0.0);  // pure specular walls
    const MomentIntegrals mi = moment_integrals(dc, eta0, tol);
    Complex num = 1.0 / (36.0 * dc.lambda_inf) + mi.I0 / 2.0;
    Complex den = mi.I1 / 6.0 - dc.lambda_inf * mi.I0 / 4.0 +
                  (1.0 - alpha_p) / (36.0 * alpha_p);
    if (eta0) {
        num -= *eta0 * mi.beta0;
        den -= (T_fun(*eta0, dc) / 3.0 - dc.lambda_inf * *eta0 / 2.0) * mi.beta0;
    }
    if (std::abs(den) < 1e-12)
        throw ConvergenceError("degenerate accommodation: moment equation has a "
                               "vanishing coefficient");
    return -dc.lambda1 * num / den;
}

Complex compute_E0(const DerivedConstants& dc, Complex eta0, Complex A1_tilde) {
    return debye_pair_value(dc, eta0, A1_tilde) * inv_cosh(dc.w0 / eta0);
}

SolutionCoefficients solve(const PlasmaParams& p, const SolveOptions& opts) {
    SolutionCoefficients sol;
    sol.dc = derive(p);
    sol.opts = opts;
    sol.spectrum = analyze_spectrum(sol.dc);
    if (sol.spectrum.region == Region::NearL)
        throw NearCurveError(
            "parameters on or near the curve L; coefficient solve refused");

    sol.A1_tilde = compute_A1(sol.dc, sol.spectrum.eta0, p.alpha_p, opts.tol_coeff);
    sol.E_inf = sol.dc.lambda1 / sol.dc.lambda_inf;
    sol.C1 = (sol.E_inf - sol.A1_tilde / 2.0) * sol.dc.lambda_inf;
    if (sol.spectrum.region == Region::DPlus) {
        const Complex eta0 = *sol.spectrum.eta0;
        // pole elimination needs a simple zero
        if (std::abs(lambda_prime(eta0, sol.dc)) < 1e-10)
            throw NearCurveError("degenerate dispersion zero: |lambda'(eta0)| < 1e-10");
        sol.debye_pair = debye_pair_value(sol.dc, eta0, sol.A1_tilde);
        sol.E0 = sol.debye_pair * inv_cosh(sol.dc.w0 / eta0);
    } else {
        sol.debye_pair = sol.E0 = Complex(0.0);
    }
    return sol;
}

Complex J1_field_residue(const DerivedConstants& dc, std::optional<Complex> eta0) {
    Complex j = -1.0 / dc.lambda_inf + 1.0 / dc.lambda1;
    if (eta0)
        j += 2.0 * *eta0 /
             ((*eta0 * *eta0 - dc.eta1_sq) * lambda_prime(*eta0, dc));
    return j;
}

Complex J2_residue(const DerivedConstants& dc, std::optional<Complex> eta0) {
    Complex j = 1.0 / (2.0 * dc.c * dc.lambda1);
    if (eta0)
        j += 2.0 * T_fun(*eta0, dc) /
             ((*eta0 * *eta0 - dc.eta1_sq) * lambda_prime(*eta0, dc));
    return j;
}

Complex J1_field_quadrature(const DerivedConstants& dc, double tol) {
    QuadratureOptions opts;
    opts.tol = tol;
    return integrate_or_throw(
               [&](double eta) { return eta * eta / lambda_pm_product(eta, dc); },
               -1.0, 1.0, opts) /
           (2.0 * dc.c);
}

Complex J2_quadrature(const DerivedConstants& dc, double tol) {
    QuadratureOptions opts;
    opts.tol = tol;
    return integrate_or_throw(
               [&](double eta) {
                   return eta * T1_cut(eta, dc) / lambda_pm_product(eta, dc);
               },
               -1.0, 1.0, opts) /
           (2.0 * dc.c);
}

Complex M_closed(const SolutionCoefficients& sol, Complex z) {
    const DerivedConstants& dc = sol.dc;
    Complex m = -sol.E_inf * z + sol.A1_tilde / 2.0 * z +
                ((sol.A1_tilde / 3.0) * T_fun(z, dc) + sol.C1 * z) / lambda(z, dc);
    if (sol.spectrum.region == Region::DPlus)
        m -= sol.debye_pair * phi_eigen(*sol.spectrum.eta0, z, dc);
    return m;
}

Complex field_at(const SolutionCoefficients& sol, double x) {
    if (std::abs(x) > 1.0)
        throw EvalDomainError("field is defined on the slab |x| <= 1");
    const DerivedConstants& dc = sol.dc;
    Complex e = sol.E_inf;
    if (sol.spectrum.region == Region::DPlus)
        e += 2.0 * sol.debye_pair * cosh_ratio(dc.w0 / *sol.spectrum.eta0, x);
    QuadratureOptions opts;
    opts.tol = sol.opts.tol_field;
    // even continuum integrand: twice the (0,1) half
    const QuadratureResult cont = integrate(
        [&](double eta) {
            return cosh_ratio(dc.w0 / eta, x) * sol.continuum_weight(eta);
        },
        0.0, 1.0, opts);
    if (!cont.converged)
        throw ConvergenceError("field quadrature did not converge at x = " +
                               std::to_string(x) + "; estimate " +
                               std::to_string(cont.error_estimate));
    return e + 2.0 * cont.value;
}

FieldProfile field_profile(const SolutionCoefficients& sol,
                           const std::vector<double>& x_grid) {
    FieldProfile fp;
    fp.x = x_grid;
    fp.e.reserve(x_grid.size());
    for (double x : x_grid) fp.e.push_back(field_at(sol, x));
    fp.boundary_residual =
        std::max(std::abs(field_at(sol, 1.0) - 1.0), std::abs(field_at(sol, -1.0) - 1.0));
    double sym = 0.0;
    for (double x : x_grid) {
        if (x <= 0.0) continue;
        sym = std::max(sym, std::abs(field_at(sol, x) - field_at(sol, -x)));
    }
    fp.symmetry_residual = sym;
    return fp;
}

FieldProfile field_profile(const SolutionCoefficients& sol, int points) {
    if (points < 2) throw EvalDomainError("field profile needs at least 2 points");
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = -1.0 + 2.0 * double(i) / double(points - 1);
    return field_profile(sol, grid);
}

Complex boundary_distribution(const SolutionCoefficients& sol, double mu) {
    if (!(std::abs(mu) < 1.0) || mu == 0.0)
        throw EvalDomainError("wall distribution requires mu in (-1,1), mu != 0");
    const DerivedConstants& dc = sol.dc;

    Complex acc = sol.E_inf * mu;
    if (sol.spectrum.region == Region::DPlus) {
        const Complex eta0 = *sol.spectrum.eta0;
        const Complex w = dc.w0 / eta0;
        acc += sol.debye_pair * (F_smooth(eta0, mu, dc) * exp_over_cosh(w) +
                                 F_smooth(-eta0, mu, dc) * exp_over_cosh(-w));
    }

    // continuum: principal value over eta plus the delta term at eta = mu
    QuadratureOptions opts;
    opts.tol = sol.opts.tol_coeff;
    auto integrand = [&](double eta) {
        return (mu * eta - dc.eta1_sq) / (eta - mu) *
               exp_over_cosh(dc.w0 / eta) * sol.continuum_weight(eta);
    };
    const QuadratureResult pv = integrate_pv(integrand, mu, -1.0, 1.0, opts);
    if (!pv.converged)
        throw ConvergenceError("principal-value quadrature for h(-1, mu) did not "
                               "converge at mu = " + std::to_string(mu));
    acc += pv.value;
    acc += F_delta_weight(mu, dc) * exp_over_cosh(dc.w0 / mu) *
           sol.continuum_weight(mu);
    return acc / dc.w0;
}

Diagnostics run_diagnostics(const SolutionCoefficients& sol) {
    const DerivedConstants& dc = sol.dc;
    const double tol = sol.opts.tol_coeff;
    QuadratureOptions opts;
    opts.tol = tol;
    Diagnostics d;

    // field boundary and symmetry
    d.field_boundary = std::max(std::abs(field_at(sol, 1.0) - 1.0),
                                std::abs(field_at(sol, -1.0) - 1.0));
    d.field_symmetry = 0.0;
    for (double x : {0.2, 0.5, 0.8, 0.95})
        d.field_symmetry = std::max(
            d.field_symmetry, std::abs(field_at(sol, x) - field_at(sol, -x)));

    // non-flow moment, mu-integration exchanged against the eta integrals
    {
        const Complex cont = integrate_or_throw(
            [&](double eta) {
                return exp_over_cosh(dc.w0 / eta) * sol.continuum_weight(eta);
            },
            -1.0, 1.0, opts);
        const Complex flux =
            (2.0 / 3.0) * sol.E_inf / dc.w0 -
            (2.0 * dc.c * dc.lambda1 / dc.w0) * (2.0 * sol.debye_pair + cont);
        d.nonflow = std::abs(flux);
    }

    // wall-jump shape: h(-1,mu) - h(-1,-mu) against (mu - 2/3)
    {
        std::vector<double> mus = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        std::vector<Complex> diff(mus.size());
        for (std::size_t i = 0; i < mus.size(); ++i)
            diff[i] = boundary_distribution(sol, mus[i]) -
                      boundary_distribution(sol, -mus[i]);
        Complex num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < mus.size(); ++i) {
            const double phi = mus[i] - 2.0 / 3.0;
            num += diff[i] * phi;
            den += phi * phi;
        }
        const Complex slope = num / den;
        double resid = 0.0;
        for (std::size_t i = 0; i < mus.size(); ++i)
            resid = std::max(resid,
                             std::abs(diff[i] - slope * (mus[i] - 2.0 / 3.0)));
        d.bc_fit = resid;
        const Complex expected = sol.A1_tilde / dc.w0;
        d.bc_coeff_dev = std::abs(expected) > 1e-14
                             ? std::abs(slope - expected) / std::abs(expected)
                             : std::abs(slope);
    }

    const double alpha_p = dc.params.alpha_p;
    if (alpha_p > 0.0) {
        // moment equation re-evaluated at tighter tolerance
        const MomentIntegrals mi = moment_integrals(dc, sol.spectrum.eta0, tol * 0.1);
        Complex num = 1.0 / (36.0 * dc.lambda_inf) + mi.I0 / 2.0;
        Complex den = mi.I1 / 6.0 - dc.lambda_inf * mi.I0 / 4.0 +
                      (1.0 - alpha_p) / (36.0 * alpha_p);
        if (sol.spectrum.eta0) {
            const Complex eta0 = *sol.spectrum.eta0;
            num -= eta0 * mi.beta0;
            den -= (T_fun(eta0, dc) / 3.0 - dc.lambda_inf * eta0 / 2.0) * mi.beta0;
        }
        d.moment_eq = std::abs(dc.lambda1 * num + sol.A1_tilde * den);

        // wall-moment round trip through h(-1, mu) itself
        Complex lhs = sol.E_inf / 36.0;
        if (sol.spectrum.eta0) {
            const Complex w = dc.w0 / *sol.spectrum.eta0;
            lhs += sol.debye_pair *
                   (m0_moment(*sol.spectrum.eta0, dc) * exp_over_cosh(w) +
                    m0_moment(-*sol.spectrum.eta0, dc) * exp_over_cosh(-w));
        }
        lhs += integrate_or_throw(
            [&](double eta) {
                return m_cut(eta, dc) * exp_over_cosh(dc.w0 / eta) *
                       sol.continuum_weight(eta);
            },
            -1.0, 1.0, opts);
        lhs /= dc.w0;
        const Complex rhs =
            -(1.0 - alpha_p) / (36.0 * alpha_p) * sol.A1_tilde / dc.w0;
        d.moment_roundtrip = std::abs(lhs - rhs);
    }

    // regularity of the jump-problem solution at eta0
    if (sol.spectrum.region == Region::DPlus) {
        const Complex eta0 = *sol.spectrum.eta0;
        const Complex bracket =
            sol.debye_pair * (eta0 * eta0 - dc.eta1_sq) * lambda_prime(eta0, dc) +
            (sol.A1_tilde / 3.0) * T_fun(eta0, dc) + sol.C1 * eta0;
        d.pole_bracket = std::abs(bracket);

        double m3 = 0.0, m4 = 0.0;
        for (int q = 0; q < 4; ++q) {
            const double th = 0.25 + q * std::numbers::pi / 2.0;
            const Complex dir(std::cos(th), std::sin(th));
            m3 = std::max(m3, std::abs(M_closed(sol, eta0 + 1e-3 * dir)));
            m4 = std::max(m4, std::abs(M_closed(sol, eta0 + 1e-4 * dir)));
        }
        d.pole_probe = m4 / std::max(m3, 1e-300);
    }

    // decay of M at infinity fixes C1
    {
        double worst = 0.0;
        for (int q = 0; q < 8; ++q) {
            const double th = (q + 0.3) * std::numbers::pi / 4.0;
            const Complex z = 1e3 * Complex(std::cos(th), std::sin(th));
            worst = std::max(worst, std::abs(M_closed(sol, z) / z));
        }
        d.m_tail = worst;
    }

    // contour constants against direct quadrature
    {
        const Complex j1r = J1_field_residue(dc, sol.spectrum.eta0);
        const Complex j2r = J2_residue(dc, sol.spectrum.eta0);
        d.j1_dev = std::abs(j1r - J1_field_quadrature(dc, tol)) / std::abs(j1r);
        d.j2_dev = std::abs(j2r - J2_quadrature(dc, tol)) / std::abs(j2r);
    }

    // principal value of the continuum integral against the closed solution
    {
        double worst = 0.0;
        for (double mu : {0.3, 0.62}) {
            auto integrand = [&](double eta) {
                return (mu * eta - dc.eta1_sq) / (eta - mu) *
                       sol.continuum_weight(eta);
            };
            const QuadratureResult pv = integrate_pv(integrand, mu, -1.0, 1.0, opts);
            const auto lp = lambda_boundary(mu, dc);
            const Complex tc = T_cut(mu, dc);
            const double sgn = mu > 0.0 ? 1.0 : -1.0;
            const Complex tjump = Complex(0.0, std::numbers::pi) * mu *
                                  (mu * mu - dc.eta1_sq) * sgn / (2.0 * dc.c);
            const Complex t_plus = tc + tjump, t_minus = tc - tjump;
            const Complex tl_mean =
                0.5 * (t_plus * lp.minus + t_minus * lp.plus);
            Complex closed = -sol.E_inf * mu + sol.A1_tilde / 2.0 * mu +
                             ((sol.A1_tilde / 3.0) * tl_mean +
                              sol.C1 * mu * lambda_cut(mu, dc)) /
                                 lambda_pm_product(mu, dc);
            if (sol.spectrum.region == Region::DPlus)
                closed -= sol.debye_pair * phi_eigen(*sol.spectrum.eta0, mu, dc);
            worst = std::max(worst, std::abs(pv.value - closed) /
                                        std::max(1.0, std::abs(closed)));
        }
        d.jump_dev = worst;
    }

    // field derivative against the density moment
    {
        const double x0 = 0.37, h = 1e-4;
        SolutionCoefficients tight = sol;
        tight.opts.tol_field = 1e-11;
        const Complex fd =
            (field_at(tight, x0 + h) - field_at(tight, x0 - h)) / (2.0 * h);
        Complex density = 0.0;
        if (sol.spectrum.region == Region::DPlus)
            density += 2.0 * sol.debye_pair *
                       sinh_ratio(dc.w0 / *sol.spectrum.eta0, x0) /
                       *sol.spectrum.eta0;
        density += 2.0 * integrate_or_throw(
                             [&](double eta) {
                                 return sinh_ratio(dc.w0 / eta, x0) *
                                        sol.continuum_weight(eta) / eta;
                             },
                             0.0, 1.0, opts);
        const Complex analytic = dc.w0 * density;
        d.dedx_dev = std::abs(fd - analytic) / std::max(1.0, std::abs(analytic));
    }

    d.pass = d.field_boundary < 1e-6 && d.field_symmetry < 1e-8 &&
             d.nonflow < 1e-6 && d.bc_fit < 1e-5 && d.moment_eq < 1e-8 &&
             d.moment_roundtrip < 1e-6 && d.pole_bracket < 1e-10 &&
             d.pole_probe < 2.0 && d.m_tail < 1e-5 && d.j1_dev < 1e-7 &&
             d.j2_dev < 1e-7 && d.jump_dev < 1e-8 && d.dedx_dev < 1e-5;
    return d;
}

}  // namespace plasmode
