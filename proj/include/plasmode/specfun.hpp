#pragma once

#include "plasmode/params.hpp"

namespace plasmode {

// All functions here carry a branch cut on the real interval [-1, 1] (T0 on
// [0, 1]).  Off the cut they are analytic; on the cut the boundary values
// from above/below differ and the "principal" value is their mean.

enum class CutSide { above, below, principal };

struct CutFunctionValue {
    Complex value;
    bool on_cut = false;
    CutSide side = CutSide::principal;  // must be principal when off the cut
};

// Case function on the cut: lambda0(mu) = 1 + (mu/2) ln((1-mu)/(1+mu)).
double lambda0(double mu);

// Case dispersion function, 1 + (z/2) log((z-1)/(z+1)); real arguments in
// (-1,1) route to lambda0.  Throws EvalDomainError at z = +-1.
Complex lambda_case(Complex z);
Complex lambda_case_prime(Complex z);

// Dispersion function lambda(z) = 1 - 1/z0 + (1/z0)(1 - z^2/eta1^2) lambda_C(z).
// Real mu in (-1,1) gives the principal-value form; points within 1e-12 of
// the cut route to the boundary values so the branch cannot flap.
Complex lambda(Complex z, const DerivedConstants& dc);
Complex lambda_cut(double mu, const DerivedConstants& dc);

struct BoundaryPair {
    Complex plus;
    Complex minus;
};

// Boundary values lambda(mu) +- i pi mu (eta1^2 - mu^2)/(2c) for mu in (-1,1).
BoundaryPair lambda_boundary(double mu, const DerivedConstants& dc);

// Product lambda_plus * lambda_minus (even in mu, nonzero for eps > 0).
Complex lambda_pm_product(double mu, const DerivedConstants& dc);

// lambda() together with the cut classification of the argument.
CutFunctionValue lambda_eval(Complex z, const DerivedConstants& dc);

// Analytic derivative of lambda off the cut.
Complex lambda_prime(Complex z, const DerivedConstants& dc);

// Companion dispersion function h(z) = (c/z) lambda(z)
//                                    = c/z - z - (z^2 - eta1^2)(1/2) log((z-1)/(z+1)).
Complex h_disp(Complex z, const DerivedConstants& dc);

// Odd auxiliary integral T(z) = (z/2c)[1 + (z^2 - eta1^2) log(1 - 1/z^2)],
// cut on (-1,1); T_cut is its principal value there.
Complex T_fun(Complex z, const DerivedConstants& dc);
Complex T_cut(double eta, const DerivedConstants& dc);

// Half-interval integral T0(z) = (1/2c)[1/2 + z + (z^2 - eta1^2) log(1 - 1/z)],
// cut on (0,1); T0_cut is the principal value for eta in (0,1).
Complex T0_fun(Complex z, const DerivedConstants& dc);
Complex T0_cut(double eta, const DerivedConstants& dc);

// T1(eta) = T(eta) + lambda(eta) sign(eta); odd, kinked at eta = 0.  For
// eta > 0 it has the quadrature-free form
//   1 + (1/2c)[eta - 2 eta^2 + 2 eta (eta^2 - eta1^2) ln(1 + 1/eta)].
Complex T1_cut(double eta, const DerivedConstants& dc);

// Eigenfunction pieces of the characteristic system.
Complex phi_eigen(Complex eta, Complex mu, const DerivedConstants& dc);  // 2 mu (eta^2-eta1^2)/(eta^2-mu^2)
Complex psi_eigen(Complex eta, Complex mu, const DerivedConstants& dc);  // 2 eta (mu^2-eta1^2)/(eta^2-mu^2)

// Smooth part (mu eta - eta1^2)/(eta - mu); throws if eta is within
// `exclusion` of mu and no principal-value treatment was requested upstream.
Complex F_smooth(Complex eta, double mu, const DerivedConstants& dc,
                 double exclusion = 1e-12);

// Weight of the delta(eta - mu) part, -2c lambda(eta)/eta, for cut eta.
Complex F_delta_weight(double eta, const DerivedConstants& dc);

struct EigenParts {
    Complex phi;
    Complex psi;
    Complex F_smooth;
    Complex delta_weight;  // zero when eta is off the cut
};

EigenParts eigenfunction_parts(Complex eta, double mu, const DerivedConstants& dc,
                               double exclusion = 1e-12);

// First mu-moment of F(eta, .) over (-1,1); independent of eta:
//   int mu F(eta,mu) dmu = -2 c lambda1.
Complex F_first_moment(const DerivedConstants& dc);

// Half-interval moments against (mu^2 - 2mu/3).
// m0_moment covers off-cut arguments (+-eta0):
//   (eta1^2 - zeta^2) [ (zeta - 1/6) + (zeta^2 - 2 zeta/3) log(1 - 1/zeta) ].
Complex m0_moment(Complex zeta, const DerivedConstants& dc);

// Closed form of int_0^1 (mu^2 - 2mu/3) F(eta,mu) dmu for eta in (-1,1)\{0}
// (principal value plus the delta contribution on (0,1)).
Complex m_cut(double eta, const DerivedConstants& dc);

// Overflow-safe hyperbolic ratios.
Complex tanh_safe(Complex w);
Complex exp_over_cosh(Complex w);          // e^w / cosh w
Complex inv_cosh(Complex w);               // underflows to exact 0 for large |Re w|
Complex cosh_ratio(Complex w, double x);   // cosh(x w)/cosh(w), x in [-1,1]
Complex sinh_ratio(Complex w, double x);   // sinh(x w)/cosh(w), x in [-1,1]

}  // namespace plasmode
