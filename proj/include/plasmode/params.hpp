#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace plasmode {

using Complex = std::complex<double>;

// An input parameter is outside its admissible range; field() names it.
class ParamDomainError : public std::invalid_argument {
public:
    ParamDomainError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Evaluation at a singular point (cut endpoints, the origin, a pole).
class EvalDomainError : public std::domain_error {
    using std::domain_error::domain_error;
};

// An iterative procedure exhausted its budget.
class ConvergenceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameters sit on or too close to the mode-appearance curve L; the
// coefficient solver refuses such points.
class NearCurveError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The four dimensionless inputs.  Frequencies are measured in units of the
// plasma frequency, the slab half-width in units of v_F / omega_p, and
// alpha_p is the normal-momentum accommodation coefficient of the walls
// (alpha_p = 0 is pure specular reflection).
struct PlasmaParams {
    double omega   = 0.0;  // Omega = omega / omega_p >= 0
    double eps     = 0.0;  // eps = nu / omega_p > 0 (collisional plasma)
    double k       = 0.0;  // a * omega_p / v_F > 0
    double alpha_p = 0.0;  // in [0, 1]
};

// Throws ParamDomainError naming the offending field.
void validate(const PlasmaParams& p);

// Every complex constant the closed-form machinery needs, derived once.
struct DerivedConstants {
    PlasmaParams params;
    Complex w0;          // k (eps - i Omega); Re w0 = k*eps > 0
    Complex z0;          // 1 - i Omega / eps
    Complex eta1_sq;     // eps^2 z0 / 3
    Complex eta1;        // principal square root of eta1_sq
    double  up_sq = 0.0; // 3 k^2
    Complex c;           // w0^2 / up_sq = z0 * eta1_sq
    Complex lambda1;     // 1 - 1/z0 = dispersion function at eta1
    Complex lambda_inf;  // value at infinity; equals lambda1 + 1/(3c)
    Complex lambda2;     // z^{-2} Laurent coefficient
    Complex lambda4;     // z^{-4} Laurent coefficient
};

DerivedConstants derive(const PlasmaParams& p);

// z^{-2m} Laurent coefficient of the dispersion function, m >= 1:
//   -(1/z0) [ 1/(2m+1) - 1/((2m+3) eta1_sq) ]
Complex lambda_laurent_coeff(const DerivedConstants& dc, int m);

}  // namespace plasmode
