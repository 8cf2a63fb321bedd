#include "plasmode/params.hpp"

#include <cmath>

namespace plasmode {

void validate(const PlasmaParams& p) {
    if (!(p.eps > 0.0) || !std::isfinite(p.eps))
        throw ParamDomainError("eps", "eps = nu/omega_p must be > 0, got " +
                                          std::to_string(p.eps));
    if (!(p.k > 0.0) || !std::isfinite(p.k))
        throw ParamDomainError("k", "k = a*omega_p/v_F must be > 0, got " +
                                        std::to_string(p.k));
    if (!(p.omega >= 0.0) || !std::isfinite(p.omega))
        throw ParamDomainError("omega", "omega ratio must be >= 0, got " +
                                            std::to_string(p.omega));
    if (!(p.alpha_p >= 0.0 && p.alpha_p <= 1.0))
        throw ParamDomainError("alpha_p", "alpha_p must lie in [0,1], got " +
                                              std::to_string(p.alpha_p));
}

DerivedConstants derive(const PlasmaParams& p) {
    validate(p);
    DerivedConstants dc;
    dc.params = p;

    const Complex i(0.0, 1.0);
    dc.w0 = p.k * Complex(p.eps, -p.omega);
    dc.z0 = 1.0 - i * (p.omega / p.eps);
    dc.eta1_sq = (p.eps * p.eps / 3.0) * dc.z0;
    dc.eta1 = std::sqrt(dc.eta1_sq);
    dc.up_sq = 3.0 * p.k * p.k;
    dc.c = dc.w0 * dc.w0 / dc.up_sq;  // equals z0 * eta1_sq identically

    dc.lambda1 = 1.0 - 1.0 / dc.z0;
    dc.lambda_inf = dc.lambda1 + 1.0 / (3.0 * dc.c);
    dc.lambda2 = -(1.0 / dc.z0) * (1.0 / 3.0 - 1.0 / (5.0 * dc.eta1_sq));
    dc.lambda4 = -(1.0 / dc.z0) * (1.0 / 5.0 - 1.0 / (7.0 * dc.eta1_sq));
    return dc;
}

Complex lambda_laurent_coeff(const DerivedConstants& dc, int m) {
    if (m < 1) throw EvalDomainError("Laurent coefficient index must be >= 1");
    const double a = 2.0 * m + 1.0;
    const double b = 2.0 * m + 3.0;
    return -(1.0 / dc.z0) * (1.0 / a - 1.0 / (b * dc.eta1_sq));
}

}  // namespace plasmode
