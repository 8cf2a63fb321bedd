#include "plasmode/specfun.hpp"

#include <cmath>
#include <numbers>

namespace plasmode {

namespace {

constexpr double kCutBand = 1e-12;      // route to boundary values inside this band
constexpr double kSeriesRadius = 4.0;   // switch to Laurent series beyond this
constexpr double kPi = std::numbers::pi;

bool near_cut(Complex z, double half_width = 1.0) {
    return std::abs(z.imag()) < kCutBand && std::abs(z.real()) < half_width;
}

Complex log_ratio(Complex z) {  // log((z-1)/(z+1)), principal branch
    return std::log((z - 1.0) / (z + 1.0));
}

void require_not_endpoint(Complex z) {
    if ((z.real() == 1.0 || z.real() == -1.0) && z.imag() == 0.0)
        throw EvalDomainError("logarithmic singularity at z = +-1");
}

// lambda_C(z) = -sum_{m>=1} z^{-2m}/(2m+1), |z| > 1
Complex lambda_case_series(Complex z) {
    const Complex w = 1.0 / (z * z);
    Complex pw = w, sum = 0.0;
    for (int m = 1; m <= 60; ++m) {
        const Complex term = pw / (2.0 * m + 1.0);
        sum -= term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        pw *= w;
    }
    return sum;
}

Complex lambda_series(Complex z, const DerivedConstants& dc) {
    const Complex w = 1.0 / (z * z);
    Complex pw = w, sum = dc.lambda_inf;
    for (int m = 1; m <= 60; ++m) {
        const Complex term = lambda_laurent_coeff(dc, m) * pw;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        pw *= w;
    }
    return sum;
}

Complex lambda_prime_series(Complex z, const DerivedConstants& dc) {
    const Complex w = 1.0 / (z * z);
    Complex pw = w / z, sum = 0.0;  // z^{-2m-1} terms
    for (int m = 1; m <= 60; ++m) {
        const Complex term = -2.0 * m * lambda_laurent_coeff(dc, m) * pw;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && m > 2) break;
        pw *= w;
    }
    return sum;
}

// T(z) = (z/2c) sum_{j>=1} z^{-2j} (eta1^2/j - 1/(j+1)), |z| > 1
Complex T_series(Complex z, const DerivedConstants& dc) {
    const Complex w = 1.0 / (z * z);
    Complex pw = w, sum = 0.0;
    for (int j = 1; j <= 60; ++j) {
        const Complex term = pw * (dc.eta1_sq / double(j) - 1.0 / double(j + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && j > 2) break;
        pw *= w;
    }
    return sum * z / (2.0 * dc.c);
}

// T0(z) = (1/2c) sum_{j>=1} z^{-j} (eta1^2/j - 1/(j+2)), |z| > 1
Complex T0_series(Complex z, const DerivedConstants& dc) {
    const Complex w = 1.0 / z;
    Complex pw = w, sum = 0.0;
    for (int j = 1; j <= 120; ++j) {
        const Complex term = pw * (dc.eta1_sq / double(j) - 1.0 / double(j + 2));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && j > 2) break;
        pw *= w;
    }
    return sum / (2.0 * dc.c);
}

}  // namespace

double lambda0(double mu) {
    if (!(std::abs(mu) < 1.0))
        throw EvalDomainError("lambda0 requires |mu| < 1");
    if (mu == 0.0) return 1.0;
    return 1.0 + 0.5 * mu * std::log((1.0 - mu) / (1.0 + mu));
}

Complex lambda_case(Complex z) {
    require_not_endpoint(z);
    if (near_cut(z)) {
        const double mu = z.real();
        if (z.imag() == 0.0) return lambda0(mu);
        const double sgn = z.imag() > 0.0 ? 1.0 : -1.0;
        return Complex(lambda0(mu), sgn * kPi * mu / 2.0);
    }
    if (std::abs(z) > kSeriesRadius) return lambda_case_series(z);
    return 1.0 + 0.5 * z * log_ratio(z);
}

Complex lambda_case_prime(Complex z) {
    require_not_endpoint(z);
    if (near_cut(z))
        throw EvalDomainError("lambda_case_prime is defined off the cut only");
    return 0.5 * log_ratio(z) + z / (z * z - 1.0);
}

Complex lambda_cut(double mu, const DerivedConstants& dc) {
    if (!(std::abs(mu) < 1.0))
        throw EvalDomainError("lambda_cut requires |mu| < 1");
    return dc.lambda1 +
           (1.0 / dc.z0) * (1.0 - mu * mu / dc.eta1_sq) * lambda0(mu);
}

BoundaryPair lambda_boundary(double mu, const DerivedConstants& dc) {
    if (!(std::abs(mu) < 1.0))
        throw EvalDomainError("lambda_boundary requires |mu| < 1");
    const Complex mean = lambda_cut(mu, dc);
    const Complex jump =
        Complex(0.0, kPi) * mu * (dc.eta1_sq - mu * mu) / (2.0 * dc.c);
    return {mean + jump, mean - jump};
}

Complex lambda_pm_product(double mu, const DerivedConstants& dc) {
    const Complex mean = lambda_cut(mu, dc);
    const Complex j = kPi * mu * (dc.eta1_sq - mu * mu) / (2.0 * dc.c);
    return mean * mean + j * j;  // (mean + i j)(mean - i j)
}

Complex lambda(Complex z, const DerivedConstants& dc) {
    require_not_endpoint(z);
    if (near_cut(z)) {
        const double mu = z.real();
        if (z.imag() == 0.0) return lambda_cut(mu, dc);
        const auto bp = lambda_boundary(mu, dc);
        return z.imag() > 0.0 ? bp.plus : bp.minus;
    }
    if (std::abs(z) > kSeriesRadius) return lambda_series(z, dc);
    return dc.lambda1 +
           (1.0 / dc.z0) * (1.0 - z * z / dc.eta1_sq) * lambda_case(z);
}

CutFunctionValue lambda_eval(Complex z, const DerivedConstants& dc) {
    CutFunctionValue out;
    if (near_cut(z)) {
        out.on_cut = true;
        if (z.imag() == 0.0) {
            out.side = CutSide::principal;
            out.value = lambda_cut(z.real(), dc);
        } else {
            const auto bp = lambda_boundary(z.real(), dc);
            out.side = z.imag() > 0.0 ? CutSide::above : CutSide::below;
            out.value = z.imag() > 0.0 ? bp.plus : bp.minus;
        }
        return out;
    }
    out.value = lambda(z, dc);
    return out;
}

Complex lambda_prime(Complex z, const DerivedConstants& dc) {
    require_not_endpoint(z);
    if (near_cut(z))
        throw EvalDomainError("lambda_prime is defined off the cut only");
    if (std::abs(z) > kSeriesRadius) return lambda_prime_series(z, dc);
    const Complex lc = lambda_case(z);
    const Complex lcp = lambda_case_prime(z);
    return (1.0 / dc.z0) *
           ((-2.0 * z / dc.eta1_sq) * lc + (1.0 - z * z / dc.eta1_sq) * lcp);
}

Complex h_disp(Complex z, const DerivedConstants& dc) {
    if (z == 0.0) throw EvalDomainError("h_disp is singular at z = 0");
    if (near_cut(z) && z.imag() == 0.0)
        throw EvalDomainError("h_disp is defined off the cut only");
    return (dc.c / z) * lambda(z, dc);
}

Complex T_fun(Complex z, const DerivedConstants& dc) {
    require_not_endpoint(z);
    if (z == 0.0) throw EvalDomainError("T is singular at z = 0");
    if (near_cut(z)) {
        const double eta = z.real();
        const Complex mean = T_cut(eta, dc);
        if (z.imag() == 0.0) return mean;
        const double sgn_side = z.imag() > 0.0 ? 1.0 : -1.0;
        const double sgn_eta = eta > 0.0 ? 1.0 : -1.0;
        const Complex jump = Complex(0.0, kPi) * eta *
                             (eta * eta - dc.eta1_sq) * sgn_eta / (2.0 * dc.c);
        return mean + sgn_side * jump;
    }
    if (std::abs(z) > kSeriesRadius) return T_series(z, dc);
    return (z / (2.0 * dc.c)) *
           (1.0 + (z * z - dc.eta1_sq) * std::log(1.0 - 1.0 / (z * z)));
}

Complex T_cut(double eta, const DerivedConstants& dc) {
    if (!(std::abs(eta) < 1.0) || eta == 0.0)
        throw EvalDomainError("T_cut requires eta in (-1,1), eta != 0");
    return (eta / (2.0 * dc.c)) *
           (1.0 + (eta * eta - dc.eta1_sq) * std::log(1.0 / (eta * eta) - 1.0));
}

Complex T0_fun(Complex z, const DerivedConstants& dc) {
    if ((z.real() == 0.0 || z.real() == 1.0) && z.imag() == 0.0)
        throw EvalDomainError("T0 is singular at z = 0 and z = 1");
    if (std::abs(z.imag()) < kCutBand && z.real() > 0.0 && z.real() < 1.0) {
        const double eta = z.real();
        const Complex mean = T0_cut(eta, dc);
        if (z.imag() == 0.0) return mean;
        const double sgn_side = z.imag() > 0.0 ? 1.0 : -1.0;
        const Complex jump =
            Complex(0.0, kPi) * (eta * eta - dc.eta1_sq) / (2.0 * dc.c);
        return mean + sgn_side * jump;
    }
    if (std::abs(z) > kSeriesRadius) return T0_series(z, dc);
    return (0.5 + z + (z * z - dc.eta1_sq) * std::log(1.0 - 1.0 / z)) /
           (2.0 * dc.c);
}

Complex T0_cut(double eta, const DerivedConstants& dc) {
    if (!(eta > 0.0 && eta < 1.0))
        throw EvalDomainError("T0_cut requires eta in (0,1)");
    return (0.5 + eta + (eta * eta - dc.eta1_sq) * std::log(1.0 / eta - 1.0)) /
           (2.0 * dc.c);
}

Complex T1_cut(double eta, const DerivedConstants& dc) {
    if (!(std::abs(eta) < 1.0) || eta == 0.0)
        throw EvalDomainError("T1 requires eta in (-1,1), eta != 0");
    const double a = std::abs(eta);
    const Complex val =
        1.0 + (a - 2.0 * a * a +
               2.0 * a * (a * a - dc.eta1_sq) * std::log(1.0 / a + 1.0)) /
                  (2.0 * dc.c);
    return eta > 0.0 ? val : -val;
}

Complex phi_eigen(Complex eta, Complex mu, const DerivedConstants& dc) {
    const Complex den = eta * eta - mu * mu;
    if (std::abs(den) == 0.0)
        throw EvalDomainError("phi_eigen singular at eta = +-mu");
    return 2.0 * mu * (eta * eta - dc.eta1_sq) / den;
}

Complex psi_eigen(Complex eta, Complex mu, const DerivedConstants& dc) {
    const Complex den = eta * eta - mu * mu;
    if (std::abs(den) == 0.0)
        throw EvalDomainError("psi_eigen singular at eta = +-mu");
    return 2.0 * eta * (mu * mu - dc.eta1_sq) / den;
}

Complex F_smooth(Complex eta, double mu, const DerivedConstants& dc,
                 double exclusion) {
    if (std::abs(eta - mu) < exclusion)
        throw EvalDomainError(
            "F eigenfunction singular at eta = mu; use principal-value handling");
    return (mu * eta - dc.eta1_sq) / (eta - mu);
}

Complex F_delta_weight(double eta, const DerivedConstants& dc) {
    if (!(std::abs(eta) < 1.0) || eta == 0.0)
        throw EvalDomainError("delta weight requires eta in (-1,1), eta != 0");
    return -2.0 * dc.c * lambda_cut(eta, dc) / eta;
}

EigenParts eigenfunction_parts(Complex eta, double mu, const DerivedConstants& dc,
                               double exclusion) {
    EigenParts parts;
    parts.phi = phi_eigen(eta, mu, dc);
    parts.psi = psi_eigen(eta, mu, dc);
    parts.F_smooth = F_smooth(eta, mu, dc, exclusion);
    const bool cut_eta =
        eta.imag() == 0.0 && std::abs(eta.real()) < 1.0 && eta.real() != 0.0;
    parts.delta_weight = cut_eta ? F_delta_weight(eta.real(), dc) : Complex(0.0);
    return parts;
}

Complex F_first_moment(const DerivedConstants& dc) {
    return -2.0 * dc.c * dc.lambda1;
}

Complex m0_moment(Complex zeta, const DerivedConstants& dc) {
    if (zeta == 0.0) throw EvalDomainError("m0_moment is singular at 0");
    return (dc.eta1_sq - zeta * zeta) *
           ((zeta - 1.0 / 6.0) +
            (zeta * zeta - 2.0 * zeta / 3.0) * std::log(1.0 - 1.0 / zeta));
}

Complex m_cut(double eta, const DerivedConstants& dc) {
    if (!(std::abs(eta) < 1.0) || eta == 0.0)
        throw EvalDomainError("m requires eta in (-1,1), eta != 0");
    const Complex e2 = eta * eta - dc.eta1_sq;
    if (eta > 0.0) {
        return e2 * (1.0 / 6.0 - eta) -
               e2 * (eta * eta - 2.0 * eta / 3.0) * std::log(1.0 + 1.0 / eta) +
               2.0 * (eta * eta - dc.c) * (eta - 2.0 / 3.0);
    }
    return e2 * (1.0 / 6.0 - eta -
                 (eta * eta - 2.0 * eta / 3.0) * std::log(1.0 - 1.0 / eta));
}

Complex tanh_safe(Complex w) {
    if (w.real() >= 0.0) {
        const Complex e = std::exp(-2.0 * w);
        return (1.0 - e) / (1.0 + e);
    }
    const Complex e = std::exp(2.0 * w);
    return (e - 1.0) / (e + 1.0);
}

Complex exp_over_cosh(Complex w) {
    if (w.real() >= 0.0) return 2.0 / (1.0 + std::exp(-2.0 * w));
    const Complex e = std::exp(2.0 * w);
    return 2.0 * e / (1.0 + e);
}

Complex inv_cosh(Complex w) {
    if (w.real() < 0.0) w = -w;
    const Complex e = std::exp(-w);
    return 2.0 * e / (1.0 + e * e);
}

Complex cosh_ratio(Complex w, double x) {
    if (std::abs(x) > 1.0 + 1e-12)
        throw EvalDomainError("cosh_ratio requires |x| <= 1");
    if (w.real() < 0.0) w = -w;
    return (std::exp((x - 1.0) * w) + std::exp(-(x + 1.0) * w)) /
           (1.0 + std::exp(-2.0 * w));
}

Complex sinh_ratio(Complex w, double x) {
    if (std::abs(x) > 1.0 + 1e-12)
        throw EvalDomainError("sinh_ratio requires |x| <= 1");
    double sign = 1.0;
    if (w.real() < 0.0) {
        w = -w;
        sign = -1.0;
    }
    return sign * (std::exp((x - 1.0) * w) - std::exp(-(x + 1.0) * w)) /
           (1.0 + std::exp(-2.0 * w));
}

}  // namespace plasmode
