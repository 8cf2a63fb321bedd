#pragma once

#include "plasmode/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plasmode {

enum class Region { DPlus, DMinus, NearL };

std::string to_string(Region r);

// Continuous-argument scan of G(mu) = lambda_plus/lambda_minus over [0, 1].
// G(0) = 1 and G(mu -> 1) -> 1, so the accumulated argument closes on an
// integer multiple of 2 pi; that integer is the index kappa.
struct WindingScan {
    int kappa = 0;
    double closure_error = 0.0;  // |total/(2 pi) - kappa|
    double min_abs_g = 0.0;      // min of |G| and 1/|G| seen; 0 exactly on L
    std::size_t points = 0;      // evaluations used
    bool near_curve = false;
};

WindingScan winding_scan(const DerivedConstants& dc, int initial_grid = 64);

// Convenience: kappa from winding_scan; throws NearCurveError when flagged.
int winding_index(const DerivedConstants& dc);

// Debye zero with Re eta0 > 0, located by Newton iteration on lambda with
// the analytic derivative, seeded at sqrt(-lambda2/lambda_inf).  Throws
// ConvergenceError (with the iterate trail) on failure or when the iteration
// collapses onto the cut.
Complex find_eta0(const DerivedConstants& dc);

struct SpectrumResult {
    int kappa = 0;
    int zero_count = 0;  // N = 2 kappa
    std::optional<Complex> eta0;
    double residual = 0.0;  // |lambda(eta0)|
    Region region = Region::DMinus;
};

SpectrumResult analyze_spectrum(const DerivedConstants& dc);

// Unique root of lambda0 in (0, 1); left edge of the curve-L parameter range.
double mu_star();

// Real/imaginary decomposition G = (g1 + i g2)/g built from
//   P+- = Omega^2 - lambda0 (eps^2 - 3 mu^2) +- eps Omega s,
//   Q+- = eps Omega (1 + lambda0) +- s (eps^2 - 3 mu^2),  s = pi mu / 2:
//   g = (P+)^2 + (Q+)^2,  g1 = P+ P- + Q+ Q-,  g2 = P+ Q- - P- Q+.
struct GParts {
    double g = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
};

GParts g_decomposition(double mu, double Omega, double eps);

// A point of the curve L: for mu in (mu*, 1),
//   eps = sqrt(L2(mu)),  Omega = +sqrt(L1(mu)),
//   L2 = -3 mu^2 s^2 / (lambda0 [s^2 + (1+lambda0)^2]),
//   L1 = -3 mu^2 [s^2 + lambda0(1+lambda0)]^2 / (lambda0 [s^2 + (1+lambda0)^2]).
// Both g1 and g2 vanish there.
struct CurveLPoint {
    double mu = 0.0;
    double Omega = 0.0;
    double eps = 0.0;
};

CurveLPoint curve_l_point(double mu);  // throws for mu outside (mu*, 1)
std::vector<CurveLPoint> trace_curve_l(const std::vector<double>& mu_samples);
std::vector<CurveLPoint> trace_curve_l(int samples);  // uniform interior grid

// Newton multistart from `seeds` points on the circle |z| = radius; returns
// the distinct zeros of lambda found off the cut.  Their count equals
// 2 * kappa for parameters away from the curve L.
std::vector<Complex> multistart_zeros(const DerivedConstants& dc,
                                      int seeds = 12, double radius = 2.0);

}  // namespace plasmode
