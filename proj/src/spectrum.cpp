#include "plasmode/spectrum.hpp"

#include "plasmode/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace plasmode {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex G_of(double mu, const DerivedConstants& dc) {
    if (mu == 0.0) return 1.0;
    const auto bp = lambda_boundary(mu, dc);
    return bp.plus / bp.minus;
}

struct ArgTracker {
    double theta = 0.0;
    double min_g = 1.0;   // min over nodes of min(|G|, 1/|G|)
    std::size_t points = 0;
    bool budget_hit = false;
    bool bad_value = false;

    void note(const Complex& G) {
        const double a = std::abs(G);
        if (!std::isfinite(a)) {
            bad_value = true;
            return;
        }
        min_g = std::min(min_g, std::min(a, a > 0.0 ? 1.0 / a : 0.0));
        ++points;
    }
};

// A step is trusted when it turns by less than pi/2 and G does not change by
// an O(1) relative amount; the latter catches arcs that pass close to the
// origin between nodes (the curve-L signature).
bool step_trusted(const Complex& Ga, const Complex& Gb, double dphi) {
    if (std::abs(dphi) > kPi / 2.0) return false;
    return std::abs(Gb - Ga) <= 0.5 * (std::abs(Ga) + std::abs(Gb));
}

void track_segment(const DerivedConstants& dc, double mu_a, Complex Ga,
                   double mu_b, Complex Gb, int depth, ArgTracker& tr) {
    const double dphi = std::arg(Gb / Ga);
    if (step_trusted(Ga, Gb, dphi) || depth >= 48) {
        if (depth >= 48) tr.budget_hit = true;
        tr.theta += dphi;
        return;
    }
    const double mid = 0.5 * (mu_a + mu_b);
    const Complex Gm = G_of(mid, dc);
    tr.note(Gm);
    track_segment(dc, mu_a, Ga, mid, Gm, depth + 1, tr);
    track_segment(dc, mid, Gm, mu_b, Gb, depth + 1, tr);
}

struct NewtonOutcome {
    Complex z{};
    double residual = 0.0;
    bool converged = false;
    std::vector<Complex> trail;
};

bool too_close_to_cut(Complex z, double band) {
    const double x = z.real(), y = std::abs(z.imag());
    if (std::abs(x) <= 1.0) return y < band;
    return std::hypot(std::abs(x) - 1.0, y) < band;
}

NewtonOutcome newton_zero(const DerivedConstants& dc, Complex seed,
                          int max_iter = 100) {
    NewtonOutcome out;
    Complex z = seed;
    out.trail.push_back(z);
    double fz = std::abs(lambda(z, dc));
    for (int it = 0; it < max_iter; ++it) {
        if (too_close_to_cut(z, 1e-10)) return out;  // fell onto the cut
        const Complex f = lambda(z, dc);
        const Complex fp = lambda_prime(z, dc);
        if (std::abs(fp) < 1e-300) return out;
        Complex step = f / fp;
        const double cap = 0.5 * (1.0 + std::abs(z));
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        // backtrack until the residual does not grow
        Complex znew = z - step;
        for (int bt = 0; bt < 10; ++bt) {
            if (too_close_to_cut(znew, 1e-10)) {
                step *= 0.5;
                znew = z - step;
                continue;
            }
            if (std::abs(lambda(znew, dc)) <= fz || std::abs(step) < 1e-15)
                break;
            step *= 0.5;
            znew = z - step;
        }
        z = znew;
        fz = std::abs(lambda(z, dc));
        out.trail.push_back(z);
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    if (too_close_to_cut(z, 1e-8)) return out;
    out.residual = std::abs(lambda(z, dc));
    out.converged = out.residual < 1e-12;
    out.z = z;
    return out;
}

// Deterministic fallback seeds: coarse |lambda| scan over a quarter-plane box
// catching zeros that hug the cut, where the asymptotic seed is useless.
std::vector<Complex> grid_seed_candidates(const DerivedConstants& dc, int keep = 6) {
    std::vector<std::pair<double, Complex>> scored;
    for (double x = 0.0; x <= 4.0; x += 0.08) {
        for (double y = -2.0; y <= 2.0; y += 0.08) {
            const Complex z(x, y);
            if (too_close_to_cut(z, 0.03)) continue;
            scored.push_back({std::abs(lambda(z, dc)), z});
        }
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Complex> seeds;
    for (const auto& [score, z] : scored) {
        bool close = false;
        for (const Complex& s : seeds)
            if (std::abs(s - z) < 0.3) close = true;
        if (!close) seeds.push_back(z);
        if (static_cast<int>(seeds.size()) >= keep) break;
    }
    return seeds;
}

Complex normalize_zero_sign(Complex z) {
    if (z.real() < 0.0 || (std::abs(z.real()) < 1e-14 && z.imag() < 0.0))
        return -z;
    return z;
}

}  // namespace

std::string to_string(Region r) {
    switch (r) {
        case Region::DPlus: return "D+";
        case Region::DMinus: return "D-";
        case Region::NearL: return "near-L";
    }
    return "?";
}

WindingScan winding_scan(const DerivedConstants& dc, int initial_grid) {
    WindingScan scan;
    const double mu_max = 1.0 - 1e-12;
    const int n = std::max(8, initial_grid);

    ArgTracker tr;
    double mu_prev = 0.0;
    Complex G_prev = 1.0;  // G(0) = 1 exactly
    tr.note(G_prev);
    for (int i = 1; i <= n; ++i) {
        const double mu = mu_max * double(i) / double(n);
        const Complex G = G_of(mu, dc);
        tr.note(G);
        track_segment(dc, mu_prev, G_prev, mu, G, 0, tr);
        mu_prev = mu;
        G_prev = G;
    }

    // G -> 1 as mu -> 1; close the argument along the tail, where G stays
    // inside the unit disc around 1 and cannot wind further.
    bool tail_ok = std::abs(G_prev - 1.0) < 0.95;
    const double total = tr.theta - std::arg(G_prev);

    const double frac = total / kTwoPi;
    scan.kappa = static_cast<int>(std::lround(frac));
    scan.closure_error = std::abs(frac - scan.kappa);
    scan.min_abs_g = tr.min_g;
    scan.points = tr.points;
    scan.near_curve = tr.budget_hit || tr.bad_value || !tail_ok ||
                      scan.closure_error > 1e-6 || tr.min_g < 1e-4;
    return scan;
}

int winding_index(const DerivedConstants& dc) {
    const WindingScan scan = winding_scan(dc);
    if (scan.near_curve)
        throw NearCurveError("winding scan flags parameters near the curve L");
    return scan.kappa;
}

Complex find_eta0(const DerivedConstants& dc) {
    const Complex seed = std::sqrt(-dc.lambda2 / dc.lambda_inf);
    std::vector<Complex> seeds = {seed, -seed};
    NewtonOutcome best;
    bool tried_grid = false;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const NewtonOutcome out = newton_zero(dc, seeds[i]);
        if (out.converged) {
            best = out;
            break;
        }
        if (best.trail.empty()) best = out;
        if (i + 1 == seeds.size() && !tried_grid) {
            tried_grid = true;
            for (const Complex& g : grid_seed_candidates(dc)) seeds.push_back(g);
        }
    }
    if (!best.converged) {
        std::ostringstream msg;
        msg << "Newton iteration for the Debye zero failed; trail:";
        const auto& t = best.trail;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i < 4 || i + 3 > t.size())
                msg << " (" << t[i].real() << "," << t[i].imag() << ")";
            else if (i == 4)
                msg << " ...";
        }
        throw ConvergenceError(msg.str());
    }
    return normalize_zero_sign(best.z);
}

SpectrumResult analyze_spectrum(const DerivedConstants& dc) {
    SpectrumResult res;
    const WindingScan scan = winding_scan(dc);
    res.kappa = scan.kappa;
    res.zero_count = 2 * scan.kappa;
    if (scan.near_curve) {
        res.region = Region::NearL;
        return res;
    }
    if (scan.kappa == 0) {
        res.region = Region::DMinus;
        return res;
    }
    if (scan.kappa == 1) {
        try {
            const Complex eta0 = find_eta0(dc);
            res.eta0 = eta0;
            res.residual = std::abs(lambda(eta0, dc));
            res.region = Region::DPlus;
        } catch (const ConvergenceError&) {
            res.region = Region::NearL;
        }
        return res;
    }
    // kappa >= 2 does not occur for this dispersion family away from L;
    // treat it as a refused borderline case.
    res.region = Region::NearL;
    return res;
}

double mu_star() {
    static const double value = [] {
        double lo = 0.5, hi = 0.999999;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (lambda0(mid) > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return value;
}

GParts g_decomposition(double mu, double Omega, double eps) {
    const double l0 = lambda0(mu);
    const double s = kPi * mu / 2.0;
    const double e3 = eps * eps - 3.0 * mu * mu;
    const double A = Omega * Omega - l0 * e3;
    const double B = eps * Omega * (1.0 + l0);
    const double Pp = A + eps * Omega * s;
    const double Pm = A - eps * Omega * s;
    const double Qp = B + s * e3;
    const double Qm = B - s * e3;
    GParts parts;
    parts.g = Pp * Pp + Qp * Qp;
    parts.g1 = Pp * Pm + Qp * Qm;
    parts.g2 = Pp * Qm - Pm * Qp;
    return parts;
}

CurveLPoint curve_l_point(double mu) {
    const double ms = mu_star();
    if (!(mu > ms && mu < 1.0))
        throw EvalDomainError("curve L is parametrized by mu in (mu*, 1)");
    const double l0 = lambda0(mu);  // negative on (mu*, 1)
    const double s2 = kPi * mu / 2.0 * (kPi * mu / 2.0);
    const double D = s2 + (1.0 + l0) * (1.0 + l0);
    const double L2 = -3.0 * mu * mu * s2 / (l0 * D);
    const double q = s2 + l0 * (1.0 + l0);
    const double L1 = -3.0 * mu * mu * q * q / (l0 * D);
    if (!(L1 >= 0.0 && L2 >= 0.0))
        throw EvalDomainError("negative radicand on the curve L");
    return {mu, std::sqrt(L1), std::sqrt(L2)};
}

std::vector<CurveLPoint> trace_curve_l(const std::vector<double>& mu_samples) {
    std::vector<CurveLPoint> pts;
    pts.reserve(mu_samples.size());
    for (double mu : mu_samples) pts.push_back(curve_l_point(mu));
    return pts;
}

std::vector<CurveLPoint> trace_curve_l(int samples) {
    if (samples < 1) throw EvalDomainError("need at least one curve sample");
    const double ms = mu_star();
    std::vector<double> grid;
    grid.reserve(samples);
    for (int j = 0; j < samples; ++j)
        grid.push_back(ms + (1.0 - ms) * double(j + 1) / double(samples + 1));
    return trace_curve_l(grid);
}

std::vector<Complex> multistart_zeros(const DerivedConstants& dc, int seeds,
                                      double radius) {
    // circle seeds, the asymptotic seed pair, and near-cut grid fallbacks;
    // zeros come in +- pairs, so symmetric seeding finds both partners
    std::vector<Complex> starts;
    for (int j = 0; j < seeds; ++j) {
        const double theta = kTwoPi * (j + 0.5) / seeds;
        starts.push_back(radius * Complex(std::cos(theta), std::sin(theta)));
    }
    const Complex asym = std::sqrt(-dc.lambda2 / dc.lambda_inf);
    starts.push_back(asym);
    starts.push_back(-asym);
    for (const Complex& g : grid_seed_candidates(dc)) {
        starts.push_back(g);
        starts.push_back(-g);
    }

    std::vector<Complex> zeros;
    for (const Complex& s0 : starts) {
        const NewtonOutcome out = newton_zero(dc, s0);
        if (!out.converged) continue;
        if (std::abs(out.z) > 1e3) continue;
        bool dup = false;
        for (const Complex& z : zeros)
            if (std::abs(z - out.z) < 1e-6) dup = true;
        if (!dup) zeros.push_back(out.z);
    }
    std::sort(zeros.begin(), zeros.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return zeros;
}

}  // namespace plasmode
