#include "plasmode/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace plasmode {

namespace {

// Gauss-Kronrod 7/15 abscissae (positive half) and weights; the Gauss-7
// nodes are the odd-indexed entries plus the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0, b = 0.0;
    Complex integral{};
    double err = 0.0;
};

Panel evaluate_panel(const Integrand& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double centre = 0.5 * (a + b);

    const Complex fc = f(centre);
    Complex resk = kWgk[7] * fc;
    Complex resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);

    std::array<Complex, 15> fv;
    fv[14] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const Complex f1 = f(centre - dx);
        const Complex f2 = f(centre + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }

    const Complex mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));

    Panel panel;
    panel.a = a;
    panel.b = b;
    panel.integral = resk * h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs(resk - resg) * std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    panel.err = std::max(err, round);
    return panel;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureOptions& opts) {
    QuadratureResult result;
    if (a == b) return result;
    if (a > b) {
        result = integrate(f, b, a, opts);
        result.value = -result.value;
        return result;
    }

    auto cmp = [](const Panel& l, const Panel& r) { return l.err < r.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);

    std::vector<std::pair<double, double>> initial;
    if (opts.split_at_zero && a < 0.0 && 0.0 < b) {
        initial.push_back({a, 0.0});
        initial.push_back({0.0, b});
    } else {
        initial.push_back({a, b});
    }

    Complex total = 0.0;
    double total_err = 0.0;
    std::size_t evals = 0, panels = 0;
    for (auto [pa, pb] : initial) {
        Panel p = evaluate_panel(f, pa, pb);
        evals += 15;
        ++panels;
        total += p.integral;
        total_err += p.err;
        heap.push(p);
    }

    const double width_floor =
        64.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b) + 1.0);
    double frozen_err = 0.0;  // panels too narrow to split further

    while (total_err + frozen_err > opts.tol * std::max(1.0, std::abs(total))) {
        if (panels >= opts.max_panels || heap.empty()) {
            result.converged = false;
            break;
        }
        Panel worst = heap.top();
        heap.pop();
        if (worst.b - worst.a < width_floor) {
            total_err -= worst.err;
            frozen_err += worst.err;
            continue;
        }
        total -= worst.integral;
        total_err -= worst.err;

        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        evals += 30;
        ++panels;
        total += left.integral + right.integral;
        total_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
    }
    total_err += frozen_err;

    result.value = total;
    result.error_estimate = total_err;
    result.evaluations = evals;
    return result;
}

Complex integrate_or_throw(const Integrand& f, double a, double b,
                           const QuadratureOptions& opts) {
    const QuadratureResult r = integrate(f, a, b, opts);
    if (!r.converged)
        throw ConvergenceError("adaptive quadrature did not converge; estimate " +
                               std::to_string(r.error_estimate));
    return r.value;
}

QuadratureResult integrate_pv(const Integrand& f, double s, double a, double b,
                              const QuadratureOptions& opts) {
    if (!(a < s && s < b))
        throw EvalDomainError("principal-value pole must lie inside (a, b)");
    const double dist = std::min(s - a, b - s);
    if (dist < 1e-8)
        throw EvalDomainError("principal-value pole too close to an endpoint");

    QuadratureOptions inner = opts;
    inner.tol = opts.tol * 0.1;

    QuadratureResult result;

    const double delta0 = 0.5 * dist;
    QuadratureResult left = integrate(f, a, s - delta0, inner);
    QuadratureResult right = integrate(f, s + delta0, b, inner);
    result.evaluations += left.evaluations + right.evaluations;
    result.converged = left.converged && right.converged;
    const Complex outer = left.value + right.value;
    double err_outer = left.error_estimate + right.error_estimate;

    // Excised integrals I(delta_j), delta_j = delta0 / 2^j, extrapolated in
    // delta: the excision error is c1 delta + c3 delta^3 + ...
    constexpr int kMaxLevels = 22;
    std::vector<Complex> row;  // Richardson tableau, current diagonal
    Complex shells = 0.0;
    Complex best = outer;
    double best_err = err_outer;
    double delta = delta0;
    bool settled = false;

    for (int j = 0; j < kMaxLevels; ++j) {
        if (j > 0) {
            const double lo = delta * 0.5;
            QuadratureResult sl = integrate(f, s - delta, s - lo, inner);
            QuadratureResult sr = integrate(f, s + lo, s + delta, inner);
            result.evaluations += sl.evaluations + sr.evaluations;
            result.converged = result.converged && sl.converged && sr.converged;
            shells += sl.value + sr.value;
            delta = lo;
        }
        // Neville update with error exponents 1, 3, 5, ...
        Complex value = outer + shells;
        std::vector<Complex> next(row.size() + 1);
        next[0] = value;
        for (std::size_t m = 1; m < next.size(); ++m) {
            const double factor = std::pow(2.0, double(2 * m - 1));
            next[m] = next[m - 1] + (next[m - 1] - row[m - 1]) / (factor - 1.0);
        }
        if (!row.empty()) {
            const double diff = std::abs(next.back() - row.back());
            best = next.back();
            best_err = diff;
            if (diff <= opts.tol * std::max(1.0, std::abs(best)) && j >= 3) {
                row = std::move(next);
                settled = true;
                break;
            }
        }
        row = std::move(next);
    }

    result.value = best;
    result.error_estimate = best_err;
    result.converged = result.converged && settled;
    return result;
}

SeriesResult sum_symmetric_series(const std::function<Complex(int)>& term,
                                  const SeriesOptions& opts) {
    SeriesResult out;
    Complex sum = 0.0;
    int streak = 0;
    for (int k = 0; k < opts.max_terms; ++k) {
        const Complex t = term(k);
        sum += t;
        ++out.terms;
        const double scale = std::max(std::abs(sum), 1e-300);
        if (std::abs(t) <= opts.tol * scale) {
            if (++streak >= 3) {
                out.value = 2.0 * sum;
                return out;
            }
        } else {
            streak = 0;
        }
    }
    out.value = 2.0 * sum;
    out.converged = false;
    return out;
}

}  // namespace plasmode
