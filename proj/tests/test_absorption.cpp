#include "plasmode/absorption.hpp"

#include "plasmode/quadrature.hpp"
#include "plasmode/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace plasmode;

namespace {
const PlasmaParams kP1{0.5, 0.2, 5.0, 0.5};

Complex t_pole(const DerivedConstants& dc, int k) {
    return 2.0 * dc.w0 * Complex(0.0, 1.0) / (std::numbers::pi * (2.0 * k + 1.0));
}
}  // namespace

TEST_CASE("residue-series poles stay off the cut and the tail is quartic") {
    const DerivedConstants dc = derive(kP1);
    for (int k : {0, 1, 5, 100, 100000}) {
        const Complex t = t_pole(dc, k);
        CHECK(t.imag() > 0.0);
        // pairing partner
        CHECK(std::abs(t_pole(dc, -k - 1) + t) < 1e-15);
    }
    // the dispersion function at the far poles approaches its value at 0,
    // linearly in t with slope i pi/(2 z0)
    {
        const Complex t = t_pole(dc, 100000);
        CHECK(std::abs(lambda(t, dc) - 1.0) < 1e-4);
        const Complex linear = Complex(0.0, std::numbers::pi) * t / (2.0 * dc.z0);
        CHECK(std::abs(lambda(t, dc) - 1.0 - linear) < 0.1 * std::abs(linear));
    }

    // remainder after K terms decays like K^-3
    auto term = [&](int k) {
        const Complex t = t_pole(dc, k);
        const Complex t2 = t * t;
        return t2 * t2 / (lambda(t, dc) * (t2 - dc.eta1_sq));
    };
    Complex full = 0.0;
    const int kmax = 1000000;
    std::vector<int> marks = {100, 200, 400, 800};
    std::vector<Complex> partial(marks.size());
    for (int k = 0; k < kmax; ++k) {
        full += term(k);
        for (std::size_t i = 0; i < marks.size(); ++i)
            if (k + 1 == marks[i]) partial[i] = full;
    }
    std::vector<double> rem;
    for (const Complex& p : partial) rem.push_back(std::abs(full - p));
    for (std::size_t i = 0; i + 1 < rem.size(); ++i) {
        const double slope = std::log2(rem[i + 1] / rem[i]);  // per doubling of K
        CHECK(slope < -2.5);
        CHECK(slope > -3.5);
    }

    // truncated engine against the megaterm brute force
    SeriesOptions opts;
    opts.tol = 1e-15;
    const SeriesResult s = sum_symmetric_series(term, opts);
    CHECK(s.converged);
    CHECK(std::abs(s.value - 2.0 * full) / std::abs(s.value) < 1e-10);
}

TEST_CASE("J1 series route against direct quadrature") {
    const DerivedConstants dc = derive(kP1);
    const auto sp = analyze_spectrum(dc);
    const J1SeriesResult series = J1_series(dc, sp.eta0, 1e-15);
    const Complex quad = J1_absorb_quadrature(dc, 1e-11);
    CHECK(std::abs(series.value - quad) / std::abs(series.value) < 1e-7);
    CHECK(series.terms > 100);
}

TEST_CASE("J0 quadrature") {
    const DerivedConstants dc = derive(kP1);

    // the integrand pieces saturate at eta -> 0+: tanh -> 1, T1 -> 1,
    // lambda+ lambda- -> 1, so the integrand vanishes like eta^2
    const double eta = 1e-4;
    CHECK(std::abs(tanh_safe(dc.w0 / eta) - 1.0) < 1e-12);
    CHECK(std::abs(T1_cut(eta, dc) - 1.0) < 1e-3);
    CHECK(std::abs(lambda_pm_product(eta, dc) - 1.0) < 1e-3);

    const Complex j0 = J0_quadrature(dc, 1e-10);
    const Complex j0_fine = J0_quadrature(dc, 1e-12);
    CHECK(std::abs(j0 - j0_fine) < 1e-9);  // resolution doubling stability

    // brute-force fixed-grid oracle (composite Simpson over the half line)
    auto f = [&](double x) {
        return x * x * T1_cut(x, dc) * tanh_safe(dc.w0 / x) /
               lambda_pm_product(x, dc);
    };
    const int n = 1000000;
    const double h = 1.0 / n;
    Complex simpson = 0.0;  // integrand vanishes at both ends
    for (int i = 1; i < n; ++i) simpson += (i % 2 ? 4.0 : 2.0) * f(i * h);
    simpson *= h / 3.0;
    simpson /= dc.c;  // (1/2c) * 2 * half-line integral
    CHECK(std::abs(j0 - simpson) < 1e-8);
}

TEST_CASE("triple-route absorption at the reference point") {
    const SolutionCoefficients sol = solve(kP1);
    const AbsorptionResult res = compute_absorption(sol, true);
    CHECK(res.agreement < 1e-6);
    CHECK(res.Q0 >= 0.0);
    CHECK(res.Q0 == -res.Q1_closed.imag());
    CHECK(res.series_terms > 0);
    // pairwise, spelled out
    CHECK(std::abs(res.Q1_quadrature - res.Q1_spatial) /
              std::abs(res.Q1_closed) <
          1e-6);
    CHECK(std::abs(res.Q1_closed - res.Q1_spatial) / std::abs(res.Q1_closed) <
          1e-6);
}

TEST_CASE("absorption continuity into the specular limit") {
    const AbsorptionResult a0 = compute_absorption(solve({0.5, 0.2, 5.0, 0.0}), false);
    const AbsorptionResult a1 =
        compute_absorption(solve({0.5, 0.2, 5.0, 1e-6}), false);
    CHECK(std::abs(a0.Q0 - a1.Q0) < 1e-6);  // differs by O(alpha_p)
    CHECK(a0.Q0 > 0.0);
}

TEST_CASE("forced truncation keeps the routes consistent") {
    // dropping the Debye and accommodation terms from both routes at once
    SolutionCoefficients sol = solve(kP1);
    sol.A1_tilde = 0.0;
    sol.E0 = 0.0;
    sol.debye_pair = 0.0;
    sol.C1 = sol.E_inf * sol.dc.lambda_inf;
    const AbsorptionResult res = compute_absorption(sol, false);
    CHECK(std::abs(res.Q1_closed - res.Q1_quadrature) /
              std::abs(res.Q1_closed) <
          1e-8);
}

TEST_CASE("absorption in the no-mode region") {
    const SolutionCoefficients sol = solve({5.0, 2.0, 5.0, 0.5});
    const AbsorptionResult res = compute_absorption(sol, true);
    CHECK(res.agreement < 1e-6);
    CHECK(res.Q0 >= 0.0);
}
