#include "plasmode/spectrum.hpp"

#include "plasmode/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace plasmode;

namespace {
const PlasmaParams kP1{0.5, 0.2, 5.0, 0.5};
}

TEST_CASE("mu_star is the root of the Case function") {
    // independent bisection oracle
    double lo = 0.5, hi = 0.99;
    REQUIRE(lambda0(lo) > 0.0);
    REQUIRE(lambda0(hi) < 0.0);
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (lambda0(mid) > 0.0 ? lo : hi) = mid;
    }
    const double oracle = 0.5 * (lo + hi);
    CHECK(std::abs(mu_star() - oracle) < 1e-12);
    CHECK(std::abs(mu_star() - 0.833557) < 1e-5);
    CHECK(std::abs(lambda0(mu_star())) < 1e-12);
}

TEST_CASE("winding scan endpoints and stability") {
    const DerivedConstants dc = derive(kP1);

    // G(0) = 1 and G -> 1 towards the cut end
    const auto near0 = lambda_boundary(1e-9, dc);
    CHECK(std::abs(near0.plus / near0.minus - 1.0) < 1e-6);
    const auto near1 = lambda_boundary(1.0 - 1e-12, dc);
    CHECK(std::abs(near1.plus / near1.minus - 1.0) < 1.0);

    const WindingScan coarse = winding_scan(dc, 64);
    const WindingScan fine = winding_scan(dc, 128);
    CHECK(coarse.kappa == fine.kappa);  // integer-stable under refinement
    CHECK(coarse.closure_error < 1e-6);
    CHECK_FALSE(coarse.near_curve);
    CHECK(coarse.kappa == 1);

    for (auto [om, ep] : {std::pair{5.0, 2.0}, {1.5, 0.5}, {0.3, 0.05}}) {
        const DerivedConstants d = derive({om, ep, 5.0, 0.5});
        CHECK(winding_scan(d, 64).kappa == winding_scan(d, 128).kappa);
    }
}

TEST_CASE("Debye zero at the reference point") {
    const DerivedConstants dc = derive(kP1);
    const SpectrumResult res = analyze_spectrum(dc);
    CHECK(res.region == Region::DPlus);
    CHECK(res.kappa == 1);
    CHECK(res.zero_count == 2);
    REQUIRE(res.eta0.has_value());
    const Complex eta0 = *res.eta0;
    CHECK(eta0.real() > 0.0);  // sign convention
    CHECK(std::abs(eta0 - Complex(0.177781520325, -0.387964643433)) < 1e-9);
    CHECK(res.residual < 1e-12);
    CHECK(std::abs(lambda(-eta0, dc)) < 1e-12);  // evenness
    // simple zero
    CHECK(std::abs(lambda_prime(eta0, dc)) > 1e-10);
}

TEST_CASE("winding cross-validates the multistart zero count") {
    for (auto [om, ep] : {std::pair{0.5, 0.2}, {0.3, 0.05}, {1.5, 0.5},
                          {2.0, 1.0}, {5.0, 2.0}, {3.0, 2.0}}) {
        const DerivedConstants dc = derive({om, ep, 5.0, 0.5});
        const WindingScan scan = winding_scan(dc);
        REQUIRE_FALSE(scan.near_curve);
        const auto zeros = multistart_zeros(dc);
        CHECK(static_cast<int>(zeros.size()) == 2 * scan.kappa);
        for (const Complex& z : zeros) CHECK(std::abs(lambda(z, dc)) < 1e-12);
        // zeros pair up by sign
        if (zeros.size() == 2) CHECK(std::abs(zeros[0] + zeros[1]) < 1e-9);
    }
}

TEST_CASE("asymptotic Newton seed") {
    // in the large-|eta0| regime the two-term seed already sits close
    for (auto [om, ep] : {std::pair{1.01, 0.02}, {1.005, 0.01}, {1.02, 0.02}}) {
        const DerivedConstants dc = derive({om, ep, 5.0, 0.5});
        const Complex seed = std::sqrt(-dc.lambda2 / dc.lambda_inf);
        CHECK(std::abs(lambda(seed, dc)) < std::abs(dc.lambda_inf) / 10.0);
    }
    // everywhere in D+ the seeded iteration must land on the zero
    for (auto [om, ep] : {std::pair{0.5, 0.2}, {0.9, 0.4}, {1.5, 0.05}}) {
        const DerivedConstants dc = derive({om, ep, 5.0, 0.5});
        const Complex eta0 = find_eta0(dc);
        CHECK(std::abs(lambda(eta0, dc)) < 1e-12);
    }
}

TEST_CASE("zero hugging the cut end is still found") {
    const DerivedConstants dc = derive({2.0, 1.0, 5.0, 0.5});
    const SpectrumResult res = analyze_spectrum(dc);
    REQUIRE(res.region == Region::DPlus);
    CHECK(std::abs(*res.eta0 - Complex(1.0077142646, 0.0137808293)) < 1e-8);
}

TEST_CASE("curve L") {
    const auto pts = trace_curve_l(50);
    REQUIRE(pts.size() == 50);
    const double ms = mu_star();
    for (const auto& p : pts) {
        CHECK(p.mu > ms);
        CHECK(p.mu < 1.0);
        CHECK(p.Omega > 0.0);
        CHECK(p.eps > 0.0);
        const GParts g = g_decomposition(p.mu, p.Omega, p.eps);
        CHECK(std::abs(g.g1) < 1e-9 * g.g);  // self-substitution residuals
        CHECK(std::abs(g.g2) < 1e-9 * g.g);
    }
    CHECK_THROWS_AS(curve_l_point(0.5), EvalDomainError);
    CHECK_THROWS_AS(curve_l_point(1.0), EvalDomainError);

    // G from the real decomposition matches the boundary-value ratio
    const DerivedConstants dc = derive(kP1);
    for (double mu : {0.2, 0.55, 0.85}) {
        const GParts g = g_decomposition(mu, kP1.omega, kP1.eps);
        const auto bp = lambda_boundary(mu, dc);
        const Complex G_ratio = bp.plus / bp.minus;
        const Complex G_parts = Complex(g.g1, g.g2) / g.g;
        CHECK(std::abs(G_ratio - G_parts) < 1e-12);
    }
}

TEST_CASE("index flips across the curve and the curve itself is refused") {
    const CurveLPoint p = curve_l_point(0.96);
    // exactly on the curve: the scan digs into the zero of G and flags it
    const WindingScan on = winding_scan(derive({p.Omega, p.eps, 5.0, 0.5}));
    CHECK(on.near_curve);
    CHECK(on.min_abs_g < 1e-6);

    // transversal offsets flip the index between 1 and 0
    const CurveLPoint pa = curve_l_point(0.956), pb = curve_l_point(0.964);
    const double tx = pb.Omega - pa.Omega, ty = pb.eps - pa.eps;
    const double nrm = std::hypot(tx, ty);
    const double nx = -ty / nrm, ny = tx / nrm;
    const double d = 0.02 * std::hypot(p.Omega, p.eps);
    const WindingScan inner =
        winding_scan(derive({p.Omega - d * nx, p.eps - d * ny, 5.0, 0.5}));
    const WindingScan outer =
        winding_scan(derive({p.Omega + d * nx, p.eps + d * ny, 5.0, 0.5}));
    CHECK_FALSE(inner.near_curve);
    CHECK_FALSE(outer.near_curve);
    CHECK(inner.kappa + outer.kappa == 1);  // one side 1, other side 0
}

TEST_CASE("degenerate zero-frequency parameters are refused") {
    // at Omega = 0 the dispersion zeros sit exactly on the cut
    const SpectrumResult res = analyze_spectrum(derive({0.0, 0.5, 5.0, 0.0}));
    CHECK(res.region == Region::NearL);
}

TEST_CASE("region names") {
    CHECK(to_string(Region::DPlus) == "D+");
    CHECK(to_string(Region::DMinus) == "D-");
    CHECK(to_string(Region::NearL) == "near-L");
}
