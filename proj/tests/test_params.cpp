#include "plasmode/params.hpp"

#include <doctest.h>

#include <cmath>

using namespace plasmode;

namespace {
const PlasmaParams kP1{0.5, 0.2, 5.0, 0.5};

double rel(Complex a, Complex b) {
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}
}  // namespace

TEST_CASE("derived constants at the reference point") {
    const DerivedConstants dc = derive(kP1);
    CHECK(rel(dc.w0, Complex(1.0, -2.5)) < 1e-15);
    CHECK(rel(dc.z0, Complex(1.0, -2.5)) < 1e-15);
    CHECK(rel(dc.eta1_sq, Complex(0.2 * 0.2 / 3.0) * Complex(1.0, -2.5)) < 1e-15);
    CHECK(std::abs(dc.eta1_sq.real() - 0.013333333333333) < 1e-12);
    CHECK(std::abs(dc.eta1_sq.imag() + 0.033333333333333) < 1e-12);
    CHECK(std::abs(dc.c.real() + 0.07) < 1e-15);
    CHECK(std::abs(dc.c.imag() + 0.066666666666667) < 1e-12);
    CHECK(std::abs(dc.lambda1.real() - 0.862069) < 1e-6);
    CHECK(std::abs(dc.lambda1.imag() + 0.344828) < 1e-6);
    // lambda_inf = lambda1 + 1/(3c); exact arithmetic gives
    // -1.63495838287 + 2.03329369798i
    CHECK(std::abs(dc.lambda_inf - Complex(-1.63495838287, 2.03329369798)) < 1e-10);
}

TEST_CASE("zero-frequency specialization") {
    const DerivedConstants dc = derive({0.0, 1.0, 1.0, 0.0});
    CHECK(dc.z0 == Complex(1.0, 0.0));
    CHECK(dc.w0 == Complex(1.0, 0.0));
    CHECK(rel(dc.eta1_sq, Complex(1.0 / 3.0)) < 1e-15);
    CHECK(rel(dc.c, Complex(1.0 / 3.0)) < 1e-15);
    CHECK(std::abs(dc.lambda1) < 1e-15);
}

TEST_CASE("internal identities hold over a parameter sweep") {
    for (double omega : {0.0, 0.3, 0.5, 1.0, 1.5, 3.0}) {
        for (double eps : {0.05, 0.2, 0.5, 1.0}) {
            for (double k : {0.5, 1.0, 5.0}) {
                const DerivedConstants dc = derive({omega, eps, k, 0.0});
                // c two ways
                CHECK(rel(dc.c, dc.z0 * dc.eta1_sq) < 1e-14);
                const Complex c_alt = std::pow(Complex(eps, -omega), 2) / 3.0;
                CHECK(rel(dc.c, c_alt) < 1e-14);
                // lambda_inf collapse
                CHECK(rel(dc.lambda_inf, dc.lambda1 + 1.0 / (3.0 * dc.c)) < 1e-14);
                CHECK(dc.w0.real() > 0.0);
                // explicit (Omega, eps) forms of the Laurent coefficients
                const Complex oe(omega, eps);
                const Complex lam_inf_alt =
                    (omega * omega - 1.0 + Complex(0.0, eps * omega)) / (oe * oe);
                const Complex lam2_alt =
                    -(9.0 + 5.0 * Complex(0.0, eps) * oe) / (15.0 * oe * oe);
                const Complex lam4_alt =
                    -(15.0 + 7.0 * Complex(0.0, eps) * oe) / (35.0 * oe * oe);
                CHECK(rel(dc.lambda_inf, lam_inf_alt) < 1e-12);
                CHECK(rel(dc.lambda2, lam2_alt) < 1e-12);
                CHECK(rel(dc.lambda4, lam4_alt) < 1e-12);
                CHECK(rel(lambda_laurent_coeff(dc, 1), dc.lambda2) < 1e-15);
                CHECK(rel(lambda_laurent_coeff(dc, 2), dc.lambda4) < 1e-15);
            }
        }
    }
}

TEST_CASE("parameter domain errors name the offending field") {
    CHECK_THROWS_AS(validate({0.5, 0.0, 5.0, 0.5}), ParamDomainError);
    CHECK_THROWS_AS(validate({0.5, -0.1, 5.0, 0.5}), ParamDomainError);
    CHECK_THROWS_AS(validate({0.5, 0.2, 0.0, 0.5}), ParamDomainError);
    CHECK_THROWS_AS(validate({-0.1, 0.2, 5.0, 0.5}), ParamDomainError);
    CHECK_THROWS_AS(validate({0.5, 0.2, 5.0, 1.5}), ParamDomainError);
    try {
        validate({0.5, -1.0, 5.0, 0.5});
    } catch (const ParamDomainError& e) {
        CHECK(e.field() == "eps");
    }
    try {
        validate({0.5, 0.2, 5.0, -0.25});
    } catch (const ParamDomainError& e) {
        CHECK(e.field() == "alpha_p");
    }
}
