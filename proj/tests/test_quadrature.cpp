// Adaptive Gauss-Kronrod integrator.

#include <doctest.h>

#include <array>
#include <cmath>

#include "trichain/quadrature.hpp"

using namespace trichain;

TEST_CASE("known integrals") {
    QuadratureSettings qs;
    qs.abs_tol = 1e-13;
    qs.rel_tol = 1e-12;

    auto gauss = [](double x) { return std::array<double, 1>{std::exp(-x * x)}; };
    CHECK(integrate_adaptive<1>(gauss, -8.0, 8.0, {}, qs)[0] ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));

    auto runge = [](double x) {
        return std::array<double, 1>{1.0 / (1.0 + 25.0 * x * x)};
    };
    CHECK(integrate_adaptive<1>(runge, -1.0, 1.0, {}, qs)[0] ==
          doctest::Approx(2.0 / 5.0 * std::atan(5.0)).epsilon(1e-12));
}

TEST_CASE("narrow Lorentzian resolved through a breakpoint") {
    QuadratureSettings qs;
    qs.abs_tol = 1e-12;
    qs.rel_tol = 1e-10;
    const double w0 = 1.0, width = 1e-5;
    auto peak = [&](double x) {
        const double d = x - w0;
        return std::array<double, 1>{width / (d * d + width * width)};
    };
    const double got = integrate_adaptive<1>(peak, 0.0, 100.0, {w0}, qs)[0];
    const double exact =
        std::atan((100.0 - w0) / width) + std::atan(w0 / width);
    CHECK(got == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("semi-infinite tail via 1/w substitution") {
    QuadratureSettings qs;
    qs.abs_tol = 1e-14;
    qs.rel_tol = 1e-12;
    auto f = [](double w) { return std::array<double, 1>{1.0 / (w * w * w)}; };
    // Int_a^inf w^-3 = 1/(2 a^2)
    CHECK(integrate_tail<1>(f, 5.0, qs)[0] ==
          doctest::Approx(1.0 / 50.0).epsilon(1e-12));

    auto g = [](double w) {
        return std::array<double, 1>{std::exp(-w) * (1.0 + 1.0 / w)};
    };
    // Int_1^inf e^-w (1 + 1/w) dw = 1/e + E1(1)
    const double ref = std::exp(-1.0) + 0.219383934395520274;
    CHECK(integrate_tail<1>(g, 1.0, qs)[0] == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("vector integrands and failure reporting") {
    QuadratureSettings qs;
    qs.abs_tol = 1e-12;
    qs.rel_tol = 1e-10;
    auto f = [](double x) {
        return std::array<double, 3>{std::sin(x), std::cos(x), x};
    };
    const auto val = integrate_adaptive<3>(f, 0.0, M_PI, {}, qs);
    CHECK(val[0] == doctest::Approx(2.0));
    CHECK(val[1] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(val[2] == doctest::Approx(M_PI * M_PI / 2.0));

    QuadratureSettings tiny;
    tiny.abs_tol = 1e-300;
    tiny.rel_tol = 1e-16;
    tiny.max_panels = 10;
    auto hard = [](double x) {
        return std::array<double, 1>{std::sin(200.0 * x) / (1e-8 + x * x)};
    };
    CHECK_THROWS_AS(integrate_adaptive<1>(hard, 0.0, 10.0, {}, tiny),
                    QuadratureError);
}

TEST_CASE("settings validation") {
    QuadratureSettings qs;
    qs.ceiling_multiplier = 2.0;
    CHECK_THROWS_AS(qs.validate(), ParameterError);
    qs = {};
    qs.abs_tol = 0.0;
    CHECK_THROWS_AS(qs.validate(), ParameterError);
}
