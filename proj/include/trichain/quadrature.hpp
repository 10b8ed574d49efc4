// quadrature.hpp — Adaptive Gauss-Kronrod (G7/K15) panel integration for
// vector-valued integrands, with mandatory breakpoints and a 1/w mapped
// tail for semi-infinite ranges.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "trichain/errors.hpp"

namespace trichain {

struct QuadratureSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_panels = 4000;
    double ceiling_multiplier = 8.0;        // integration ceiling in units of omega_c
    std::vector<double> extra_breakpoints;  // user-supplied resonance positions

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw ParameterError("QuadratureSettings: tolerances must be > 0");
        if (!(ceiling_multiplier >= 4.0))
            throw ParameterError("QuadratureSettings: ceiling multiplier must be >= 4");
        if (max_panels < 8)
            throw ParameterError("QuadratureSettings: max_panels too small");
    }
};

namespace detail {

// Kronrod-15 abscissae on [0,1) plus Gauss-7 and Kronrod-15 weights.
inline constexpr int gk_points = 8;
inline constexpr double gk_x[gk_points] = {
    0.000000000000000000, 0.207784955007898468, 0.405845151377397167,
    0.586087235467691130, 0.741531185599394440, 0.864864423359769073,
    0.949107912342758525, 0.991455371120812639};
inline constexpr double gk_wg[gk_points] = {
    0.417959183673469388, 0.0,                  0.381830050505118945,
    0.0,                  0.279705391489276668, 0.0,
    0.129484966168869693, 0.0};
inline constexpr double gk_wk[gk_points] = {
    0.209482141084727828, 0.204432940075298892, 0.190350578064785410,
    0.169004726639267903, 0.140653259715525919, 0.104790010322250184,
    0.063092092629978553, 0.022935322010529225};

} // namespace detail

// One G7/K15 panel for an integrand returning std::array<double, N>.
// Returns the K15 estimate; err receives max-component |K15 - G7|.
template <std::size_t N, typename F>
std::array<double, N> gauss_kronrod_panel(F&& f, double a, double b, double& err) {
    using detail::gk_points;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, N> g7{}, k15{};
    {
        auto y = f(mid);
        for (std::size_t i = 0; i < N; ++i) {
            g7[i] = detail::gk_wg[0] * y[i];
            k15[i] = detail::gk_wk[0] * y[i];
        }
    }
    for (int p = 1; p < gk_points; ++p) {
        const double dx = half * detail::gk_x[p];
        auto yl = f(mid - dx);
        auto yr = f(mid + dx);
        for (std::size_t i = 0; i < N; ++i) {
            const double s = yl[i] + yr[i];
            g7[i] += detail::gk_wg[p] * s;
            k15[i] += detail::gk_wk[p] * s;
        }
    }
    err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        g7[i] *= half;
        k15[i] *= half;
        err = std::max(err, std::abs(k15[i] - g7[i]));
    }
    return k15;
}

// Adaptive integration of f over [a, b]; the panel set is seeded with the
// given interior breakpoints, then the worst panel is bisected until the
// summed error estimate satisfies max(abs_tol, rel_tol * max|component|).
template <std::size_t N, typename F>
std::array<double, N> integrate_adaptive(F&& f, double a, double b,
                                         std::vector<double> breakpoints,
                                         const QuadratureSettings& s,
                                         double* err_out = nullptr) {
    struct Panel {
        double a, b, err;
        std::array<double, N> val;
    };
    auto worse = [](const Panel& p, const Panel& q) { return p.err < q.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> panels(worse);

    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                      breakpoints.end());

    std::array<double, N> total{};
    double total_err = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double lo = breakpoints[i], hi = breakpoints[i + 1];
        if (!(lo >= a && hi <= b) || !(hi > lo))
            continue;
        Panel p{lo, hi, 0.0, {}};
        p.val = gauss_kronrod_panel<N>(f, lo, hi, p.err);
        for (std::size_t j = 0; j < N; ++j) total[j] += p.val[j];
        total_err += p.err;
        panels.push(p);
        ++count;
    }
    if (count == 0)
        throw QuadratureError("integrate_adaptive: empty integration range");

    auto tolerance = [&]() {
        double scale = 0.0;
        for (double v : total) scale = std::max(scale, std::abs(v));
        return std::max(s.abs_tol, s.rel_tol * scale);
    };

    while (total_err > tolerance()) {
        if (count >= s.max_panels)
            throw QuadratureError(
                "integrate_adaptive: no convergence after " +
                std::to_string(count) + " panels (err " +
                std::to_string(total_err) + ")");
        Panel p = panels.top();
        panels.pop();
        for (std::size_t j = 0; j < N; ++j) total[j] -= p.val[j];
        total_err -= p.err;

        const double mid = 0.5 * (p.a + p.b);
        for (auto [lo, hi] : {std::pair{p.a, mid}, std::pair{mid, p.b}}) {
            Panel q{lo, hi, 0.0, {}};
            q.val = gauss_kronrod_panel<N>(f, lo, hi, q.err);
            for (std::size_t j = 0; j < N; ++j) total[j] += q.val[j];
            total_err += q.err;
            panels.push(q);
        }
        ++count;
    }
    if (err_out) *err_out = total_err;
    return total;
}

// Integral of f over [a, +inf) via the substitution u = 1/w, handled by the
// same adaptive machinery on (0, 1/a]. Requires a > 0 and an integrand
// decaying at least like w^{-2}.
template <std::size_t N, typename F>
std::array<double, N> integrate_tail(F&& f, double a, const QuadratureSettings& s,
                                     double* err_out = nullptr) {
    if (!(a > 0.0))
        throw ParameterError("integrate_tail: lower limit must be > 0");
    auto g = [&f](double u) {
        auto y = f(1.0 / u);
        for (auto& v : y) v /= u * u;
        return y;
    };
    return integrate_adaptive<N>(g, 0.0, 1.0 / a, {}, s, err_out);
}

// Scalar conveniences.
template <typename F>
double integrate_adaptive_scalar(F&& f, double a, double b,
                                 std::vector<double> breakpoints = {},
                                 const QuadratureSettings& s = {}) {
    auto wrap = [&f](double x) { return std::array<double, 1>{f(x)}; };
    return integrate_adaptive<1>(wrap, a, b, std::move(breakpoints), s)[0];
}

template <typename F>
double integrate_tail_scalar(F&& f, double a, const QuadratureSettings& s = {}) {
    auto wrap = [&f](double x) { return std::array<double, 1>{f(x)}; };
    return integrate_tail<1>(wrap, a, s)[0];
}

} // namespace trichain
