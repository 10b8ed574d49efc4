// quadrature_engine.hpp — Stationary covariance by direct frequency integration.
//
// With alpha(-w)^T = alpha(w)*, the full-line integrals fold onto w >= 0:
// writing M(w) = alpha(w) diag(Gamma(w)) alpha(w)^dagger (Hermitian),
//
//   C_XX = (hbar   / pi) Int_0^inf  Re M(w) dw
//   C_PP = (hbar m^2/pi) Int_0^inf  w^2 Re M(w) dw
//   C_XP = -(hbar m/ pi) Int_0^inf  w  Im M(w) dw
//
// Re M is symmetric, Im M antisymmetric, so C_XP has zero diagonal and
// C_XX, C_PP come out symmetric. This engine is deliberately independent
// of the closed-form residue evaluation and serves as its oracle.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "trichain/covariance.hpp"
#include "trichain/errors.hpp"
#include "trichain/model.hpp"
#include "trichain/quadrature.hpp"
#include "trichain/response.hpp"
#include "trichain/units.hpp"

namespace trichain {

// Integrand of the folded covariance integrals at a single frequency.
// Returns the three real 3x3 matrices (XX, PP, XP terms) including the
// 1/pi prefactors, so that integrating each over w in [0, inf) gives the
// corresponding covariance block.
struct StationaryIntegrand {
    EffectivePotential pot;
    BathParams bath;

    StationaryIntegrand(const ChainParams& chain, const BathParams& b)
        : pot(chain, b), bath(b) {}

    struct Value {
        Eigen::Matrix3d xx, pp, xp;
    };

    Value operator()(double omega) const {
        const Matrix3cd alpha = response_matrix(omega, pot, bath);
        const Eigen::Vector3d G = power_spectrum_vec(omega, bath);
        const Matrix3cd M = alpha * G.asDiagonal() * alpha.adjoint();
        const double m = units::mass;
        const double hbar = units::hbar;
        Value v;
        v.xx = (hbar / M_PI) * M.real();
        v.pp = (hbar * m * m / M_PI) * omega * omega * M.real();
        v.xp = -(hbar * m / M_PI) * omega * M.imag();
        return v;
    }

    // Flat layout used by the adaptive integrator: xx upper triangle (6),
    // pp upper triangle (6), xp strict upper triangle (3) + diagonal (3).
    static constexpr std::size_t flat_size = 18;

    std::array<double, flat_size> flat(double omega) const {
        const Value v = (*this)(omega);
        std::array<double, flat_size> out{};
        std::size_t n = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) out[n++] = v.xx(i, j);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) out[n++] = v.pp(i, j);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j && i < j) out[n++] = v.xp(i, j);
        out[15] = v.xp(0, 0);
        out[16] = v.xp(1, 1);
        out[17] = v.xp(2, 2);
        return out;
    }
};

namespace detail {

inline CovarianceMatrix unflatten(const std::array<double, 18>& f) {
    Eigen::Matrix3d xx, pp, xp;
    std::size_t n = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            xx(i, j) = f[n];
            xx(j, i) = f[n];
            ++n;
        }
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            pp(i, j) = f[n];
            pp(j, i) = f[n];
            ++n;
        }
    xp(0, 1) = f[12];
    xp(0, 2) = f[13];
    xp(1, 2) = f[14];
    xp(1, 0) = -f[12];
    xp(2, 0) = -f[13];
    xp(2, 1) = -f[14];
    xp(0, 0) = f[15];
    xp(1, 1) = f[16];
    xp(2, 2) = f[17];
    return CovarianceMatrix::from_blocks(xx, pp, xp);
}

// Resonance positions and half-widths used to seed the panel set. The
// counter-term is cancelled by Re chi at frequencies well below the cutoff,
// so peaks sit near the bare normal modes; the renormalized modes are added
// as well to cover the opposite regime.
inline std::vector<double> resonance_breakpoints(const EffectivePotential& pot,
                                                 const BathParams& bath,
                                                 double ceiling) {
    std::vector<double> bp;
    auto add_modes = [&](const Eigen::Matrix3d& stiffness) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(stiffness);
        for (int i = 0; i < 3; ++i) {
            const double lam = es.eigenvalues()[i];
            if (!(lam > 0.0)) continue;
            const double wr = std::sqrt(lam);
            const double width =
                0.5 * bath.gamma / (1.0 + wr * wr / (bath.omega_c * bath.omega_c));
            for (double x : {wr - 3.0 * width, wr, wr + 3.0 * width})
                if (x > 0.0 && x < ceiling) bp.push_back(x);
        }
    };
    add_modes(pot.bare_stiffness());
    add_modes(pot.phi / units::mass);
    if (bath.omega_c < ceiling) bp.push_back(bath.omega_c);
    return bp;
}

} // namespace detail

// Full quadrature evaluation of the stationary covariance matrix.
// Throws QuadratureError on non-convergence and PhysicalityError if the
// result violates sigma + iK/2 >= 0 beyond tolerance.
inline CovarianceMatrix steady_covariance_quadrature(
    const ChainParams& chain, const BathParams& bath,
    const QuadratureSettings& settings = {}) {
    settings.validate();
    const StationaryIntegrand f(chain, bath);

    const double ceiling = settings.ceiling_multiplier * bath.omega_c;
    std::vector<double> bp =
        detail::resonance_breakpoints(f.pot, bath, ceiling);
    for (double x : settings.extra_breakpoints)
        if (x > 0.0 && x < ceiling) bp.push_back(x);

    auto flat = [&f](double w) { return f.flat(w); };
    std::array<double, StationaryIntegrand::flat_size> total =
        integrate_adaptive<StationaryIntegrand::flat_size>(flat, 0.0, ceiling,
                                                           bp, settings);
    const auto tail =
        integrate_tail<StationaryIntegrand::flat_size>(flat, ceiling, settings);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += tail[i];

    CovarianceMatrix sigma = detail::unflatten(total);

    const double margin = sigma.physicality();
    if (margin < -1e-9)
        throw PhysicalityError(
            "steady_covariance_quadrature: unphysical result, margin = " +
            std::to_string(margin));
    return sigma;
}

} // namespace trichain
