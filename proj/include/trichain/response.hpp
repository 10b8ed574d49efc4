// response.hpp — Frequency-domain building blocks: J(w), chi(w), Gamma(w), alpha(w).

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "trichain/errors.hpp"
#include "trichain/model.hpp"
#include "trichain/units.hpp"

namespace trichain {

using Eigen::Matrix3cd;
using complexd = std::complex<double>;

// Ohmic spectral density with Lorentz-Drude rolloff,
//   J(w) = m gamma w / (1 + w^2/wc^2),   w >= 0.
inline double spectral_density(double omega, double gamma, double omega_c) {
    if (!(omega >= 0.0))
        throw ParameterError("spectral_density: defined for omega >= 0");
    const double r = omega / omega_c;
    return units::mass * gamma * omega / (1.0 + r * r);
}

// Fourier transform of the Drude memory kernel,
//   chi(w) = m hbar gamma wc^2 / (wc - i w).
//
// This is the transform of chi(t) = Theta(t) hbar m gamma wc^2 exp(-wc t).
// The opposite-sign form m hbar gamma wc^2 / (i w - wc) circulates as well;
// it breaks the static counter-term cancellation and makes the noise power
// spectrum negative, so it is not used here. With the convention above,
// Im chi(w)/hbar = +J(w) for w > 0 and Re chi(0)/hbar = 2 m dOmega exactly
// cancels the counter-term in phi at zero frequency.
inline complexd susceptibility_ft(double omega, double gamma, double omega_c) {
    const double c = units::mass * units::hbar * gamma * omega_c * omega_c;
    return c / complexd(omega_c, -omega);
}

// Symmetrized power spectrum of the stochastic force of a bath at
// temperature T:
//   Gamma(w) = J(|w|) sign(w) coth(hbar w / 2 k_B T).
// Even in w and >= 0 for all T. Limits are taken analytically: at T = 0 it
// reduces to J(|w|); at w -> 0 (T > 0) it tends to 2 k_B T m gamma / hbar.
inline double power_spectrum(double omega, double T, double gamma,
                             double omega_c) {
    if (!(T >= 0.0))
        throw ParameterError("power_spectrum: temperature must be >= 0");
    const double aw = std::abs(omega);
    if (T == 0.0)
        return spectral_density(aw, gamma, omega_c);
    const double x = units::hbar * omega / (2.0 * units::k_B * T);
    const double r = omega / omega_c;
    const double drude = 1.0 / (1.0 + r * r);
    if (std::abs(x) < 1e-5) {
        // w coth(x) = (2 k_B T/hbar)(1 + x^2/3 - x^4/45 + ...)
        const double x2 = x * x;
        return units::mass * gamma * drude * (2.0 * units::k_B * T / units::hbar) *
               (1.0 + x2 / 3.0 - x2 * x2 / 45.0);
    }
    return spectral_density(aw, gamma, omega_c) *
           (omega > 0 ? 1.0 : -1.0) / std::tanh(x);
}

inline Eigen::Vector3d power_spectrum_vec(double omega, const BathParams& bath) {
    return {power_spectrum(omega, bath.T_L, bath.gamma, bath.omega_c),
            power_spectrum(omega, bath.T_C, bath.gamma, bath.omega_c),
            power_spectrum(omega, bath.T_R, bath.gamma, bath.omega_c)};
}

// Response matrix alpha(w) = -(w^2 M - phi + chi(w)/hbar I)^{-1}.
// Symmetric complex 3x3; invertible at every real w when gamma > 0.
inline Matrix3cd response_matrix(double omega, const EffectivePotential& pot,
                                 const BathParams& bath) {
    const double m = units::mass;
    const complexd chi_over_hbar =
        susceptibility_ft(omega, bath.gamma, bath.omega_c) / units::hbar;
    Matrix3cd A = pot.phi.cast<complexd>();
    const complexd shift = complexd(omega * omega * m, 0.0) + chi_over_hbar;
    A -= shift * Matrix3cd::Identity();
    // alpha = -(w^2 M - phi + chi/hbar)^{-1} = (phi - w^2 M - chi/hbar)^{-1}
    Eigen::PartialPivLU<Matrix3cd> lu(A);
    const complexd det = lu.determinant();
    const double scale = A.cwiseAbs().maxCoeff();
    if (!(std::abs(det) > 1e-14 * scale * scale * scale))
        throw SingularResponseError(
            "response_matrix: singular at omega = " + std::to_string(omega));
    return lu.inverse();
}

inline Matrix3cd response_matrix(double omega, const ChainParams& chain,
                                 const BathParams& bath) {
    return response_matrix(omega, EffectivePotential(chain, bath), bath);
}

} // namespace trichain
