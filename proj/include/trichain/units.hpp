// units.hpp — Natural-unit conventions shared by the whole library.
//
// Everything internal works in units where hbar = k_B = m = 1 and the
// reference frequency Omega = 1 sets the frequency scale. Public inputs
// are the dimensionless ratios used throughout the phase diagrams:
//
//   k_hat  = k / (m Omega^2)      coupling strength
//   g_hat  = gamma / Omega        dissipation rate
//   wc_hat = omega_c / Omega      Drude cutoff
//   T_hat  = 2 k_B T / (hbar Omega)   bath temperature
//   d_hat  = delta / Omega        center-mode detuning
//
// Note the factor of two in T_hat: a natural-unit temperature T (k_B T in
// units of hbar*Omega) corresponds to the axis value T_hat = 2*T.

#pragma once

namespace trichain {

namespace units {

inline constexpr double hbar = 1.0;
inline constexpr double k_B = 1.0;
inline constexpr double mass = 1.0;
inline constexpr double Omega = 1.0;

// T_hat = 2 k_B T / (hbar Omega)  ->  T in natural units
inline constexpr double temperature_from_ratio(double T_hat) {
    return 0.5 * T_hat * hbar * Omega / k_B;
}

inline constexpr double ratio_from_temperature(double T) {
    return 2.0 * k_B * T / (hbar * Omega);
}

} // namespace units

} // namespace trichain
