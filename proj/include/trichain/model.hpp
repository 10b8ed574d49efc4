// model.hpp — Chain and bath parameters, interaction matrix, effective potential.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "trichain/errors.hpp"
#include "trichain/units.hpp"

namespace trichain {

using Eigen::Matrix3d;
using Eigen::Vector3d;

// Open-chain nearest-neighbour interaction matrix of strength k:
//   [[ k, -k,  0],
//    [-k, 2k, -k],
//    [ 0, -k,  k]]
// Rows sum to zero; positive semidefinite for k >= 0.
inline Matrix3d interaction_matrix(double k) {
    if (!(k >= 0.0))
        throw ParameterError("interaction_matrix: coupling k must be >= 0");
    Matrix3d V;
    V << k, -k, 0.0,
        -k, 2.0 * k, -k,
         0.0, -k, k;
    return V;
}

// Oscillator frequencies and coupling. Frequencies in units of Omega,
// coupling in units of m Omega^2.
struct ChainParams {
    double omega_L = 1.0;
    double omega_C = 1.0;
    double omega_R = 1.0;
    double k = 0.0;
    Matrix3d V = Matrix3d::Zero();

    ChainParams() = default;

    ChainParams(double wL, double wC, double wR, double coupling)
        : omega_L(wL), omega_C(wC), omega_R(wR), k(coupling),
          V(interaction_matrix(coupling)) {
        if (!(omega_L > 0.0 && omega_C > 0.0 && omega_R > 0.0))
            throw ParameterError("ChainParams: oscillator frequencies must be > 0");
    }

    // All three modes at the reference frequency.
    static ChainParams resonant(double coupling, double omega = units::Omega) {
        return ChainParams(omega, omega, omega, coupling);
    }

    // Outer modes at Omega, center mode at Omega + delta.
    static ChainParams detuned_center(double coupling, double delta,
                                      double omega = units::Omega) {
        return ChainParams(omega, omega + delta, omega, coupling);
    }

    Vector3d frequencies() const { return Vector3d(omega_L, omega_C, omega_R); }
};

// Per-bath temperatures plus the shared dissipation rate and Drude cutoff.
// Temperatures in natural units (k_B T / hbar Omega), rates in units of Omega.
struct BathParams {
    double T_L = 0.0;
    double T_C = 0.0;
    double T_R = 0.0;
    double gamma = 1e-2;
    double omega_c = 50.0;

    BathParams() = default;

    BathParams(double TL, double TC, double TR, double g, double wc)
        : T_L(TL), T_C(TC), T_R(TR), gamma(g), omega_c(wc) {
        if (!(T_L >= 0.0 && T_C >= 0.0 && T_R >= 0.0))
            throw ParameterError("BathParams: temperatures must be >= 0");
        if (!(gamma > 0.0))
            throw ParameterError("BathParams: dissipation rate must be > 0");
        if (!(omega_c > 0.0))
            throw ParameterError("BathParams: cutoff frequency must be > 0");
    }

    // Gradient constructor: T_C = T, T_L = T + dT/2, T_R = T - dT/2.
    // Negative dT cools the left mode. Requires |dT| < 2T.
    static BathParams from_gradient(double T, double dT, double g, double wc) {
        if (!(std::abs(dT) < 2.0 * T))
            throw ParameterError("BathParams: gradient requires |dT| < 2T");
        return BathParams(T + 0.5 * dT, T, T - 0.5 * dT, g, wc);
    }

    Vector3d temperatures() const { return Vector3d(T_L, T_C, T_R); }

    bool equal_temperatures(double tol = 0.0) const {
        return std::abs(T_L - T_C) <= tol && std::abs(T_C - T_R) <= tol;
    }
};

// Counter-term frequency shift for the Ohmic-Drude density (exact).
inline double frequency_shift(double gamma, double omega_c) {
    if (!(gamma >= 0.0) || !(omega_c > 0.0))
        throw ParameterError("frequency_shift: need gamma >= 0 and omega_c > 0");
    return 0.5 * gamma * omega_c;
}

// phi = m diag(omega_a^2) + V + 2 m dOmega I with dOmega = gamma omega_c / 2.
// Positive definiteness is checked eagerly: a non-confining effective
// potential admits no stationary state.
struct EffectivePotential {
    Matrix3d phi = Matrix3d::Zero();
    double delta_Omega = 0.0;

    EffectivePotential() = default;

    EffectivePotential(const ChainParams& chain, const BathParams& bath)
        : delta_Omega(frequency_shift(bath.gamma, bath.omega_c)) {
        const double m = units::mass;
        const Vector3d w = chain.frequencies();
        phi = m * w.cwiseProduct(w).asDiagonal();
        phi += chain.V;
        phi += 2.0 * m * delta_Omega * Matrix3d::Identity();

        Eigen::LLT<Matrix3d> llt(phi);
        if (llt.info() != Eigen::Success)
            throw ParameterError("EffectivePotential: phi is not positive definite");
    }

    // Bare-chain stiffness (counter-term removed), in units of m.
    Matrix3d bare_stiffness() const {
        return (phi - 2.0 * units::mass * delta_Omega * Matrix3d::Identity()) /
               units::mass;
    }
};

} // namespace trichain
