// residue_engine.hpp — Closed-form stationary covariance via contour
// integration over the roots of det F.
//
// Writing P(w) = det F(w) (degree 9, roots z_j in the lower half plane) and
// G = adj F, the folded integrands split by the identity
//   w coth(hbar w / 2 k_B T) = 2 k_B T / hbar
//       + (w / i pi) [psi(1 + i hbar w / 2 pi k_B T) - psi(1 - ...)]
// into a rational piece (closed below), a psi piece analytic in the lower
// half plane (closed below, residues at z_j) and its mirror (closed above,
// residues at conj z_j). The conj-z_j sum is the conjugate transpose of the
// z_j sum, so with
//
//   common_{j,b} = col_b(adj F(z_j)) (col_b(adj F(conj z_j)))^*T
//                  / (Im z_j * prod_{k!=j}(z_j - z_k) prod_{k!=j}(z_j - conj z_k))
//
// each block is  pref * [ sum_{j,b} (-k_B T_b/hbar) z_j^n common
//                       + S + S^dagger ],
//   S = sum_{j,b} (i/2pi) z_j^{n+1} psi(1 + i hbar z_j/(2 pi k_B T_b)) common
// with n = 0 (XX), 2 (PP), 1 (XP, extra factor i) and
// pref = hbar gamma wc^2 / m^{5-n}. Results are real up to roundoff; the
// imaginary residue is asserted small before being discarded.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "trichain/covariance.hpp"
#include "trichain/digamma.hpp"
#include "trichain/errors.hpp"
#include "trichain/model.hpp"
#include "trichain/polynomial.hpp"
#include "trichain/units.hpp"

namespace trichain {

namespace detail {

using Matrix3cx = Eigen::Matrix<cplx_x, 3, 3>;
using Vector3cx = Eigen::Matrix<cplx_x, 3, 1>;

inline Matrix3cx adjugate3(const Matrix3cx& M) {
    Matrix3cx A;
    A(0, 0) = M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1);
    A(0, 1) = M(0, 2) * M(2, 1) - M(0, 1) * M(2, 2);
    A(0, 2) = M(0, 1) * M(1, 2) - M(0, 2) * M(1, 1);
    A(1, 0) = M(1, 2) * M(2, 0) - M(1, 0) * M(2, 2);
    A(1, 1) = M(0, 0) * M(2, 2) - M(0, 2) * M(2, 0);
    A(1, 2) = M(0, 2) * M(1, 0) - M(0, 0) * M(1, 2);
    A(2, 0) = M(1, 0) * M(2, 1) - M(1, 1) * M(2, 0);
    A(2, 1) = M(0, 1) * M(2, 0) - M(0, 0) * M(2, 1);
    A(2, 2) = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
    return A;
}

inline Eigen::Matrix3d to_double(const Matrix3cx& M, bool imag_part = false) {
    Eigen::Matrix3d R;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            R(i, j) = static_cast<double>(imag_part ? M(i, j).imag()
                                                    : M(i, j).real());
    return R;
}

} // namespace detail

struct ResidueDiagnostics {
    RootSet roots;
    double max_imag_residue = 0.0;  // relative to the largest real entry
};

// Closed-form stationary covariance. Requires all T_a > 0 strictly (the
// digamma argument diverges at T = 0; use the quadrature engine there).
inline CovarianceMatrix steady_covariance_residue(
    const ChainParams& chain, const BathParams& bath,
    const RootSolverSettings& root_settings = {},
    ResidueDiagnostics* diag = nullptr) {
    using detail::Matrix3cx;
    using detail::Vector3cx;

    if (!(bath.T_L > 0.0 && bath.T_C > 0.0 && bath.T_R > 0.0))
        throw ParameterError(
            "steady_covariance_residue: requires T > 0 for every bath; "
            "use the quadrature engine at T = 0");

    const PolynomialMatrix F = build_F(chain, bath);
    const RootSet rs = find_roots(F, root_settings);
    const auto& z = rs.roots;

    const real_x pi = real_x(3.14159265358979323846264338327950288L);
    const real_x hbar = units::hbar;
    const real_x kB = units::k_B;
    const real_x m = units::mass;
    const std::array<real_x, 3> T = {real_x(bath.T_L), real_x(bath.T_C),
                                     real_x(bath.T_R)};

    // Per-root data: adjugates at z_j and conj z_j, denominators.
    std::array<Matrix3cx, 9> A, B;
    std::array<cplx_x, 9> D;
    for (int j = 0; j < 9; ++j) {
        A[j] = detail::adjugate3(F.eval(z[j]));
        B[j] = detail::adjugate3(F.eval(std::conj(z[j])));
        cplx_x d(1, 0);
        for (int k = 0; k < 9; ++k) {
            if (k != j) d *= (z[j] - z[k]);
            if (k != j) d *= (z[j] - std::conj(z[k]));
        }
        D[j] = d;
    }

    // n = 0 (XX), 1 (XP), 2 (PP): classical + digamma sums.
    std::array<Matrix3cx, 3> S_classical, S_psi;
    for (auto& M : S_classical) M.setZero();
    for (auto& M : S_psi) M.setZero();

    for (int j = 0; j < 9; ++j) {
        const cplx_x zj = z[j];
        const real_x imz = zj.imag();
        const std::array<cplx_x, 4> zpow = {cplx_x(1, 0), zj, zj * zj,
                                            zj * zj * zj};
        for (int b = 0; b < 3; ++b) {
            const Vector3cx a_col = A[j].col(b);
            const Vector3cx b_col = B[j].col(b);
            Matrix3cx common = a_col * b_col.conjugate().transpose();
            common /= (imz * D[j]);

            const cplx_x psi_arg =
                cplx_x(1, 0) + cplx_x(0, 1) * hbar * zj / (2 * pi * kB * T[b]);
            const cplx_x psi = digamma<real_x>(psi_arg);
            for (int n = 0; n < 3; ++n) {
                S_classical[n] += (-kB * T[b] / hbar) * zpow[n] * common;
                S_psi[n] += (cplx_x(0, 1) / (2 * pi)) * zpow[n + 1] * psi * common;
            }
        }
    }

    auto total = [&](int n) -> Matrix3cx {
        Matrix3cx t = S_classical[n] + S_psi[n] + S_psi[n].adjoint().eval();
        return t;
    };

    const real_x wc2 = real_x(bath.omega_c) * real_x(bath.omega_c);
    const cplx_x pref_xx = hbar * real_x(bath.gamma) * wc2 / (m * m * m * m * m);
    const cplx_x pref_xp =
        cplx_x(0, 1) * hbar * real_x(bath.gamma) * wc2 / (m * m * m * m);
    const cplx_x pref_pp = hbar * real_x(bath.gamma) * wc2 / (m * m * m);

    const Matrix3cx Zxx = pref_xx * total(0);
    const Matrix3cx Zxp = pref_xp * total(1);
    const Matrix3cx Zpp = pref_pp * total(2);

    double scale = 0.0, imag_res = 0.0;
    for (const auto* M : {&Zxx, &Zxp, &Zpp})
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                scale = std::max(scale,
                                 std::abs(static_cast<double>((*M)(i, j).real())));
                imag_res = std::max(
                    imag_res, std::abs(static_cast<double>((*M)(i, j).imag())));
            }
    if (imag_res > 1e-10 * std::max(scale, 1e-300)) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "steady_covariance_residue: imaginary residue %.3e "
                      "exceeds 1e-10 of scale %.3e", imag_res, scale);
        throw PhysicalityError(msg);
    }

    CovarianceMatrix sigma = CovarianceMatrix::from_blocks(
        detail::to_double(Zxx), detail::to_double(Zpp), detail::to_double(Zxp));

    if (diag) {
        diag->roots = rs;
        diag->max_imag_residue = imag_res / std::max(scale, 1e-300);
    }
    return sigma;
}

} // namespace trichain
