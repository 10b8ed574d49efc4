// polynomial.hpp — Complex polynomial arithmetic, the polynomial matrix
// F(w) = (wc - i w) alpha^{-1}(w), its degree-9 determinant, and the
// companion-matrix root solver.
//
// Root clusters: at large cutoff the three roots near -i*wc are separated
// by only ~gamma*k/wc^2, i.e. down to ~1e-10 relative at the parameter
// ranges of interest. The whole pipeline therefore runs in long double;
// the residue sums stay accurate because numerator factors vanish in step
// with the separation factors in the denominators.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "trichain/errors.hpp"
#include "trichain/model.hpp"
#include "trichain/units.hpp"

namespace trichain {

using real_x = long double;
using cplx_x = std::complex<real_x>;
using Poly = std::vector<cplx_x>;  // ascending coefficients

namespace poly {

inline int degree(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != cplx_x(0, 0)) return i;
    return -1;
}

inline Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), cplx_x(0, 0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), cplx_x(0, 0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, cplx_x(0, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline cplx_x eval(const Poly& p, cplx_x z) {
    cplx_x v(0, 0);
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) v = v * z + p[i];
    return v;
}

inline cplx_x eval_derivative(const Poly& p, cplx_x z) {
    cplx_x v(0, 0);
    for (int i = static_cast<int>(p.size()) - 1; i >= 1; --i)
        v = v * z + p[i] * real_x(i);
    return v;
}

// Sum |c_n| |z|^n, the natural scale for evaluation roundoff at z.
inline real_x eval_magnitude(const Poly& p, cplx_x z) {
    const real_x az = std::abs(z);
    real_x v = 0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        v = v * az + std::abs(p[i]);
    return v;
}

} // namespace poly

// 3x3 matrix of polynomials representing F(w) = (wc - i w) alpha^{-1}(w).
// Diagonal entries have degree 3, off-diagonal degree 1; the Drude
// denominator of chi cancels exactly against the (wc - i w) prefactor.
struct PolynomialMatrix {
    std::array<std::array<Poly, 3>, 3> entry;

    const Poly& operator()(int i, int j) const { return entry[i][j]; }
    Poly& operator()(int i, int j) { return entry[i][j]; }

    Eigen::Matrix<cplx_x, 3, 3> eval(cplx_x z) const {
        Eigen::Matrix<cplx_x, 3, 3> M;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M(i, j) = poly::eval(entry[i][j], z);
        return M;
    }

    // Cofactor expansion along the first row.
    Poly determinant() const {
        auto minor2 = [&](int r0, int r1, int c0, int c1) {
            return poly::sub(poly::mul(entry[r0][c0], entry[r1][c1]),
                             poly::mul(entry[r0][c1], entry[r1][c0]));
        };
        Poly det = poly::mul(entry[0][0], minor2(1, 2, 1, 2));
        det = poly::sub(det, poly::mul(entry[0][1], minor2(1, 2, 0, 2)));
        det = poly::add(det, poly::mul(entry[0][2], minor2(1, 2, 0, 1)));
        return det;
    }
};

// F entry (a,b) = (wc - i w)(phi_ab - m w^2 d_ab) - m gamma wc^2 d_ab.
inline PolynomialMatrix build_F(const ChainParams& chain, const BathParams& bath) {
    const EffectivePotential pot(chain, bath);
    const real_x m = units::mass;
    const real_x wc = bath.omega_c;
    const real_x g = bath.gamma;

    PolynomialMatrix F;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const real_x phi = pot.phi(i, j);
            if (i == j) {
                F(i, j) = Poly{cplx_x(wc * phi - m * g * wc * wc, 0),
                               cplx_x(0, -phi),
                               cplx_x(-m * wc, 0),
                               cplx_x(0, m)};
            } else {
                F(i, j) = Poly{cplx_x(wc * phi, 0), cplx_x(0, -phi)};
            }
        }
    }
    return F;
}

// The nine roots of det F with diagnostics. All lie in the open lower half
// plane for stable parameters; their conjugates complete the degree-18 set.
struct RootSet {
    std::array<cplx_x, 9> roots{};              // sorted by (Re, Im)
    double max_scaled_residual = 0.0;           // max |P(z_j)| / sum|c_n||z_j|^n
    double min_separation = 0.0;                // absolute, between distinct roots
    double max_magnitude = 0.0;

    std::array<std::complex<double>, 9> as_double() const {
        std::array<std::complex<double>, 9> r;
        for (int i = 0; i < 9; ++i)
            r[i] = {static_cast<double>(roots[i].real()),
                    static_cast<double>(roots[i].imag())};
        return r;
    }
};

struct RootSolverSettings {
    int polish_iterations = 12;
    // Roots closer than this (relative to max |root|) are treated as a
    // genuine multiplicity: the simple-root residue formulas are refused.
    // Near-degenerate pairs above the floor stay accurate because numerator
    // factors vanish in step with the separations; measured covariance error
    // grows past 1e-8 only once separations reach the long-double epsilon
    // scale, which this floor excludes.
    double separation_floor = 1e-16;
};

namespace detail_roots {

// Companion-matrix eigenvalues, Newton-polished with a step guard so that
// cluster roots are never "polished" into evaluation noise.
template <int Deg>
inline void companion_roots(const Poly& p, cplx_x* out,
                            const RootSolverSettings& settings) {
    Poly monic(p.begin(), p.begin() + Deg + 1);
    const cplx_x lead = monic[Deg];
    for (auto& c : monic) c /= lead;

    Eigen::Matrix<cplx_x, Deg, Deg> C = Eigen::Matrix<cplx_x, Deg, Deg>::Zero();
    for (int i = 1; i < Deg; ++i) C(i, i - 1) = cplx_x(1, 0);
    for (int i = 0; i < Deg; ++i) C(i, Deg - 1) = -monic[i];

    Eigen::ComplexEigenSolver<Eigen::Matrix<cplx_x, Deg, Deg>> es(C, false);
    if (es.info() != Eigen::Success)
        throw UnstableParameterError("find_roots: eigensolver failed");

    for (int i = 0; i < Deg; ++i) out[i] = es.eigenvalues()[i];

    for (int i = 0; i < Deg; ++i) {
        cplx_x& zj = out[i];
        real_x best = std::abs(poly::eval(p, zj));
        for (int it = 0; it < settings.polish_iterations; ++it) {
            const cplx_x pv = poly::eval(p, zj);
            const cplx_x dp = poly::eval_derivative(p, zj);
            if (dp == cplx_x(0, 0)) break;
            const cplx_x step = -pv / dp;
            if (!(std::abs(step) <= real_x(1e-2) * (real_x(1) + std::abs(zj))))
                break;
            const cplx_x cand = zj + step;
            const real_x res = std::abs(poly::eval(p, cand));
            if (res < best) {
                zj = cand;
                best = res;
            } else {
                break;
            }
            if (std::abs(step) <= real_x(1e-18) * (real_x(1) + std::abs(zj)))
                break;
        }
    }
}

inline RootSet finalize(std::array<cplx_x, 9> z, const Poly& detF,
                        const RootSolverSettings& settings) {
    std::sort(z.begin(), z.end(), [](cplx_x a, cplx_x b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    RootSet rs;
    rs.roots = z;
    for (const auto& zj : z)
        rs.max_magnitude =
            std::max(rs.max_magnitude, static_cast<double>(std::abs(zj)));

    int upper = 0;
    for (const auto& zj : z)
        if (!(zj.imag() < 0)) ++upper;
    if (upper != 0)
        throw UnstableParameterError(
            "find_roots: " + std::to_string(upper) +
            " root(s) in the closed upper half plane; unstable parameter set");

    real_x min_sep = std::numeric_limits<real_x>::max();
    for (int i = 0; i < 9; ++i)
        for (int j = i + 1; j < 9; ++j)
            min_sep = std::min(min_sep, std::abs(z[i] - z[j]));
    rs.min_separation = static_cast<double>(min_sep);
    if (rs.min_separation < settings.separation_floor * rs.max_magnitude) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "find_roots: root separation %.3e below floor %.1e; "
                      "residue formulas assume simple roots",
                      rs.min_separation,
                      settings.separation_floor * rs.max_magnitude);
        throw RootMultiplicityError(msg);
    }

    for (const auto& zj : z) {
        const real_x res = std::abs(poly::eval(detF, zj));
        const real_x mag = poly::eval_magnitude(detF, zj);
        rs.max_scaled_residual =
            std::max(rs.max_scaled_residual,
                     static_cast<double>(res / std::max(mag, real_x(1e-300))));
    }
    return rs;
}

} // namespace detail_roots

// Roots of a generic degree-9 polynomial via a 9x9 companion matrix.
inline RootSet find_roots(const Poly& detF,
                          const RootSolverSettings& settings = {}) {
    const int deg = poly::degree(detF);
    if (deg != 9)
        throw ParameterError("find_roots: expected a degree-9 polynomial, got " +
                             std::to_string(deg));
    std::array<cplx_x, 9> z;
    detail_roots::companion_roots<9>(detF, z.data(), settings);
    return detail_roots::finalize(z, detF, settings);
}

// Roots of det F via exact factorization. Every term of F(w) is a
// polynomial in phi and the identity, so F(w) is diagonalized by the
// (frequency-independent) eigenbasis of phi and
//   det F = prod_i [ (wc - i w)(lambda_i - m w^2) - m gamma wc^2 ].
// Solving the three cubics separately keeps the near-degenerate roots
// under the cutoff fully resolved, which the 9x9 companion route cannot
// do at large wc. Falls back to the generic route if the matrix does not
// have the expected structure.
inline RootSet find_roots(const PolynomialMatrix& F,
                          const RootSolverSettings& settings = {}) {
    const Poly& d0 = F(0, 0);
    const Poly detF = F.determinant();
    if (poly::degree(d0) != 3 || poly::degree(detF) != 9)
        return find_roots(detF, settings);

    const real_x m = d0[3].imag();
    const real_x wc = -d0[2].real() / m;
    Eigen::Matrix<real_x, 3, 3> phi;
    real_x structure_err = std::abs(d0[3].real()) + std::abs(d0[2].imag());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Poly& e = F(i, j);
            const cplx_x c1 = e.size() > 1 ? e[1] : cplx_x(0, 0);
            phi(i, j) = -c1.imag();
            structure_err += std::abs(c1.real());
        }
    // m gamma wc^2 from the constant diagonal term; must agree across the
    // diagonal for the factorization to apply.
    const real_x gw2 = wc * phi(0, 0) - d0[0].real();
    for (int i = 0; i < 3; ++i) {
        const real_x gw2_i = wc * phi(i, i) - F(i, i)[0].real();
        structure_err += std::abs(gw2_i - gw2);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && F(i, j).size() > 0)
                structure_err +=
                    std::abs(F(i, j)[0] - cplx_x(wc * phi(i, j), 0));
    const real_x scale = std::abs(wc) * phi.cwiseAbs().maxCoeff() + std::abs(gw2);
    if (!(structure_err <= real_x(1e-9) * std::max(scale, real_x(1))))
        return find_roots(detF, settings);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<real_x, 3, 3>> es(phi);
    std::array<cplx_x, 9> z;
    for (int i = 0; i < 3; ++i) {
        const real_x lam = es.eigenvalues()[i];
        const Poly cubic = {cplx_x(wc * lam - gw2, 0), cplx_x(0, -lam),
                            cplx_x(-m * wc, 0), cplx_x(0, m)};
        detail_roots::companion_roots<3>(cubic, z.data() + 3 * i, settings);
    }
    return detail_roots::finalize(z, detF, settings);
}

} // namespace trichain
