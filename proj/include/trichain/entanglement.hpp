// entanglement.hpp — PPT tests, logarithmic negativity, full-separability
// certificate search, and the C1-C5 classification of a three-mode
// Gaussian covariance matrix.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trichain/covariance.hpp"
#include "trichain/errors.hpp"

namespace trichain {

// The three 1|2 mode bipartitions; the value is the index of the single
// transposed mode in (L, C, R) = (0, 1, 2).
enum class Bipartition : int { L_vs_CR = 0, C_vs_LR = 1, R_vs_LC = 2 };

inline constexpr std::array<Bipartition, 3> all_bipartitions = {
    Bipartition::L_vs_CR, Bipartition::C_vs_LR, Bipartition::R_vs_LC};

inline const char* to_string(Bipartition b) {
    switch (b) {
        case Bipartition::L_vs_CR: return "L|(CR)";
        case Bipartition::C_vs_LR: return "C|(LR)";
        case Bipartition::R_vs_LC: return "R|(LC)";
    }
    return "?";
}

enum class EntanglementClass : int {
    C1 = 1,  // fully inseparable
    C2 = 2,  // one-mode biseparable
    C3 = 3,  // two-mode biseparable
    C4 = 4,  // bound entangled (PPT in all bipartitions, no product mixture)
    C5 = 5,  // fully separable
};

inline const char* to_string(EntanglementClass c) {
    switch (c) {
        case EntanglementClass::C1: return "C1";
        case EntanglementClass::C2: return "C2";
        case EntanglementClass::C3: return "C3";
        case EntanglementClass::C4: return "C4";
        case EntanglementClass::C5: return "C5";
    }
    return "?";
}

struct PhysicalityReport {
    bool physical = false;
    double margin = 0.0;  // min eig(sigma + iK/2)
};

inline PhysicalityReport physicality(const Matrix6d& sigma, double tol = 1e-9) {
    PhysicalityReport r;
    r.margin = physicality_margin(sigma);
    r.physical = r.margin >= -tol;
    return r;
}

// Gaussian partial transpose: flip the sign of the chosen mode's momentum
// row and column (index 3 + mode in the xxxppp ordering).
inline Matrix6d partial_transpose(const Matrix6d& sigma, int mode) {
    Matrix6d S = Matrix6d::Identity();
    S(3 + mode, 3 + mode) = -1.0;
    return S * sigma * S;
}

inline Matrix6d partial_transpose(const Matrix6d& sigma, Bipartition b) {
    return partial_transpose(sigma, static_cast<int>(b));
}

// Symplectic eigenvalues: moduli of the eigenvalue pairs of iK sigma,
// ascending. Computed from the antisymmetric W = sigma^{1/2} K sigma^{1/2}
// (similar to K sigma), whose squared singular values are the nu_j^2 in
// pairs. Requires sigma positive definite.
inline Eigen::Vector3d symplectic_eigenvalues(const Matrix6d& sigma) {
    Eigen::SelfAdjointEigenSolver<Matrix6d> es(sigma);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw ParameterError(
            "symplectic_eigenvalues: matrix is not positive definite");
    const Matrix6d sqrt_sigma = es.operatorSqrt();
    const Matrix6d W = sqrt_sigma * symplectic_form() * sqrt_sigma;
    Eigen::SelfAdjointEigenSolver<Matrix6d> ns(W * W.transpose(),
                                               Eigen::EigenvaluesOnly);
    // eigenvalues of W W^T are {nu_j^2} each twice; ascending order pairs them
    Eigen::Vector3d nu;
    for (int i = 0; i < 3; ++i) {
        const double a = std::max(ns.eigenvalues()[2 * i], 0.0);
        const double b = std::max(ns.eigenvalues()[2 * i + 1], 0.0);
        nu[i] = 0.5 * (std::sqrt(a) + std::sqrt(b));
    }
    return nu;
}

struct PptResult {
    bool separable = false;
    double nu_min = 0.0;  // smallest PT symplectic eigenvalue
};

// PPT test on one 1|2 bipartition: separable iff the smallest symplectic
// eigenvalue of the partially transposed state is >= 1/2 - tol. Necessary
// and sufficient for 1xN Gaussian bipartitions.
inline PptResult ppt_separable(const Matrix6d& sigma, Bipartition b,
                               double tol = 1e-9) {
    const Eigen::Vector3d nu = symplectic_eigenvalues(partial_transpose(sigma, b));
    return {nu.minCoeff() >= 0.5 - tol, nu.minCoeff()};
}

// E_N = sum_j max(0, -ln 2 nu_j) over PT symplectic eigenvalues (natural log).
inline double log_negativity(const Matrix6d& sigma, Bipartition b) {
    const Eigen::Vector3d nu = symplectic_eigenvalues(partial_transpose(sigma, b));
    double en = 0.0;
    for (int i = 0; i < 3; ++i)
        en += std::max(0.0, -std::log(2.0 * nu[i]));
    return en;
}

// ---------------------------------------------------------------------------
// Full-separability certificate search (distinguishes C4 from C5).
// ---------------------------------------------------------------------------

struct SeparabilityCertificate {
    std::array<Eigen::Matrix2d, 3> gamma;  // single-mode covariances (L, C, R)
    double margin = 0.0;                   // min eig(sigma - direct sum)
};

struct CertificateSettings {
    int restarts = 64;
    int iterations = 500;    // Nelder-Mead iterations per restart
    std::uint64_t seed = 20240915ull;
    double found_tol = 1e-7;  // margin >= -found_tol counts as a certificate
};

namespace detail_cert {

// Scatter single-mode 2x2 covariances into the xxxppp 6x6 layout.
inline Matrix6d direct_sum(const std::array<Eigen::Matrix2d, 3>& g) {
    Matrix6d G = Matrix6d::Zero();
    for (int m = 0; m < 3; ++m) {
        G(m, m) = g[m](0, 0);
        G(m, 3 + m) = g[m](0, 1);
        G(3 + m, m) = g[m](1, 0);
        G(3 + m, 3 + m) = g[m](1, 1);
    }
    return G;
}

// Parameters (u, r, th) -> gamma = e^{u^2}/2 R(th) diag(e^r, e^-r) R(th)^T:
// automatically symmetric with det >= 1/4, i.e. physical single-mode.
inline Eigen::Matrix2d mode_covariance(double u, double r, double th) {
    const double s = std::exp(std::min(u * u, 30.0));
    const double er = std::exp(std::clamp(r, -30.0, 30.0));
    const double c = std::cos(th), sn = std::sin(th);
    Eigen::Matrix2d R;
    R << c, -sn, sn, c;
    Eigen::Matrix2d D = Eigen::Matrix2d::Zero();
    D(0, 0) = 0.5 * s * er;
    D(1, 1) = 0.5 * s / er;
    return R * D * R.transpose();
}

inline std::array<Eigen::Matrix2d, 3> params_to_modes(
    const std::array<double, 9>& p) {
    return {mode_covariance(p[0], p[1], p[2]), mode_covariance(p[3], p[4], p[5]),
            mode_covariance(p[6], p[7], p[8])};
}

// Least-squares fit of (u, r, th) to a target symmetric 2x2 matrix,
// projecting onto the physical set if needed.
inline void fit_mode(const Eigen::Matrix2d& target, double* p) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(target);
    double a = std::max(es.eigenvalues()[1], 1e-6);
    double b = std::max(es.eigenvalues()[0], 1e-6);
    const double det = a * b;
    double s = det > 0.25 ? 0.5 * std::log(4.0 * det) : 0.0;
    const double r = 0.5 * std::log(a / b);
    const Eigen::Vector2d v = es.eigenvectors().col(1);  // for eigenvalue a
    const double th = std::atan2(v[1], v[0]);
    p[0] = std::sqrt(s);
    p[1] = r;
    p[2] = th;
}

inline double objective(const Matrix6d& sigma, const std::array<double, 9>& p) {
    const Matrix6d G = direct_sum(params_to_modes(p));
    Eigen::SelfAdjointEigenSolver<Matrix6d> es(sigma - G, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// Nelder-Mead maximization of the margin; returns best (params, value).
inline std::pair<std::array<double, 9>, double> nelder_mead(
    const Matrix6d& sigma, std::array<double, 9> start, int max_iter,
    double stop_when_above, double step = 0.25) {
    constexpr int n = 9;
    using Point = std::array<double, 9>;
    std::array<Point, n + 1> xs;
    std::array<double, n + 1> fs;
    xs[0] = start;
    fs[0] = objective(sigma, xs[0]);
    for (int i = 0; i < n; ++i) {
        xs[i + 1] = start;
        xs[i + 1][i] += step;
        fs[i + 1] = objective(sigma, xs[i + 1]);
    }
    auto order = [&]() {
        std::array<int, n + 1> idx;
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return fs[a] > fs[b]; });  // maximize
        std::array<Point, n + 1> xs2;
        std::array<double, n + 1> fs2;
        for (int i = 0; i <= n; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs = xs2;
        fs = fs2;
    };
    order();
    for (int it = 0; it < max_iter; ++it) {
        if (fs[0] >= stop_when_above) break;
        if (fs[0] - fs[n] < 1e-13 && it > 20) break;  // converged simplex
        Point centroid{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[j] += xs[i][j] / n;
        auto affine = [&](double t) {
            Point p;
            for (int j = 0; j < n; ++j)
                p[j] = centroid[j] + t * (centroid[j] - xs[n][j]);
            return p;
        };
        const Point xr = affine(1.0);
        const double fr = objective(sigma, xr);
        if (fr > fs[0]) {
            const Point xe = affine(2.0);
            const double fe = objective(sigma, xe);
            if (fe > fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr > fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const Point xc = affine(-0.5);
            const double fc = objective(sigma, xc);
            if (fc > fs[n]) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        xs[i][j] = 0.5 * (xs[i][j] + xs[0][j]);
                    fs[i] = objective(sigma, xs[i]);
                }
            }
        }
        order();
    }
    return {xs[0], fs[0]};
}

} // namespace detail_cert

// Search for single-mode covariances gamma_a with sigma - (+)gamma_a >= 0,
// certifying full separability. A deterministic phase (marginals, conditional
// covariances, shifted marginals, each polished by Nelder-Mead and refined)
// resolves almost every feasible point including near-boundary ones; seeded
// random restarts then cover the remainder. Returns the certificate when the
// best margin reaches -found_tol.
inline std::optional<SeparabilityCertificate> full_separability_certificate(
    const Matrix6d& sigma, const CertificateSettings& settings = {}) {
    using detail_cert::objective;

    std::array<Eigen::Matrix2d, 3> marginals;
    for (int m = 0; m < 3; ++m) {
        marginals[m] << sigma(m, m), sigma(m, 3 + m), sigma(3 + m, m),
            sigma(3 + m, 3 + m);
    }

    std::array<double, 9> best_p{};
    double best_f = -std::numeric_limits<double>::infinity();
    auto consider = [&](const std::array<double, 9>& p) {
        const double f = objective(sigma, p);
        if (f > best_f) {
            best_f = f;
            best_p = p;
        }
        return f;
    };

    std::vector<std::array<double, 9>> starts;

    // exact marginals (a product state certifies immediately)
    std::array<double, 9> p0{};
    for (int m = 0; m < 3; ++m) detail_cert::fit_mode(marginals[m], &p0[3 * m]);
    starts.push_back(p0);

    // conditional covariances: Schur complement of each mode on the rest
    {
        std::array<double, 9> p{};
        for (int m = 0; m < 3; ++m) {
            Eigen::Matrix2d a;
            Eigen::Matrix<double, 2, 4> b;
            Eigen::Matrix4d d;
            std::array<int, 2> mi = {m, 3 + m};
            std::array<int, 4> oi{};
            int n = 0;
            for (int q = 0; q < 6; ++q)
                if (q != m && q != 3 + m) oi[n++] = q;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) a(i, j) = sigma(mi[i], mi[j]);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 4; ++j) b(i, j) = sigma(mi[i], oi[j]);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) d(i, j) = sigma(oi[i], oi[j]);
            const Eigen::Matrix2d schur = a - b * d.inverse() * b.transpose();
            detail_cert::fit_mode(schur, &p[3 * m]);
        }
        starts.push_back(p);
    }

    // marginals uniformly shifted down until sigma - sum is PSD
    {
        const Matrix6d G = detail_cert::direct_sum(marginals);
        Eigen::SelfAdjointEigenSolver<Matrix6d> es(sigma - G,
                                                   Eigen::EigenvaluesOnly);
        const double t = std::max(0.0, -es.eigenvalues().minCoeff());
        for (double f : {1.0, 1.5, 3.0}) {
            std::array<double, 9> p{};
            for (int m = 0; m < 3; ++m) {
                Eigen::Matrix2d target =
                    marginals[m] - f * t * Eigen::Matrix2d::Identity();
                detail_cert::fit_mode(target, &p[3 * m]);
            }
            starts.push_back(p);
        }
    }

    const double accept = 1e-9;  // strictly feasible, stop searching
    for (const auto& s : starts) {
        consider(s);
        if (best_f >= accept) break;
        auto [p, f] = detail_cert::nelder_mead(sigma, s, settings.iterations,
                                               accept, 0.25);
        if (f > best_f) {
            best_f = f;
            best_p = p;
        }
        if (best_f >= accept) break;
    }
    if (best_f < accept) {
        // refinement pass around the deterministic optimum
        auto [p, f] = detail_cert::nelder_mead(sigma, best_p, settings.iterations,
                                               accept, 0.02);
        if (f > best_f) {
            best_f = f;
            best_p = p;
        }
    }

    std::mt19937_64 rng(settings.seed);
    std::normal_distribution<double> jitter(0.0, 0.3);
    for (int r = 0; r < settings.restarts && best_f < accept; ++r) {
        std::array<double, 9> start = (r % 2 == 0) ? p0 : best_p;
        for (auto& v : start) v += jitter(rng);
        auto [p, f] = detail_cert::nelder_mead(sigma, start, settings.iterations,
                                               accept, 0.25);
        if (f > best_f) {
            best_f = f;
            best_p = p;
        }
    }

    if (best_f >= -settings.found_tol) {
        SeparabilityCertificate cert;
        cert.gamma = detail_cert::params_to_modes(best_p);
        cert.margin = best_f;
        return cert;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct BipartitionReport {
    Bipartition bipartition = Bipartition::L_vs_CR;
    double nu_min = 0.0;
    bool separable = false;
    double log_negativity = 0.0;
    bool boundary = false;  // |nu_min - 1/2| within the boundary band
};

struct ClassifySettings {
    double sep_tol = 1e-9;        // separable iff nu_min >= 1/2 - sep_tol
    double boundary_band = 1e-7;  // annotation only
    CertificateSettings certificate;
};

struct EntanglementReport {
    std::array<BipartitionReport, 3> bipartitions;
    EntanglementClass cls = EntanglementClass::C5;
    std::optional<SeparabilityCertificate> certificate;
    double physicality_margin = 0.0;
    ClassifySettings settings;
};

inline EntanglementReport classify(const Matrix6d& sigma,
                                   const ClassifySettings& settings = {}) {
    EntanglementReport rep;
    rep.settings = settings;
    const PhysicalityReport phys = physicality(sigma);
    rep.physicality_margin = phys.margin;
    if (!phys.physical)
        throw ParameterError("classify: covariance matrix is not physical, "
                             "margin = " + std::to_string(phys.margin));

    int n_separable = 0;
    for (int i = 0; i < 3; ++i) {
        const Bipartition b = all_bipartitions[i];
        BipartitionReport& br = rep.bipartitions[i];
        br.bipartition = b;
        const Eigen::Vector3d nu =
            symplectic_eigenvalues(partial_transpose(sigma, b));
        br.nu_min = nu.minCoeff();
        br.separable = br.nu_min >= 0.5 - settings.sep_tol;
        br.boundary = std::abs(br.nu_min - 0.5) < settings.boundary_band;
        br.log_negativity = 0.0;
        for (int j = 0; j < 3; ++j)
            br.log_negativity += std::max(0.0, -std::log(2.0 * nu[j]));
        if (br.separable) ++n_separable;
    }

    switch (n_separable) {
        case 0: rep.cls = EntanglementClass::C1; break;
        case 1: rep.cls = EntanglementClass::C2; break;
        case 2: rep.cls = EntanglementClass::C3; break;
        default: {
            rep.certificate =
                full_separability_certificate(sigma, settings.certificate);
            rep.cls = rep.certificate ? EntanglementClass::C5
                                      : EntanglementClass::C4;
            break;
        }
    }
    return rep;
}

} // namespace trichain
