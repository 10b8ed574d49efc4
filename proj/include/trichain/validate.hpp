// validate.hpp — Shared validation suites: cross-engine sampling, physical
// limit oracles, symmetry checks, special-function oracles. Used by the
// `validate` CLI subcommand (quick sizes) and the acceptance suite (full
// sizes and tolerances).

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trichain/covariance.hpp"
#include "trichain/digamma.hpp"
#include "trichain/entanglement.hpp"
#include "trichain/model.hpp"
#include "trichain/quadrature.hpp"
#include "trichain/quadrature_engine.hpp"
#include "trichain/residue_engine.hpp"
#include "trichain/response.hpp"
#include "trichain/sweep.hpp"
#include "trichain/units.hpp"

namespace trichain {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace checks {

// Random parameter points spanning the figure ranges: k in [0, 0.1],
// T_hat in (0, 1], |dT_hat| < 2 T_hat, delta in [0, 3], gamma log-uniform
// in [1e-3, 0.3], omega_c = 50.
inline std::vector<PointParams> random_points(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<PointParams> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        PointParams p;
        p.k = 0.1 * uni(rng);
        p.T = 0.01 + 0.99 * uni(rng);
        p.dT = (2.0 * uni(rng) - 1.0) * 0.95 * 2.0 * p.T;
        p.omega_C = units::Omega + 3.0 * uni(rng);
        p.gamma = 1e-3 * std::pow(0.3 / 1e-3, uni(rng));
        p.omega_c = 50.0;
        pts.push_back(p);
    }
    return pts;
}

struct CrossEngineStats {
    int points = 0;
    int failures = 0;
    double worst_abs = 0.0;
    double worst_excess = 0.0;  // worst ratio of deviation to allowed band
};

inline CrossEngineStats cross_engine(const std::vector<PointParams>& pts,
                                     double tol_abs = 1e-8,
                                     double tol_rel = 1e-6) {
    CrossEngineStats st;
    for (const PointParams& p : pts) {
        const CovarianceMatrix q = steady_covariance_quadrature(p.chain(), p.bath());
        const CovarianceMatrix r = steady_covariance_residue(p.chain(), p.bath());
        ++st.points;
        bool ok = true;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const double d = std::abs(q.sigma(i, j) - r.sigma(i, j));
                const double s =
                    std::max(std::abs(q.sigma(i, j)), std::abs(r.sigma(i, j)));
                const double allowed = std::max(tol_abs, tol_rel * s);
                st.worst_abs = std::max(st.worst_abs, d);
                st.worst_excess = std::max(st.worst_excess, d / allowed);
                if (d > allowed) ok = false;
            }
        if (!ok) ++st.failures;
    }
    return st;
}

// Classical equipartition at k = 0, hot baths: diag C_XX = k_B T / (m w^2),
// diag C_PP = m k_B T. Returns worst relative deviation.
inline double equipartition_deviation(double T_hat = 20.0, double gamma = 1e-2,
                                      double omega_c = 50.0) {
    const double T = units::temperature_from_ratio(T_hat);
    const ChainParams chain = ChainParams::resonant(0.0);
    const BathParams bath(T, T, T, gamma, omega_c);
    const CovarianceMatrix s = steady_covariance_quadrature(chain, bath);
    double worst = 0.0;
    const Eigen::Vector3d w = chain.frequencies();
    for (int i = 0; i < 3; ++i) {
        const double xx_ref = units::k_B * T / (units::mass * w[i] * w[i]);
        const double pp_ref = units::mass * units::k_B * T;
        worst = std::max(worst, std::abs(s.xx()(i, i) - xx_ref) / xx_ref);
        worst = std::max(worst, std::abs(s.pp()(i, i) - pp_ref) / pp_ref);
    }
    return worst;
}

// Ground-state covariance of the bare chain from normal modes:
// C_XX = Phi^{-1/2} / 2m, C_PP = m Phi^{1/2} / 2, Phi = (phi - 2 m dW) / m.
inline CovarianceMatrix bare_ground_state(const ChainParams& chain) {
    Eigen::Matrix3d Phi =
        chain.frequencies().cwiseProduct(chain.frequencies()).asDiagonal();
    Phi += chain.V / units::mass;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(Phi);
    Eigen::Matrix3d xx = Eigen::Matrix3d::Zero(), pp = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) {
        const double w = std::sqrt(es.eigenvalues()[i]);
        const Eigen::Vector3d v = es.eigenvectors().col(i);
        xx += (units::hbar / (2.0 * units::mass * w)) * v * v.transpose();
        pp += (units::hbar * units::mass * w / 2.0) * v * v.transpose();
    }
    return CovarianceMatrix::from_blocks(xx, pp, Eigen::Matrix3d::Zero());
}

// Thermal (Gibbs) covariance of the bare chain at temperature T.
inline CovarianceMatrix bare_gibbs_state(const ChainParams& chain, double T) {
    Eigen::Matrix3d Phi =
        chain.frequencies().cwiseProduct(chain.frequencies()).asDiagonal();
    Phi += chain.V / units::mass;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(Phi);
    Eigen::Matrix3d xx = Eigen::Matrix3d::Zero(), pp = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) {
        const double w = std::sqrt(es.eigenvalues()[i]);
        const double c =
            1.0 / std::tanh(units::hbar * w / (2.0 * units::k_B * T));
        const Eigen::Vector3d v = es.eigenvectors().col(i);
        xx += (c * units::hbar / (2.0 * units::mass * w)) * v * v.transpose();
        pp += (c * units::hbar * units::mass * w / 2.0) * v * v.transpose();
    }
    return CovarianceMatrix::from_blocks(xx, pp, Eigen::Matrix3d::Zero());
}

struct GroundStateStats {
    double rel_deviation = 0.0;     // vs normal-mode ground state
    double worst_nu_deviation = 0.0;  // symplectic eigenvalues vs 1/2
};

inline GroundStateStats ground_state(double gamma = 1e-4, double T_hat = 1e-3,
                                     double k = 0.05) {
    const double T = units::temperature_from_ratio(T_hat);
    const ChainParams chain = ChainParams::resonant(k);
    const BathParams bath(T, T, T, gamma, 50.0);
    const CovarianceMatrix s = steady_covariance_quadrature(chain, bath);
    const CovarianceMatrix ref = bare_ground_state(chain);
    GroundStateStats st;
    const double scale = ref.sigma.cwiseAbs().maxCoeff();
    st.rel_deviation = (s.sigma - ref.sigma).cwiseAbs().maxCoeff() / scale;
    const Eigen::Vector3d nu = symplectic_eigenvalues(s.sigma);
    for (int i = 0; i < 3; ++i)
        st.worst_nu_deviation =
            std::max(st.worst_nu_deviation, std::abs(nu[i] - 0.5));
    return st;
}

// Kramers-Kronig: reconstruct Re chi from Im chi by principal value and
// compare with the closed form. Returns worst relative error over the
// sampled frequencies.
inline double kramers_kronig(int n_freqs = 50, double gamma = 1e-2,
                             double omega_c = 50.0) {
    QuadratureSettings qs;
    qs.abs_tol = 1e-13;
    qs.rel_tol = 1e-10;
    qs.max_panels = 20000;
    auto im_chi = [&](double w) {
        return units::mass * units::hbar * gamma * omega_c * omega_c * w /
               (w * w + omega_c * omega_c);
    };
    double worst = 0.0;
    for (int i = 0; i < n_freqs; ++i) {
        const double w = 0.1 + (3.0 * omega_c - 0.1) * i / (n_freqs - 1);
        // P.V. integral folded symmetrically about w:
        //   Re chi(w) = (1/pi) P Int Im chi(w')/(w' - w) dw'
        //             = (1/pi) Int_0^inf [im_chi(w+s) - im_chi(w-s)]/s ds
        auto f = [&](double s) {
            return std::array<double, 1>{(im_chi(w + s) - im_chi(w - s)) / s};
        };
        const double cut = 10.0 * (w + omega_c);
        double val = integrate_adaptive<1>(f, 0.0, cut, {w, omega_c}, qs)[0];
        val += integrate_tail<1>(f, cut, qs)[0];
        val /= M_PI;
        const double ref = susceptibility_ft(w, gamma, omega_c).real();
        worst = std::max(worst, std::abs(val - ref) / std::abs(ref));
    }
    return worst;
}

// Defining-series digamma oracle with an integral tail: independent of the
// recurrence-shift + Bernoulli-series implementation.
inline std::complex<double> digamma_series_oracle(std::complex<double> z,
                                                  int terms = 100000) {
    const double euler_gamma = 0.57721566490153286060651209008240243;
    std::complex<double> sum = -euler_gamma;
    for (int n = 0; n < terms; ++n)
        sum += 1.0 / double(n + 1) - 1.0 / (double(n) + z);
    // tail: sum_{n>=N} (z-1)/((n+1)(n+z)) = log((N+z)/(N+1)) + EM corrections
    const double N = terms;
    auto f = [&](double x) { return (z - 1.0) / ((x + 1.0) * (x + z)); };
    auto fp = [&](double x) {
        return -(z - 1.0) * (2.0 * x + 1.0 + z) /
               (((x + 1.0) * (x + z)) * ((x + 1.0) * (x + z)));
    };
    sum += std::log((N + z) / (N + 1.0)) + 0.5 * f(N) - fp(N) / 12.0;
    return sum;
}

struct DigammaStats {
    double worst_rel = 0.0;       // vs series oracle
    double worst_coth = 0.0;      // coth identity residual
};

inline DigammaStats digamma_oracle(int samples = 1000,
                                   std::uint64_t seed = 7ull) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    DigammaStats st;
    for (int i = 0; i < samples; ++i) {
        const std::complex<double> z(1.0 + 49.0 * uni(rng),
                                     100.0 * (uni(rng) - 0.5));
        const std::complex<double> a = digamma(z);
        const std::complex<double> b = digamma_series_oracle(z);
        st.worst_rel = std::max(st.worst_rel, std::abs(a - b) / std::abs(b));
    }
    // coth x = 1/x + (1/i pi)[psi(1 + ix/pi) - psi(1 - ix/pi)]
    for (int i = 0; i < 200; ++i) {
        const double x = 0.05 + 20.0 * i / 199.0;
        const std::complex<double> ix(0.0, x / M_PI);
        const std::complex<double> rhs =
            1.0 / x + (digamma(std::complex<double>(1.0, 0.0) + ix) -
                       digamma(std::complex<double>(1.0, 0.0) - ix)) /
                          std::complex<double>(0.0, M_PI);
        const double lhs = 1.0 / std::tanh(x);
        st.worst_coth =
            std::max(st.worst_coth, std::abs(rhs.real() - lhs) / std::abs(lhs));
        st.worst_coth = std::max(st.worst_coth, std::abs(rhs.imag()));
    }
    return st;
}

// Exchange L and R modes of a 6x6 covariance matrix.
inline Matrix6d swap_LR(const Matrix6d& sigma) {
    Eigen::Matrix<double, 6, 6> P = Eigen::Matrix<double, 6, 6>::Zero();
    P(0, 2) = P(2, 0) = P(1, 1) = 1.0;
    P(3, 5) = P(5, 3) = P(4, 4) = 1.0;
    return P * sigma * P.transpose();
}

// Refine the location of a class transition along a 1-D parameter line by
// bisection; `classify_at` maps the parameter to a class. Assumes a single
// transition between lo and hi.
inline double refine_transition(const std::function<EntanglementClass(double)>& classify_at,
                                double lo, double hi, int iters = 40) {
    const EntanglementClass lo_class = classify_at(lo);
    for (int i = 0; i < iters && (hi - lo) > 1e-12 * (1.0 + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (classify_at(mid) == lo_class)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace checks

// Quick validation table for the CLI. `samples` controls the cross-engine
// sample count; the remaining suites run at fixed (fast) sizes.
inline std::vector<SuiteResult> run_validation(int samples = 40,
                                               std::uint64_t seed = 42ull) {
    std::vector<SuiteResult> out;
    auto add = [&](const std::string& name, bool pass, const std::string& det) {
        out.push_back({name, pass, det});
    };
    std::ostringstream ss;

    {
        const auto st = checks::cross_engine(checks::random_points(samples, seed));
        ss.str("");
        ss << st.points << " points, worst |dev| " << st.worst_abs
           << ", worst dev/allowed " << st.worst_excess;
        add("cross-engine", st.failures == 0, ss.str());
    }
    {
        const double dev = checks::equipartition_deviation();
        ss.str("");
        ss << "worst relative deviation " << dev << " (limit 0.02)";
        add("equipartition", dev < 0.02, ss.str());
    }
    {
        const auto st = checks::ground_state();
        ss.str("");
        ss << "relative deviation " << st.rel_deviation << " (limit 1e-3), nu-1/2 "
           << st.worst_nu_deviation;
        add("ground-state", st.rel_deviation < 1e-3 && st.worst_nu_deviation < 1e-3,
            ss.str());
    }
    {
        // stationarity + physicality of representative outputs
        double worst_diag = 0.0, worst_phys = 0.0, worst_eqT = 0.0;
        for (const PointParams& p : checks::random_points(8, seed ^ 0xabcdef)) {
            const CovarianceMatrix s =
                steady_covariance_residue(p.chain(), p.bath());
            for (int i = 0; i < 3; ++i)
                worst_diag = std::max(worst_diag, std::abs(s.xp()(i, i)));
            worst_phys = std::max(worst_phys, -physicality_margin(s.sigma));
            PointParams q = p;
            q.dT = 0.0;
            const CovarianceMatrix se =
                steady_covariance_residue(q.chain(), q.bath());
            worst_eqT = std::max(worst_eqT, se.xp().cwiseAbs().maxCoeff());
        }
        ss.str("");
        ss << "worst |diag C_XP| " << worst_diag << ", worst -margin "
           << worst_phys << ", equal-T |C_XP| " << worst_eqT;
        add("stationarity-physicality",
            worst_diag < 1e-8 && worst_phys < 1e-9 && worst_eqT < 1e-8, ss.str());
    }
    {
        // bisymmetry and mirror invariance
        const ChainParams chain = ChainParams::resonant(0.05);
        const double T = units::temperature_from_ratio(0.35);
        const CovarianceMatrix s = steady_covariance_residue(
            chain, BathParams(T, T, T, 1e-2, 50.0));
        const double sym_dev =
            (checks::swap_LR(s.sigma) - s.sigma).cwiseAbs().maxCoeff();

        bool mirror_ok = true;
        for (double dT : {0.2, 0.45}) {
            const double dTn = units::temperature_from_ratio(dT);
            const auto plus = classify(
                steady_covariance_residue(
                    chain, BathParams::from_gradient(T, dTn, 1e-2, 50.0))
                    .sigma);
            const auto minus = classify(
                steady_covariance_residue(
                    chain, BathParams::from_gradient(T, -dTn, 1e-2, 50.0))
                    .sigma);
            if (plus.cls != minus.cls) mirror_ok = false;
        }
        ss.str("");
        ss << "bisymmetry deviation " << sym_dev << ", dT-mirror classes "
           << (mirror_ok ? "equal" : "DIFFER");
        add("symmetry", sym_dev < 1e-10 && mirror_ok, ss.str());
    }
    {
        const double worst = checks::kramers_kronig(10);
        ss.str("");
        ss << "worst relative error " << worst << " (limit 1e-4)";
        add("kramers-kronig", worst < 1e-4, ss.str());
    }
    {
        const auto st = checks::digamma_oracle(100);
        ss.str("");
        ss << "worst series-oracle rel " << st.worst_rel << ", coth identity "
           << st.worst_coth;
        add("digamma", st.worst_rel < 1e-12 && st.worst_coth < 1e-12, ss.str());
    }
    return out;
}

} // namespace trichain
