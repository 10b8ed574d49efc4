// Stationary covariance engines: quadrature and closed-form residues,
// physical-limit oracles and cross-engine equivalence.

#include <doctest.h>

#include <cmath>
#include <random>

#include "trichain/covariance.hpp"
#include "trichain/quadrature_engine.hpp"
#include "trichain/residue_engine.hpp"
#include "trichain/validate.hpp"

using namespace trichain;

namespace {

const ChainParams fig2_chain = ChainParams::resonant(0.05);
const BathParams fig2_bath(0.025, 0.025, 0.025, 0.01, 50.0);

} // namespace

TEST_CASE("integrand: finite PSD at zero frequency, high-frequency decay") {
    const StationaryIntegrand f(fig2_chain, fig2_bath);

    SUBCASE("XX integrand at omega = 0 is finite and positive semidefinite") {
        const auto v = f(0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(v.xx);
        CHECK(es.eigenvalues().minCoeff() >= -1e-15);
        CHECK(std::isfinite(v.xx.norm()));
    }

    SUBCASE("decay powers beyond the cutoff: XX ~ w^-5, PP ~ w^-3") {
        // log-log slope fit oracle
        auto slope = [&](auto pick) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            int n = 0;
            for (double w = 2 * 50.0; w <= 8 * 50.0; w *= 1.25) {
                const auto v = f(w);
                const double y = std::log(pick(v));
                const double x = std::log(w);
                sx += x; sy += y; sxx += x * x; sxy += x * y;
                ++n;
            }
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        };
        const double sxx_slope =
            slope([](const StationaryIntegrand::Value& v) { return v.xx.norm(); });
        const double spp_slope =
            slope([](const StationaryIntegrand::Value& v) { return v.pp.norm(); });
        CHECK(sxx_slope == doctest::Approx(-5.0).epsilon(0.06));
        CHECK(spp_slope == doctest::Approx(-3.0).epsilon(0.06));
    }
}

TEST_CASE("classical equipartition at k = 0") {
    // T_hat = 20 -> k_B T = 10 in natural units
    const double dev = checks::equipartition_deviation(20.0, 0.01, 50.0);
    CHECK(dev < 0.02);
}

TEST_CASE("weak-coupling ground state from normal modes") {
    const auto st = checks::ground_state(1e-4, 1e-3, 0.05);
    CHECK(st.rel_deviation < 1e-3);
    CHECK(st.worst_nu_deviation < 1e-3);
}

TEST_CASE("L-R exchange symmetry of the resonant equal-temperature state") {
    const CovarianceMatrix s = steady_covariance_quadrature(fig2_chain, fig2_bath);
    CHECK((checks::swap_LR(s.sigma) - s.sigma).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("covariance invariants hold for both engines") {
    const BathParams grad = BathParams::from_gradient(0.175, 0.12, 0.03, 50.0);
    const ChainParams chain(1.0, 1.7, 0.9, 0.06);
    for (const CovarianceMatrix& s :
         {steady_covariance_quadrature(chain, grad),
          steady_covariance_residue(chain, grad)}) {
        CHECK((s.sigma - s.sigma.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(physicality_margin(s.sigma) >= -1e-9);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(s.xp()(i, i)) < 1e-8);
    }
}

TEST_CASE("equal temperatures kill the full XP block") {
    const CovarianceMatrix s = steady_covariance_residue(
        ChainParams(1.0, 2.1, 0.7, 0.08), BathParams(0.2, 0.2, 0.2, 0.05, 50.0));
    CHECK(s.xp().cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("quadrature result is stable under ceiling doubling and tighter tolerance") {
    const ChainParams chain(1.0, 1.4, 1.1, 0.04);
    const BathParams bath = BathParams::from_gradient(0.1, 0.08, 0.02, 50.0);
    QuadratureSettings a;  // defaults
    QuadratureSettings b;
    b.ceiling_multiplier = 16.0;
    b.abs_tol = 1e-11;
    b.rel_tol = 1e-9;
    const CovarianceMatrix sa = steady_covariance_quadrature(chain, bath, a);
    const CovarianceMatrix sb = steady_covariance_quadrature(chain, bath, b);
    CHECK((sa.sigma - sb.sigma).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("cross-engine equivalence on seeded random parameter points") {
    const auto st = checks::cross_engine(checks::random_points(25, 12345));
    CHECK(st.failures == 0);
    CHECK(st.worst_excess < 1.0);
}

TEST_CASE("residue engine agrees with quadrature on the resonant equal-T point") {
    const CovarianceMatrix q = steady_covariance_quadrature(fig2_chain, fig2_bath);
    const CovarianceMatrix r = steady_covariance_residue(fig2_chain, fig2_bath);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const double s = std::max(std::abs(q.sigma(i, j)), 1.0);
            CHECK(std::abs(q.sigma(i, j) - r.sigma(i, j)) < 1e-6 * s);
        }
}

TEST_CASE("residue engine result is continuous in temperature") {
    const ChainParams chain = ChainParams::resonant(0.05);
    const double T = 0.175;
    const CovarianceMatrix a =
        steady_covariance_residue(chain, BathParams(T, T, T, 0.01, 50.0));
    const double Tp = T * (1.0 + 1e-6);
    const CovarianceMatrix b =
        steady_covariance_residue(chain, BathParams(Tp, Tp, Tp, 0.01, 50.0));
    const double rel = (a.sigma - b.sigma).cwiseAbs().maxCoeff() /
                       a.sigma.cwiseAbs().maxCoeff();
    CHECK(rel < 1e-5);
    CHECK(rel > 0.0);
}

TEST_CASE("residue engine error paths") {
    SUBCASE("zero temperature is refused") {
        CHECK_THROWS_AS(steady_covariance_residue(
                            fig2_chain, BathParams(0.0, 0.1, 0.1, 0.01, 50.0)),
                        ParameterError);
    }
    SUBCASE("exactly degenerate roots (k = 0, resonant) are refused") {
        CHECK_THROWS_AS(steady_covariance_residue(
                            ChainParams::resonant(0.0), fig2_bath),
                        RootMultiplicityError);
    }
}
