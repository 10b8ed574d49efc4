// PPT tests, log-negativity, full-separability certificates, classification.

#include <doctest.h>

#include <cmath>
#include <random>

#include "trichain/entanglement.hpp"
#include "trichain/quadrature_engine.hpp"
#include "trichain/residue_engine.hpp"
#include "trichain/validate.hpp"

using namespace trichain;

namespace {

Matrix6d vacuum() { return 0.5 * Matrix6d::Identity(); }

// Single-mode thermal states with mean occupation nbar, as a product state.
Matrix6d thermal_product(double n1, double n2, double n3) {
    Eigen::Matrix3d d = Eigen::Vector3d(n1 + 0.5, n2 + 0.5, n3 + 0.5).asDiagonal();
    return CovarianceMatrix::from_blocks(d, d, Eigen::Matrix3d::Zero()).sigma;
}

// Two-mode squeezed state between modes 0 and 1 plus vacuum mode 2.
Matrix6d tms_plus_vacuum(double r) {
    const double ch = std::cosh(2.0 * r), sh = std::sinh(2.0 * r);
    Eigen::Matrix3d xx = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d pp = Eigen::Matrix3d::Identity();
    xx(0, 0) = xx(1, 1) = ch;
    xx(0, 1) = xx(1, 0) = sh;
    pp(0, 0) = pp(1, 1) = ch;
    pp(0, 1) = pp(1, 0) = -sh;
    return 0.5 * CovarianceMatrix::from_blocks(xx, pp, Eigen::Matrix3d::Zero())
                     .sigma;
}

const BathParams fig2_bath(0.025, 0.025, 0.025, 0.01, 50.0);

} // namespace

TEST_CASE("physicality") {
    CHECK(physicality(vacuum()).physical);
    CHECK(physicality(vacuum()).margin == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(physicality(0.25 * Matrix6d::Identity()).physical);

    // every solver output is physical
    for (const PointParams& p : checks::random_points(5, 2024)) {
        const CovarianceMatrix s = steady_covariance_residue(p.chain(), p.bath());
        CHECK(physicality(s.sigma).physical);
    }
}

TEST_CASE("partial transpose") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix6d A;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) A(i, j) = g(rng);
    const Matrix6d sigma = 0.5 * (A + A.transpose()).eval();

    for (int m = 0; m < 3; ++m) {
        const Matrix6d pt = partial_transpose(sigma, m);
        CHECK((partial_transpose(pt, m) - sigma).cwiseAbs().maxCoeff() == 0.0);
        CHECK(pt.determinant() ==
              doctest::Approx(sigma.determinant()).epsilon(1e-12));
    }
    const Matrix6d diag = thermal_product(0.3, 0.7, 1.1);
    CHECK((partial_transpose(diag, 1) - diag).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symplectic eigenvalues") {
    SUBCASE("vacuum") {
        const Eigen::Vector3d nu = symplectic_eigenvalues(vacuum());
        for (int i = 0; i < 3; ++i) CHECK(nu[i] == doctest::Approx(0.5));
    }
    SUBCASE("thermal diagonal oracle: nu = nbar + 1/2") {
        const Eigen::Vector3d nu =
            symplectic_eigenvalues(thermal_product(0.1, 0.9, 2.3));
        CHECK(nu[0] == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(nu[1] == doctest::Approx(1.4).epsilon(1e-12));
        CHECK(nu[2] == doctest::Approx(2.8).epsilon(1e-12));
    }
    SUBCASE("chain ground state is pure: all nu = 1/2") {
        const CovarianceMatrix gs =
            checks::bare_ground_state(ChainParams::resonant(0.05));
        const Eigen::Vector3d nu = symplectic_eigenvalues(gs.sigma);
        for (int i = 0; i < 3; ++i)
            CHECK(nu[i] == doctest::Approx(0.5).epsilon(1e-6));
    }
    SUBCASE("non-positive-definite input rejected") {
        CHECK_THROWS_AS(symplectic_eigenvalues(Matrix6d::Zero()), ParameterError);
    }
}

TEST_CASE("PPT separability") {
    SUBCASE("product of thermal states is separable in all bipartitions") {
        const Matrix6d sigma = thermal_product(0.2, 0.5, 1.0);
        for (Bipartition b : all_bipartitions) {
            const PptResult r = ppt_separable(sigma, b);
            CHECK(r.separable);
            CHECK(r.nu_min >= 0.5);
        }
    }
    SUBCASE("two-mode squeezed oracle: nu_min = e^{-2r}/2") {
        for (double r : {0.3, 1.0}) {
            const Matrix6d sigma = tms_plus_vacuum(r);
            const PptResult res = ppt_separable(sigma, Bipartition::L_vs_CR);
            CHECK_FALSE(res.separable);
            CHECK(res.nu_min ==
                  doctest::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-10));
            // the cut separating the squeezed pair from the vacuum stays PPT
            CHECK(ppt_separable(sigma, Bipartition::R_vs_LC).separable);
        }
    }
    SUBCASE("fig2 low-temperature point is inseparable in all bipartitions") {
        const CovarianceMatrix s =
            steady_covariance_residue(ChainParams::resonant(0.05), fig2_bath);
        for (Bipartition b : all_bipartitions)
            CHECK_FALSE(ppt_separable(s.sigma, b).separable);
    }
}

TEST_CASE("logarithmic negativity") {
    SUBCASE("separable bipartitions give zero") {
        const Matrix6d sigma = thermal_product(0.2, 0.5, 1.0);
        for (Bipartition b : all_bipartitions)
            CHECK(log_negativity(sigma, b) == 0.0);
    }
    SUBCASE("two-mode squeezed r = 1 gives E_N = 2") {
        CHECK(log_negativity(tms_plus_vacuum(1.0), Bipartition::L_vs_CR) ==
              doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("monotonically nonincreasing with bath temperature") {
        double prev = std::numeric_limits<double>::infinity();
        for (double That : {0.05, 0.15, 0.25, 0.35, 0.45}) {
            const double T = units::temperature_from_ratio(That);
            const CovarianceMatrix s = steady_covariance_residue(
                ChainParams::resonant(0.05), BathParams(T, T, T, 0.01, 50.0));
            const double en = log_negativity(s.sigma, Bipartition::C_vs_LR);
            CHECK(en <= prev + 1e-12);
            prev = en;
        }
    }
    SUBCASE("consistency: E_N > 0 iff inseparable") {
        for (const PointParams& p : checks::random_points(6, 11)) {
            const CovarianceMatrix s =
                steady_covariance_residue(p.chain(), p.bath());
            for (Bipartition b : all_bipartitions) {
                const PptResult r = ppt_separable(s.sigma, b);
                const double en = log_negativity(s.sigma, b);
                if (std::abs(r.nu_min - 0.5) > 1e-7)  // outside boundary band
                    CHECK(r.separable == (en == 0.0));
            }
        }
    }
}

TEST_CASE("full separability certificate") {
    SUBCASE("exact product state: marginals certify immediately") {
        const Matrix6d sigma = thermal_product(0.2, 0.5, 1.0);
        const auto cert = full_separability_certificate(sigma);
        REQUIRE(cert.has_value());
        CHECK(cert->margin >= -1e-12);
        for (int m = 0; m < 3; ++m) {
            CHECK(cert->gamma[m].determinant() >= 0.25 - 1e-9);
            CHECK(cert->gamma[m](0, 0) > 0.0);
        }
    }
    SUBCASE("product state plus isotropic classical noise") {
        const Matrix6d sigma =
            thermal_product(0.2, 0.5, 1.0) + 0.1 * Matrix6d::Identity();
        const auto cert = full_separability_certificate(sigma);
        REQUIRE(cert.has_value());
        // certificate validity is independently checkable
        Matrix6d G = Matrix6d::Zero();
        for (int m = 0; m < 3; ++m) {
            G(m, m) = cert->gamma[m](0, 0);
            G(m, 3 + m) = G(3 + m, m) = cert->gamma[m](0, 1);
            G(3 + m, 3 + m) = cert->gamma[m](1, 1);
        }
        Eigen::SelfAdjointEigenSolver<Matrix6d> es(sigma - G);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }
    SUBCASE("entangled state has no certificate") {
        CHECK_FALSE(full_separability_certificate(tms_plus_vacuum(1.0)).has_value());
    }
}

TEST_CASE("classification") {
    SUBCASE("fig2 anchors") {
        const CovarianceMatrix c1 =
            steady_covariance_residue(ChainParams::resonant(0.05), fig2_bath);
        CHECK(classify(c1.sigma).cls == EntanglementClass::C1);

        // k = 0, equal temperatures: exact product stationary state
        const CovarianceMatrix c5 = steady_covariance_quadrature(
            ChainParams::resonant(0.0), BathParams(0.175, 0.175, 0.175, 0.01, 50.0));
        CHECK(classify(c5.sigma).cls == EntanglementClass::C5);
    }

    SUBCASE("bound entangled window between C3 and C5") {
        // the C3 -> C5 transition at k = 0.05 passes through a thin C4 band
        // hugging the PPT boundary
        const double That = 0.46428;
        const double T = units::temperature_from_ratio(That);
        const CovarianceMatrix s = steady_covariance_residue(
            ChainParams::resonant(0.05), BathParams(T, T, T, 0.01, 50.0));
        const EntanglementReport rep = classify(s.sigma);
        CHECK(rep.cls == EntanglementClass::C4);
        for (const auto& b : rep.bipartitions) CHECK(b.separable);
    }

    SUBCASE("C2 appears in the asymmetric gradient configuration") {
        const CovarianceMatrix s = steady_covariance_residue(
            ChainParams(1.0, 2.0, 3.0, 0.06),
            BathParams::from_gradient(0.175, units::temperature_from_ratio(0.4),
                                      0.01, 50.0));
        CHECK(classify(s.sigma).cls == EntanglementClass::C2);
    }

    SUBCASE("invariant under L-R exchange with relabeled bipartitions") {
        for (const PointParams& p : checks::random_points(4, 5150)) {
            const CovarianceMatrix s =
                steady_covariance_residue(p.chain(), p.bath());
            const EntanglementReport a = classify(s.sigma);
            const EntanglementReport b = classify(checks::swap_LR(s.sigma));
            CHECK(a.cls == b.cls);
            CHECK(a.bipartitions[0].nu_min ==
                  doctest::Approx(b.bipartitions[2].nu_min).epsilon(1e-9));
            CHECK(a.bipartitions[1].nu_min ==
                  doctest::Approx(b.bipartitions[1].nu_min).epsilon(1e-9));
        }
    }

    SUBCASE("bisymmetric states: outer bipartition verdicts coincide") {
        const CovarianceMatrix s = steady_covariance_residue(
            ChainParams::resonant(0.03), BathParams(0.15, 0.15, 0.15, 0.01, 50.0));
        const EntanglementReport rep = classify(s.sigma);
        CHECK(rep.bipartitions[0].separable == rep.bipartitions[2].separable);
        CHECK(rep.bipartitions[0].nu_min ==
              doctest::Approx(rep.bipartitions[2].nu_min).epsilon(1e-10));
        CHECK(rep.cls != EntanglementClass::C2);
    }

    SUBCASE("unphysical input rejected") {
        CHECK_THROWS_AS(classify(0.25 * Matrix6d::Identity()), ParameterError);
    }
}
