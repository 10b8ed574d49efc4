// Polynomial matrix F, its determinant, and the root solver.

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "trichain/model.hpp"
#include "trichain/polynomial.hpp"

using namespace trichain;

namespace {

const ChainParams chain(1.0, 1.2, 0.9, 0.05);
const BathParams bath(0.1, 0.15, 0.2, 0.01, 50.0);

// Cardano-style cubic-formula oracle for monic-normalizable complex cubics,
// independent of the companion-matrix route. The closed form loses a few
// digits when coefficients span several orders, so each root is tightened
// with Newton steps on the same cubic.
std::array<cplx_x, 3> cubic_formula(cplx_x c0, cplx_x c1, cplx_x c2, cplx_x c3) {
    const cplx_x a = c2 / c3, b = c1 / c3, c = c0 / c3;
    const cplx_x p = b - a * a / real_x(3);
    const cplx_x q = real_x(2) * a * a * a / real_x(27) - a * b / real_x(3) + c;
    const cplx_x disc = q * q / real_x(4) + p * p * p / real_x(27);
    const cplx_x sq = std::sqrt(disc);
    cplx_x u = -q / real_x(2) + sq;
    if (std::abs(u) < std::abs(-q / real_x(2) - sq)) u = -q / real_x(2) - sq;
    u = std::pow(u, real_x(1) / real_x(3));
    std::array<cplx_x, 3> roots;
    const cplx_x w(-0.5L, 0.86602540378443864676372317075293618L);
    for (int i = 0; i < 3; ++i) {
        const cplx_x ui = u * std::pow(w, real_x(i));
        const cplx_x v = (ui == cplx_x(0, 0)) ? cplx_x(0, 0) : p / (real_x(3) * ui);
        roots[i] = ui - v - a / real_x(3);
        for (int it = 0; it < 6; ++it) {
            const cplx_x z = roots[i];
            const cplx_x f = ((c3 * z + c2) * z + c1) * z + c0;
            const cplx_x df = (real_x(3) * c3 * z + real_x(2) * c2) * z + c1;
            if (df == cplx_x(0, 0)) break;
            roots[i] -= f / df;
        }
    }
    return roots;
}

} // namespace

TEST_CASE("build_F structure") {
    const PolynomialMatrix F = build_F(chain, bath);

    SUBCASE("degrees: diagonal 3, off-diagonal 1, corners untouched by k") {
        for (int i = 0; i < 3; ++i) CHECK(poly::degree(F(i, i)) == 3);
        CHECK(poly::degree(F(0, 1)) == 1);
        CHECK(poly::degree(F(0, 2)) == -1);  // corner entries vanish
    }

    SUBCASE("leading determinant coefficient has magnitude m^3 = 1") {
        const Poly det = F.determinant();
        CHECK(poly::degree(det) == 9);
        CHECK(std::abs(det[9]) == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("static value is the bare stiffness times the cutoff") {
        // F(0) = wc (phi - m gamma wc I) = wc (m diag(w^2) + V), real
        const auto F0 = F.eval(cplx_x(0, 0));
        Eigen::Matrix3d ref = chain.frequencies()
                                  .cwiseProduct(chain.frequencies())
                                  .asDiagonal();
        ref += chain.V;
        ref *= bath.omega_c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(static_cast<double>(F0(i, j).real()) ==
                      doctest::Approx(ref(i, j)).epsilon(1e-12));
                CHECK(std::abs(F0(i, j).imag()) == 0.0);
            }
    }

    SUBCASE("determinant matches pointwise 3x3 determinants (interpolation oracle)") {
        const Poly det = F.determinant();
        for (double w : {0.0, 0.31, 1.0, 2.7, 10.0, 49.0}) {
            const auto M = F.eval(cplx_x(w, 0));
            const cplx_x direct = M(0, 0) * (M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1)) -
                                  M(0, 1) * (M(1, 0) * M(2, 2) - M(1, 2) * M(2, 0)) +
                                  M(0, 2) * (M(1, 0) * M(2, 1) - M(1, 1) * M(2, 0));
            const cplx_x from_poly = poly::eval(det, cplx_x(w, 0));
            CHECK(std::abs(direct - from_poly) <=
                  1e-13 * poly::eval_magnitude(det, cplx_x(w, 0)));
        }
    }
}

TEST_CASE("root finding") {
    const PolynomialMatrix F = build_F(chain, bath);
    const RootSet rs = find_roots(F);

    SUBCASE("all nine roots in the open lower half plane") {
        for (const auto& z : rs.roots) CHECK(z.imag() < 0.0);
    }

    SUBCASE("scaled residuals below 1e-10") {
        CHECK(rs.max_scaled_residual < 1e-10);
    }

    SUBCASE("roots are simple") {
        CHECK(rs.min_separation > 1e-12 * rs.max_magnitude);
    }

    SUBCASE("combined with conjugates the set is conjugation-closed") {
        // real degree-18 polynomial P(w) conj(P(conj w)): roots come in
        // conjugate pairs by construction; check P(-conj z) = conj P(z)
        const Poly det = F.determinant();
        for (const auto& z : rs.roots) {
            const cplx_x a = poly::eval(det, -std::conj(z));
            const cplx_x b = std::conj(poly::eval(det, z));
            CHECK(std::abs(a - b) <=
                  1e-12 * poly::eval_magnitude(det, z));
        }
    }

    SUBCASE("factorized and generic companion routes agree on slow roots") {
        const RootSet generic = find_roots(F.determinant());
        // compare sorted root sets; the cutoff cluster limits the generic
        // route, so match only to 1e-4 absolute
        for (int i = 0; i < 9; ++i)
            CHECK(std::abs(generic.roots[i] - rs.roots[i]) < 1e-4);
    }
}

TEST_CASE("k = 0 factorizes into three independent cubics") {
    const ChainParams free_chain(1.0, 1.2, 0.9, 0.0);
    const PolynomialMatrix F = build_F(free_chain, bath);
    const RootSet rs = find_roots(F);
    const EffectivePotential pot(free_chain, bath);

    std::vector<cplx_x> oracle;
    for (int i = 0; i < 3; ++i) {
        // cubic (wc - i w)(phi_ii - m w^2) - m gamma wc^2 per uncoupled mode
        const real_x wc = bath.omega_c, g = bath.gamma, phi = pot.phi(i, i);
        const auto roots = cubic_formula(
            cplx_x(wc * phi - g * wc * wc, 0), cplx_x(0, -phi),
            cplx_x(-wc, 0), cplx_x(0, 1));
        for (const auto& z : roots) oracle.push_back(z);
    }
    auto key = [](cplx_x a, cplx_x b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    };
    std::sort(oracle.begin(), oracle.end(), key);
    std::array<cplx_x, 9> mine = rs.roots;
    for (int i = 0; i < 9; ++i)
        CHECK(std::abs(mine[i] - oracle[i]) < 1e-10);

    // cubic-formula roots satisfy |P(z)| ~ 0 on the full determinant
    const Poly det = F.determinant();
    for (const auto& z : oracle)
        CHECK(std::abs(poly::eval(det, z)) <=
              1e-12 * poly::eval_magnitude(det, z));
}

TEST_CASE("root solver error paths") {
    SUBCASE("degenerate triple roots are refused") {
        const PolynomialMatrix F =
            build_F(ChainParams::resonant(0.0), bath);
        CHECK_THROWS_AS(find_roots(F), RootMultiplicityError);
    }
    SUBCASE("wrong degree is rejected") {
        CHECK_THROWS_AS(find_roots(Poly{cplx_x(1, 0), cplx_x(1, 0)}),
                        ParameterError);
    }
}
