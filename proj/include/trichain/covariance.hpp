// covariance.hpp — 6x6 stationary covariance matrix in (x,x,x,p,p,p) block order.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "trichain/errors.hpp"

namespace trichain {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix6cd = Eigen::Matrix<std::complex<double>, 6, 6>;

// Symplectic form K = [[0, I], [-I, 0]] in the xxxppp ordering (hbar = 1).
inline Matrix6d symplectic_form() {
    Matrix6d K = Matrix6d::Zero();
    K.block<3, 3>(0, 3) = Eigen::Matrix3d::Identity();
    K.block<3, 3>(3, 0) = -Eigen::Matrix3d::Identity();
    return K;
}

// Minimum eigenvalue of sigma + (i/2) K. Physical Gaussian states have
// margin >= 0 up to roundoff.
inline double physicality_margin(const Matrix6d& sigma) {
    Matrix6cd H = sigma.cast<std::complex<double>>();
    H += std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Matrix6cd> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// Stationary second moments sigma = [[C_XX, C_XP], [C_XP^T, C_PP]].
struct CovarianceMatrix {
    Matrix6d sigma = Matrix6d::Zero();

    CovarianceMatrix() = default;
    explicit CovarianceMatrix(const Matrix6d& s) : sigma(s) {}

    static CovarianceMatrix from_blocks(const Eigen::Matrix3d& xx,
                                        const Eigen::Matrix3d& pp,
                                        const Eigen::Matrix3d& xp) {
        CovarianceMatrix c;
        c.sigma.block<3, 3>(0, 0) = xx;
        c.sigma.block<3, 3>(3, 3) = pp;
        c.sigma.block<3, 3>(0, 3) = xp;
        c.sigma.block<3, 3>(3, 0) = xp.transpose();
        return c;
    }

    Eigen::Matrix3d xx() const { return sigma.block<3, 3>(0, 0); }
    Eigen::Matrix3d pp() const { return sigma.block<3, 3>(3, 3); }
    Eigen::Matrix3d xp() const { return sigma.block<3, 3>(0, 3); }

    double physicality() const { return physicality_margin(sigma); }
};

} // namespace trichain
