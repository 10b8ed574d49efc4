// digamma.hpp — Complex digamma (psi) function via recurrence shift plus
// the Bernoulli asymptotic series. Relative accuracy ~1e-14 on the right
// half plane; the residue sums only ever call it with Re z >= 1.

#pragma once

#include <cmath>
#include <complex>

#include "trichain/errors.hpp"

namespace trichain {

template <typename Real>
std::complex<Real> digamma(std::complex<Real> z) {
    using C = std::complex<Real>;
    if (z.imag() == Real(0) && z.real() <= Real(0) &&
        z.real() == std::floor(z.real()))
        throw ParameterError("digamma: pole at non-positive integer argument");

    C shift(0, 0);
    // Reflect into the right half plane: psi(z) = psi(1-z) - pi cot(pi z).
    if (z.real() < Real(0.5)) {
        const Real pi = Real(3.14159265358979323846264338327950288L);
        shift -= pi / std::tan(pi * z);
        z = Real(1) - z;
    }
    // Shift up until the asymptotic series is accurate.
    while (std::abs(z) < Real(18)) {
        shift -= Real(1) / z;
        z += Real(1);
    }
    // psi(z) ~ ln z - 1/(2z) - sum B_2n / (2n z^2n)
    const C inv = Real(1) / z;
    const C inv2 = inv * inv;
    C series(0, 0);
    static const Real b[] = {
        Real(1.0L / 12.0L),      Real(-1.0L / 120.0L),   Real(1.0L / 252.0L),
        Real(-1.0L / 240.0L),    Real(1.0L / 132.0L),    Real(-691.0L / 32760.0L),
        Real(1.0L / 12.0L)};
    C p = inv2;
    for (Real coeff : b) {
        series += coeff * p;
        p *= inv2;
    }
    return shift + std::log(z) - Real(0.5) * inv - series;
}

} // namespace trichain
