// self_energy.hpp — emitter self-energy and reservoir resolvent with
// two-sheet branch control

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "sshqed/couplings.hpp"
#include "sshqed/lattice.hpp"

namespace sshqed {

enum class Sheet { First, Second };

inline const char* to_string(Sheet s) { return s == Sheet::First ? "first" : "second"; }

namespace detail {

// For real z the bands are approached from above (z + i0+).  The square roots
// below branch on the sign of the imaginary part, so the signed zero of
// Im(z^2) must match that limit: Im(z^2) = 2 Re(z) * 0+.
inline Complex square_toward_upper_half(Complex z) {
    Complex u = z * z;
    if (z.imag() == 0.0) u = Complex(u.real(), std::copysign(0.0, z.real()));
    return u;
}

} // namespace detail

// Branch of sqrt((z^2 - J+^2)(z^2 - J-^2)) that is analytic off the two band
// segments and behaves like -z^2 at infinity.  That normalization makes
// z * Sigma(z) -> g^2 (the resolvent sum rule) and Im Sigma(E + i0+) <= 0
// inside the bands.  The second sheet is the continuation through the cuts,
// i.e. the global sign flip.
inline Complex s_branch(const CouplingParams& p, Complex z, Sheet sheet) {
    const double jp = p.band_outer(), jm = p.band_inner();
    const Complex u = detail::square_toward_upper_half(z);
    const Complex s = -(std::sqrt(u - Complex(jp * jp)) * std::sqrt(u - Complex(jm * jm)));
    return sheet == Sheet::First ? s : -s;
}

struct SelfEnergyEval {
    Complex z;
    Sheet sheet{Sheet::First};
    Complex sigma;    // Sigma(z)
    Complex s_branch; // S(z) value used
};

namespace detail {

inline void check_self_energy_domain(const CouplingParams& p, Complex z) {
    if (std::abs(z) < 1e-300)
        throw std::domain_error("self_energy: z = 0 must go through the zero-mode limit path");
    const double jp = p.band_outer(), jm = p.band_inner();
    for (double bp : {jp, -jp, jm, -jm}) {
        if (std::abs(z - Complex(bp)) < 1e-10)
            throw std::domain_error("self_energy: z too close to a branch point");
    }
}

} // namespace detail

// Sigma(z) = g^2 (z^2 + (J1^2 - J2^2) + S(z)) / (2 J1^2 z)
inline SelfEnergyEval self_energy(const CouplingParams& p, Complex z, Sheet sheet) {
    detail::check_self_energy_domain(p, z);
    const Complex S = s_branch(p, z, sheet);
    const double d = p.j1() * p.j1() - p.j2() * p.j2();
    const Complex sig = p.g() * p.g() * (z * z + d + S) / (2.0 * p.j1() * p.j1() * z);
    return {z, sheet, sig, S};
}

// dSigma/dz from the analytic derivative of the closed form
inline Complex self_energy_derivative(const CouplingParams& p, Complex z, Sheet sheet) {
    detail::check_self_energy_domain(p, z);
    const Complex S = s_branch(p, z, sheet);
    const double j1sq = p.j1() * p.j1(), j2sq = p.j2() * p.j2();
    const Complex Sp = 2.0 * z * (z * z - j1sq - j2sq) / S;
    const double d = j1sq - j2sq;
    return p.g() * p.g() * (z * z + Sp * z - d - S) / (2.0 * j1sq * z * z);
}

// Self-energy of the bare chain seen from its first site,
// Xi(z) = (z^2 - (J1^2 - J2^2) + S(z)) / (2 z), consistent with
// Sigma(z) = g^2 / (z - Xi(z)).
inline Complex reservoir_self_energy(const CouplingParams& p, Complex z, Sheet sheet) {
    detail::check_self_energy_domain(p, z);
    const double d = p.j1() * p.j1() - p.j2() * p.j2();
    return (z * z - d + s_branch(p, z, sheet)) / (2.0 * z);
}

// Fixed-point iteration of Xi = j2^2 / (z - j1^2 / (z - Xi)) starting from 0;
// converges to the first-sheet value for z off the real axis.  Used as an
// independent route to the closed form.
inline Complex reservoir_self_energy_iterated(const CouplingParams& p, Complex z,
                                              int iterations = 500) {
    Complex xi = 0.0;
    const double j1sq = p.j1() * p.j1(), j2sq = p.j2() * p.j2();
    for (int i = 0; i < iterations; ++i) xi = j2sq / (z - j1sq / (z - xi));
    return xi;
}

// Emitter Green's function 1/(z - Sigma(z)) on the requested sheet
inline Complex green_function(const CouplingParams& p, Complex z, Sheet sheet) {
    return 1.0 / (z - self_energy(p, z, sheet).sigma);
}

} // namespace sshqed
