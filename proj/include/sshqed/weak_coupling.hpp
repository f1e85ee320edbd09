// weak_coupling.hpp — region-V approximate evolution (emitter <-> edge state
// oscillation) and the free-motion wave packet of the linearized band

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "sshqed/couplings.hpp"
#include "sshqed/discrete.hpp"
#include "sshqed/eigenstates.hpp"
#include "sshqed/lattice.hpp"

namespace sshqed {

// oscillation frequency of the hybridized pair, g sqrt(J1^2 - J2^2) / J1
inline double rabi_frequency(const CouplingParams& p) {
    if (!p.topological())
        throw std::domain_error("rabi_frequency: defined for j1 > j2 only");
    return p.g() * std::sqrt(p.j1() * p.j1() - p.j2() * p.j2()) / p.j1();
}

// cos(Omega t)|q> - i sin(Omega t)|phi_e> on the truncated lattice; the
// free-motion term is excluded by construction
inline StateVector weak_coupling_evolution(const CouplingParams& p, double t, int n_cells) {
    if (classify_region(p).region != Region::V)
        throw std::domain_error("weak_coupling_evolution: valid in region V only");
    const double omega = rabi_frequency(p);
    const StateVector edge = edge_state(p, n_cells);
    StateVector psi(n_cells, true);
    psi.amp(Site::emitter()) = std::cos(omega * t);
    const Complex edge_amp = Complex(0.0, -1.0) * std::sin(omega * t);
    for (int n = 1; n <= n_cells; ++n) psi.amp(Site::a(n)) = edge_amp * edge.amp(Site::a(n));
    return psi;
}

// group velocity of the free-motion packet (linearization at cos k0 = -J2/J1)
inline double group_velocity(const CouplingParams& p) {
    if (!p.topological()) throw std::domain_error("group_velocity: requires j1 > j2");
    return p.j2();
}

// the free-motion term matters once g is of the order of the gap
inline double free_motion_threshold(const CouplingParams& p) { return p.j1() - p.j2(); }

inline bool free_motion_significant(const CouplingParams& p) {
    return p.g() >= free_motion_threshold(p);
}

// leading term of Phi(k) at the linearization point
inline Complex free_motion_phi0(const CouplingParams& p) {
    const double j1s = p.j1() * p.j1(), j2s = p.j2() * p.j2(), gs = p.g() * p.g();
    return p.j1() / Complex((j1s - gs) * std::sqrt(j1s - j2s), -gs * p.j2());
}

// Closed-form free-motion amplitude on B site n: both linearized-band terms,
// group speed J2 (rightward).  Quantitative for the front position, not the
// packet shape.
inline Complex free_motion_amplitude(const CouplingParams& p, int n, double t) {
    if (!p.topological())
        throw std::domain_error("free_motion_amplitude: requires j1 > j2");
    if (!(t > 0.0)) throw std::invalid_argument("free_motion_amplitude: t must be > 0");
    if (n < 1) throw std::invalid_argument("free_motion_amplitude: cell index must be >= 1");
    const double pi = std::numbers::pi;
    const double k0 = std::acos(-p.j2() / p.j1());
    const double e_k0 = std::sqrt(p.j1() * p.j1() - p.j2() * p.j2());
    const double e_prime = -p.j2();
    const Complex phi0 = free_motion_phi0(p);

    auto lobe = [pi](double x, double sign) {
        // (e^{i pi sign x} - 1)/x with the x -> 0 limit
        if (std::abs(x) < 1e-12) return Complex(0.0, sign * pi);
        return (std::exp(Complex(0.0, sign * pi * x)) - 1.0) / x;
    };

    Complex total = 0.0;
    for (double s : {+1.0, -1.0}) {
        const Complex plane = std::exp(Complex(0.0, k0 * n + s * e_k0 * t)) *
                              std::exp(Complex(0.0, -k0 * (n + s * e_prime * t)));
        const Complex pre = -p.g() * p.j2() * phi0 / (2.0 * pi) * plane;
        const double xp = n + s * e_prime * t;
        const double xm = n - s * e_prime * t;
        total += pre * (lobe(xp, +1.0) + lobe(xm, -1.0));
    }
    return total;
}

} // namespace sshqed
