// eigenstates.hpp — closed-form eigenstates on the truncated lattice: edge
// state, zero mode, the bound pair (closed form and transfer-matrix routes),
// symmetric/antisymmetric combinations, and scattering states

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "sshqed/couplings.hpp"
#include "sshqed/discrete.hpp"
#include "sshqed/lattice.hpp"
#include "sshqed/winding.hpp"

namespace sshqed {

// ----------------------- localization measures ------------------------------

// sublattice-localization factor of the bound pair, r = g J2 / sqrt((J1^2 -
// J2^2 - g^2)(J1^2 - g^2)) with the sign of (J1 - g)
inline double sublattice_r(const CouplingParams& p) {
    const double j1s = p.j1() * p.j1(), j2s = p.j2() * p.j2(), gs = p.g() * p.g();
    const double prod = (j1s - j2s - gs) * (j1s - gs);
    if (prod <= 0.0)
        throw std::domain_error("sublattice_r: real only where the pair is localized or anti-bound");
    const double r = p.g() * p.j2() / std::sqrt(prod);
    return p.j1() > p.g() ? r : -r;
}

// exponential localization length of the bound pair, 1/log|j1_tilde/j2|
inline double pair_localization_length(const CouplingParams& p) {
    const double ratio = std::abs(p.j1_tilde() / p.j2());
    if (ratio <= 1.0)
        throw std::domain_error("pair_localization_length: pair is delocalized (|j1_tilde| <= j2)");
    return 1.0 / std::log(ratio);
}

// localization length of the bare-chain edge state, 1/log(j1/j2)
inline double edge_localization_length(const CouplingParams& p) {
    if (!(p.j1() > p.j2()))
        throw std::domain_error("edge_localization_length: requires j1 > j2");
    return 1.0 / std::log(p.j1() / p.j2());
}

// cell count for which e^{-n/xi} < 1e-14, with a hard floor of 64
inline int cells_for_tail(double xi) {
    const int n = static_cast<int>(std::ceil(xi * std::log(1e14)));
    return std::max(64, n);
}

// emitter amplitude of the normalized bound states,
// [1 + (z/g)^2 (1 + r^2) / (1 - (j2/j1_tilde)^2)]^{-1/2}
inline double bound_pair_emitter_amp(const CouplingParams& p) {
    const double z = z_plus_closed_form(p).real();
    const double r = sublattice_r(p);
    const double q = p.j2() / p.j1_tilde();
    const double inv = 1.0 + (z / p.g()) * (z / p.g()) * (1.0 + r * r) / (1.0 - q * q);
    return 1.0 / std::sqrt(inv);
}

// ------------------------------ edge state ----------------------------------

// Zero-energy edge state of the bare chain, perfectly localized on the A
// sublattice; exists for j1 > j2 only.
inline StateVector edge_state(const CouplingParams& p, int n_cells) {
    if (!(p.j1() > p.j2()))
        throw std::domain_error("edge_state: no normalizable edge state for j1 <= j2");
    const double xi = edge_localization_length(p);
    const double pref = std::sqrt(p.j1() * p.j1() - p.j2() * p.j2()) / p.j1();
    StateVector psi(n_cells, false);
    double sign = 1.0;
    for (int n = 1; n <= n_cells; ++n) {
        psi.amp(Site::a(n)) = pref * sign * std::exp(-(n - 1) / xi);
        sign = -sign;
    }
    return psi;
}

// ------------------------------ zero mode -----------------------------------

// Zero mode of the emitter-coupled model, on the emitter + B sublattice;
// normalizable only for j1 < j2.
inline StateVector zero_mode(const CouplingParams& p, int n_cells) {
    if (!(p.j1() < p.j2()))
        throw std::domain_error("zero_mode: anti-bound (not normalizable) for j1 >= j2");
    const double j1s = p.j1() * p.j1(), j2s = p.j2() * p.j2(), gs = p.g() * p.g();
    const double qamp = std::sqrt((j2s - j1s) / (j2s - j1s + gs));
    StateVector psi(n_cells, true);
    psi.amp(Site::emitter()) = qamp;
    double sign = -1.0; // (-1)^n starting at n = 1
    double decay = 1.0;
    for (int n = 1; n <= n_cells; ++n) {
        psi.amp(Site::b(n)) = qamp * (p.g() / p.j2()) * sign * decay;
        sign = -sign;
        decay *= p.j1() / p.j2();
    }
    return psi;
}

// ------------------------------ bound pair ----------------------------------

namespace detail {

inline void require_localized_pair(const CouplingParams& p, const char* who) {
    const RegionLabel label = classify_region(p);
    if (label.region != Region::I && label.region != Region::V)
        throw std::domain_error(std::string(who) +
                                ": pair is delocalized outside regions I and V (Im k < 0)");
}

} // namespace detail

// The localized pair for regions I and V.  Cell amplitudes follow
// (z/g) m^{n-1} [1, -+r] with m = -j2/j1_tilde; the emitter amplitude is the
// closed-form normalization, so the truncated vector is unit-norm up to the
// (negligible) tail.
inline std::pair<StateVector, StateVector> bound_pair_states(const CouplingParams& p,
                                                             int n_cells) {
    detail::require_localized_pair(p, "bound_pair_states");
    const double z = z_plus_closed_form(p).real();
    const double r = sublattice_r(p);
    const double m = -p.j2() / p.j1_tilde();
    const double qamp = bound_pair_emitter_amp(p);

    auto build = [&](int sgn) {
        StateVector psi(n_cells, true);
        psi.amp(Site::emitter()) = qamp;
        const double zs = sgn * z;
        double mpow = 1.0;
        for (int n = 1; n <= n_cells; ++n) {
            psi.amp(Site::a(n)) = qamp * (zs / p.g()) * mpow;
            psi.amp(Site::b(n)) = qamp * (zs / p.g()) * mpow * (-sgn * r);
            mpow *= m;
        }
        return psi;
    };
    return {build(+1), build(-1)};
}

// Symmetric/antisymmetric combinations (psi_+ +- psi_-)/sqrt(2); psi_s lives
// on the emitter + B sublattice, psi_a on the A sublattice only.
inline std::pair<StateVector, StateVector> sym_antisym_states(const CouplingParams& p,
                                                              int n_cells) {
    auto [plus, minus] = bound_pair_states(p, n_cells);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    StateVector sym(n_cells, true, (plus.amps() + minus.amps()) * inv_sqrt2);
    StateVector asym(n_cells, true, (plus.amps() - minus.amps()) * inv_sqrt2);
    return {sym, asym};
}

// ------------------------- transfer-matrix route -----------------------------

// 2x2 cell-to-cell transfer matrix at energy z
inline Eigen::Matrix2d transfer_matrix(const CouplingParams& p, double z) {
    Eigen::Matrix2d m;
    m << -p.j2() / p.j1(), z / p.j1(),
         -z / p.j1(), (z * z - p.j1() * p.j1()) / (p.j1() * p.j2());
    return m;
}

// Builds the bound state by applying the transfer recursion to the first-cell
// amplitudes fixed by the emitter rows, then normalizes.  Powers of the
// transfer matrix are applied through its numerically computed eigenpairs, so
// this path never touches the closed-form profile it is checked against.
// A non-eigenvalue energy puts weight on the growing eigendirection and is
// rejected (the recursion would exceed the e^{+n/xi} envelope).
inline StateVector transfer_matrix_state(const CouplingParams& p, double energy, int n_cells) {
    detail::require_localized_pair(p, "transfer_matrix_state");
    const Eigen::Matrix2d m = transfer_matrix(p, energy);
    const Eigen::EigenSolver<Eigen::Matrix2d> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("transfer_matrix_state: 2x2 eigensolve failed");
    Eigen::Vector2cd mu = es.eigenvalues();
    Eigen::Matrix2cd v = es.eigenvectors();
    int grow = std::abs(mu[0]) > std::abs(mu[1]) ? 0 : 1;
    const int decay = 1 - grow;

    // first-cell amplitudes for unit emitter amplitude
    Eigen::Vector2cd c1;
    c1 << energy / p.g(), (energy * energy / p.g() - p.g()) / p.j2();
    const Eigen::Vector2cd coef = v.colPivHouseholderQr().solve(c1);
    if (std::abs(coef[grow]) > 1e-8 * c1.norm())
        throw std::runtime_error(
            "transfer_matrix_state: recursion diverges (energy is not an eigenvalue)");

    StateVector psi(n_cells, true);
    psi.amp(Site::emitter()) = 1.0;
    Complex mpow = 1.0;
    for (int n = 1; n <= n_cells; ++n) {
        const Eigen::Vector2cd cn = coef[decay] * mpow * v.col(decay);
        psi.amp(Site::a(n)) = cn[0];
        psi.amp(Site::b(n)) = cn[1];
        mpow *= mu[decay];
    }
    psi.normalize();
    // fix the overall phase: emitter amplitude real positive
    const Complex q = psi.amp(Site::emitter());
    psi.amps() *= std::abs(q) / q;
    return psi;
}

// ---------------------------- scattering states ------------------------------

// Scattering eigenstate at wave number k in (0, pi), for the bare chain or
// with the emitter attached.  Unnormalized; amplitudes are real.
inline StateVector continuum_state(const CouplingParams& p, double k, int band, int n_cells,
                                   bool with_emitter) {
    const double pi = std::numbers::pi;
    if (!(k > 1e-6 && k < pi - 1e-6))
        throw std::domain_error("continuum_state: k at a band edge is ill-conditioned");
    const int sgn = band >= 0 ? +1 : -1;
    const double e_plus = dispersion(p, k, +1);
    const double energy = sgn * e_plus;
    const double theta = std::arg(winding_factor(p, k, WindingVariant::Bare));

    StateVector psi(n_cells, with_emitter);
    if (!with_emitter) {
        for (int n = 1; n <= n_cells; ++n) {
            psi.amp(Site::a(n)) = std::sin(k * n - theta);
            psi.amp(Site::b(n)) = sgn * std::sin(k * n);
        }
        return psi;
    }

    const double theta_t = std::arg(winding_factor(p, k, WindingVariant::Tilde));
    for (int n = 1; n <= n_cells; ++n) {
        if (n >= 2) psi.amp(Site::a(n)) = std::sin(k * n - theta_t);
        psi.amp(Site::b(n)) = sgn * std::sin(k * n + theta - theta_t);
    }
    // boundary rows fix the first-cell and emitter amplitudes
    const double denom = energy - p.g() * p.g() / energy;
    if (std::abs(denom) < 1e-9)
        throw std::runtime_error("continuum_state: boundary amplitudes ill-conditioned (E^2 ~ g^2)");
    const Complex b1 = psi.amp(Site::b(1));
    const Complex a1 = p.j2() * b1 / denom;
    psi.amp(Site::a(1)) = a1;
    psi.amp(Site::emitter()) = p.g() * a1 / energy;
    return psi;
}

} // namespace sshqed
