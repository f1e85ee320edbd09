// discrete.hpp — generalized eigenvalues of z = Sigma(z): zero mode and the
// z_+- pair, their sheets and kinds, parameter-region classification, residues

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sshqed/couplings.hpp"
#include "sshqed/self_energy.hpp"

namespace sshqed {

// ------------------------------ regions -------------------------------------

enum class Region { I, II, III, IV, V, Boundary };

struct RegionLabel {
    Region region{Region::Boundary};
    std::string boundary; // non-empty only for Region::Boundary

    bool is_boundary() const noexcept { return region == Region::Boundary; }
};

inline const char* to_string(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
        case Region::V: return "V";
        case Region::Boundary: return "boundary";
    }
    return "?";
}

inline constexpr double region_boundary_rel_tol = 1e-12;

namespace detail {

inline bool near(double a, double b) {
    return std::abs(a - b) <= region_boundary_rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace detail

// Region I: g > g_str (bound pair outside the bands).  II: j1 < g < g_str
// (anti-bound pair).  III: g < j1 for j1 <= j2, or g_ep < g < j1 for j1 > j2
// (resonance/anti-resonance pair).  IV: g_weak < g < g_ep (in-gap anti-bound
// pair).  V: g < g_weak (in-gap bound pair).  Equalities within tolerance are
// reported, never silently classified.
inline RegionLabel classify_region(const CouplingParams& p) {
    const double g = p.g();
    const double gs = p.g_str();
    if (detail::near(g, gs)) return {Region::Boundary, "g = g_str (band-edge touching)"};
    if (detail::near(g, p.j1())) return {Region::Boundary, "g = j1 (singular crossover)"};
    if (g > gs) return {Region::I, {}};
    if (g > p.j1()) return {Region::II, {}};
    if (!p.topological()) return {Region::III, {}};
    const double gw = p.g_weak(), ge = p.g_ep();
    if (detail::near(g, ge)) return {Region::Boundary, "g = g_ep (exceptional point)"};
    if (detail::near(g, gw)) return {Region::Boundary, "g = g_weak (in-gap band-edge touching)"};
    if (g > ge) return {Region::III, {}};
    if (g > gw) return {Region::IV, {}};
    return {Region::V, {}};
}

// ---------------------------- discrete states --------------------------------

enum class StateKind { Bound, AntiBound, Resonance, AntiResonance, ZeroModeBound, ZeroModeAntiBound };

inline const char* to_string(StateKind k) {
    switch (k) {
        case StateKind::Bound: return "bound";
        case StateKind::AntiBound: return "antibound";
        case StateKind::Resonance: return "resonance";
        case StateKind::AntiResonance: return "antiresonance";
        case StateKind::ZeroModeBound: return "zero-mode-bound";
        case StateKind::ZeroModeAntiBound: return "zero-mode-antibound";
    }
    return "?";
}

struct DiscreteState {
    Complex energy;
    StateKind kind{StateKind::Bound};
    Sheet sheet{Sheet::First};
    Complex wavevector; // k_+- for the nonzero pair; 0 for the zero mode
};

// z_+ from the closed form g sqrt((g^2 - (J1^2 - J2^2)) / (g^2 - J1^2)),
// canonicalized so Re z_+ >= 0, and Im z_+ >= 0 when purely imaginary
inline Complex z_plus_closed_form(const CouplingParams& p) {
    const double g = p.g();
    if (detail::near(g, p.j1()))
        throw std::domain_error("z_plus: singular at g = j1 (crossover point)");
    const double num = g * g - (p.j1() * p.j1() - p.j2() * p.j2());
    const double den = g * g - p.j1() * p.j1();
    const double ratio = num / den;
    return ratio >= 0.0 ? Complex(g * std::sqrt(ratio), 0.0)
                        : Complex(0.0, g * std::sqrt(-ratio));
}

// shared complex wave vector of the pair, k = -i log(J1 J2 / (g^2 - J1^2));
// Im k > 0 iff the pair is localized
inline Complex pair_wavevector(const CouplingParams& p) {
    const double den = p.g() * p.g() - p.j1() * p.j1();
    if (std::abs(den) < 1e-300) throw std::domain_error("pair_wavevector: singular at g = j1");
    const Complex w(p.j1() * p.j2() / den);
    return Complex(0.0, -1.0) * std::log(w);
}

namespace detail {

// polish a root of z - Sigma(z) on a fixed sheet by Newton iteration
inline Complex polish_root(const CouplingParams& p, Complex z0, Sheet sheet,
                           double tol = 1e-13, int max_iter = 50) {
    Complex z = z0;
    for (int i = 0; i < max_iter; ++i) {
        const Complex f = z - self_energy(p, z, sheet).sigma;
        if (std::abs(f) <= tol * std::max(1.0, std::abs(z))) return z;
        const Complex fp = 1.0 - self_energy_derivative(p, z, sheet);
        const Complex step = f / fp;
        z -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) return z;
    }
    return z;
}

} // namespace detail

inline double root_residual(const CouplingParams& p, Complex z, Sheet sheet) {
    return std::abs(z - self_energy(p, z, sheet).sigma);
}

// All discrete solutions of z = Sigma(z): the zero mode (absent for the
// uniform chain) and the chiral pair z_- = -z_+.  Kinds follow the region;
// each returned energy satisfies the root equation on its declared sheet.
inline std::vector<DiscreteState> discrete_eigenvalues(const CouplingParams& p) {
    if (detail::near(p.g(), p.j1()))
        throw std::domain_error(
            "discrete_eigenvalues: g = j1 is the singular crossover (pole of the closed form)");

    std::vector<DiscreteState> out;

    // zero mode: bound on sheet I for j1 < j2, anti-bound on sheet II for
    // j1 > j2, absent when the gap closes
    if (!detail::near(p.j1(), p.j2())) {
        DiscreteState zm;
        zm.energy = 0.0;
        zm.wavevector = 0.0;
        if (p.j1() < p.j2()) {
            zm.kind = StateKind::ZeroModeBound;
            zm.sheet = Sheet::First;
        } else {
            zm.kind = StateKind::ZeroModeAntiBound;
            zm.sheet = Sheet::Second;
        }
        out.push_back(zm);
    }

    const Complex zp = z_plus_closed_form(p);
    const Complex k = pair_wavevector(p);

    // nearly coalesced with the zero mode (exceptional point): return the
    // limit values without polishing
    const bool at_ep = std::abs(zp) < 1e-8;

    const RegionLabel label = classify_region(p);
    for (int sgn : {+1, -1}) {
        DiscreteState st;
        Complex z = double(sgn) * zp;
        if (std::abs(z.imag()) < 1e-14 * std::max(1.0, std::abs(z.real())))
            z = Complex(z.real(), 0.0);

        // the squaring step that produced the closed form loses the sheet;
        // recover it from the root residual itself
        Sheet sheet = Sheet::First;
        if (!at_ep) {
            const double r1 = root_residual(p, z, Sheet::First);
            const double r2 = root_residual(p, z, Sheet::Second);
            sheet = (r1 <= r2) ? Sheet::First : Sheet::Second;
            z = detail::polish_root(p, z, sheet);
        }
        st.energy = z;
        st.sheet = sheet;
        st.wavevector = k;

        if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z))) {
            st.kind = (z.imag() < 0.0) ? StateKind::Resonance : StateKind::AntiResonance;
        } else if (sheet == Sheet::First) {
            st.kind = StateKind::Bound;
        } else {
            st.kind = StateKind::AntiBound;
        }
        out.push_back(st);
    }

    // sanity: kinds must agree with the region unless we sit on a boundary
    if (!label.is_boundary() && !at_ep) {
        const bool expect_bound = (label.region == Region::I || label.region == Region::V);
        const bool expect_resonance = (label.region == Region::III);
        for (const auto& st : out) {
            if (st.kind == StateKind::ZeroModeBound || st.kind == StateKind::ZeroModeAntiBound)
                continue;
            if (expect_bound && st.kind != StateKind::Bound)
                throw std::runtime_error("discrete_eigenvalues: sheet/kind inconsistent with region");
            if (expect_resonance && st.kind != StateKind::Resonance &&
                st.kind != StateKind::AntiResonance)
                throw std::runtime_error("discrete_eigenvalues: sheet/kind inconsistent with region");
        }
    }
    return out;
}

// ------------------------------ residues -------------------------------------

// residue of 1/(z - Sigma(z)) at z = 0, where Sigma is linear with slope
// g^2/(j1^2 - j2^2); equals (j2^2 - j1^2)/(j2^2 - j1^2 + g^2) for j1 < j2
inline double zero_mode_residue(const CouplingParams& p) {
    const double d = p.j1() * p.j1() - p.j2() * p.j2();
    return d / (d - p.g() * p.g());
}

// residue of 1/(z - Sigma(z)) at a pole on the given sheet, via 1/(1 - Sigma').
// For first-sheet poles this is real, positive, and equals the squared emitter
// overlap of the corresponding normalized eigenstate.
inline Complex residue_at(const CouplingParams& p, Complex pole, Sheet sheet) {
    if (std::abs(pole) < 1e-10) {
        if (detail::near(p.j1(), p.j2()))
            throw std::domain_error("residue_at: no zero mode for the uniform chain");
        const Sheet zero_sheet = p.j1() < p.j2() ? Sheet::First : Sheet::Second;
        if (sheet != zero_sheet)
            throw std::domain_error("residue_at: z = 0 is not a pole on the requested sheet");
        return zero_mode_residue(p);
    }
    if (root_residual(p, pole, sheet) > 1e-8)
        throw std::domain_error("residue_at: input does not solve z = Sigma(z) on this sheet");
    return 1.0 / (1.0 - self_energy_derivative(p, pole, sheet));
}

// first-sheet poles only, as (energy, residue) pairs; these are the terms that
// enter the survival-amplitude pole sum
struct PoleTerm {
    Complex energy;
    double residue;
};

inline std::vector<PoleTerm> first_sheet_poles(const CouplingParams& p) {
    // decoupled emitter: a single pole at zero carrying all the weight
    if (p.g() == 0.0) return {{Complex(0.0, 0.0), 1.0}};
    std::vector<PoleTerm> terms;
    for (const auto& st : discrete_eigenvalues(p)) {
        if (st.sheet != Sheet::First) continue;
        if (st.kind == StateKind::ZeroModeBound) {
            terms.push_back({st.energy, zero_mode_residue(p)});
        } else if (st.kind == StateKind::Bound) {
            terms.push_back({st.energy, residue_at(p, st.energy, Sheet::First).real()});
        }
    }
    return terms;
}

// ----------------------------- sum rule --------------------------------------

// spectral density of the emitter inside the bands, -(1/pi) Im G(E + i0+)
inline double band_spectral_density(const CouplingParams& p, double E) {
    const Complex G = green_function(p, Complex(E), Sheet::First);
    return -G.imag() / std::numbers::pi;
}

// First-sheet pole residues plus the band weight must integrate to one.
// The trapezoid runs in the angle variable E = c + R cos(theta), which absorbs
// the square-root band-edge behavior of the density.
inline double completeness_sum(const CouplingParams& p, int points_per_band = 10000) {
    const double jm = p.band_inner(), jp = p.band_outer();
    double total = 0.0;
    for (int band = 0; band < 2; ++band) {
        const double a = band == 0 ? jm : -jp;
        const double b = band == 0 ? jp : -jm;
        const double c = 0.5 * (a + b), R = 0.5 * (b - a);
        const int n = points_per_band;
        double acc = 0.0;
        std::vector<double> f(n + 1, 0.0);
        // endpoints are exact zeros of the integrand (the density vanishes
        // like a square root at the band edges)
        for (int i = 1; i < n; ++i) {
            const double th = std::numbers::pi * i / n;
            const double E = c + R * std::cos(th);
            if (std::abs(E) < 1e-9) continue; // uniform-chain band touching
            f[i] = band_spectral_density(p, E) * R * std::sin(th);
        }
        for (int i = 0; i < n; ++i) acc += 0.5 * (f[i] + f[i + 1]) * (std::numbers::pi / n);
        total += acc;
    }
    for (const auto& term : first_sheet_poles(p)) total += term.residue;
    return total;
}

} // namespace sshqed
