// branch.hpp — closed-form branch-point contributions from the outer band
// edges: far-zone t^{-3/2} and near-zone t^{-1/2} laws

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "sshqed/couplings.hpp"
#include "sshqed/lattice.hpp"

namespace sshqed {

// X = [g^4 + 3 J1^2 J+^2 - 2 g^2 J+ (2 J1 + J2)] / J+ ; can be negative
inline double branch_x_factor(const CouplingParams& p) {
    const double g2 = p.g() * p.g();
    const double jp = p.j_plus();
    return (g2 * g2 + 3.0 * p.j1() * p.j1() * jp * jp - 2.0 * g2 * jp * (2.0 * p.j1() + p.j2())) /
           jp;
}

// near-zone/far-zone crossover timescale |X| / [g^2 - J1 (J1 + J2)]^2
inline double crossover_timescale(const CouplingParams& p) {
    const double gap = p.g() * p.g() - p.j1() * p.j_plus();
    if (gap == 0.0) throw std::domain_error("crossover_timescale: singular at g = g_str");
    return std::abs(branch_x_factor(p)) / (gap * gap);
}

inline double far_zone_coefficient(const CouplingParams& p) {
    const double gap = p.g() * p.g() - p.j1() * p.j_plus();
    return 1.0 / (gap * gap) * std::sqrt(p.j1() * p.j2() / (2.0 * p.j_plus()));
}

inline double near_zone_coefficient(const CouplingParams& p) {
    const double x = branch_x_factor(p);
    if (x == 0.0) throw std::domain_error("near_zone_coefficient: X vanishes");
    return std::sqrt(2.0 * p.j1() * p.j2()) / (std::sqrt(p.j_plus()) * x);
}

// -(2 g^2 a_FZ / sqrt(pi)) t^{-3/2} cos((J1+J2) t + pi/4)
inline Complex branch_far_zone(const CouplingParams& p, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("branch_far_zone: t must be > 0");
    const double amp = 2.0 * p.g() * p.g() * far_zone_coefficient(p) / std::sqrt(std::numbers::pi);
    return -amp * std::pow(t, -1.5) * std::cos(p.j_plus() * t + std::numbers::pi / 4.0);
}

// -(2 g^2 a_NZ / sqrt(pi)) t^{-1/2} sin((J1+J2) t + pi/4)
inline Complex branch_near_zone(const CouplingParams& p, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("branch_near_zone: t must be > 0");
    const double amp = 2.0 * p.g() * p.g() * near_zone_coefficient(p) / std::sqrt(std::numbers::pi);
    return -amp * std::pow(t, -0.5) * std::sin(p.j_plus() * t + std::numbers::pi / 4.0);
}

} // namespace sshqed
