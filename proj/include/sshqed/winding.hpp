// winding.hpp — band dispersion, winding factors and sampled winding numbers

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "sshqed/couplings.hpp"
#include "sshqed/lattice.hpp"

namespace sshqed {

// E_{k,+-} = +- sqrt(j1^2 + j2^2 + 2 j1 j2 cos k)
inline double dispersion(const CouplingParams& p, double k, int band) {
    const double e =
        std::sqrt(p.j1() * p.j1() + p.j2() * p.j2() + 2.0 * p.j1() * p.j2() * std::cos(k));
    return band >= 0 ? e : -e;
}

enum class WindingVariant { Bare, Tilde };

// Bare: j2 + j1 e^{ik}.  Tilde: j2 + j1_tilde e^{ik} (boundary factor with emitter).
inline Complex winding_factor(const CouplingParams& p, double k, WindingVariant v) {
    const double hop = (v == WindingVariant::Bare) ? p.j1() : p.j1_tilde();
    return Complex(p.j2() + hop * std::cos(k), hop * std::sin(k));
}

inline constexpr int default_winding_samples = 4096;

// Integer winding of a sampled closed curve about the origin, by summed phase
// increments over k in [-pi, pi].  The curve must stay away from the origin.
inline int winding_number(const std::function<Complex(double)>& curve,
                          int n_samples = default_winding_samples) {
    if (n_samples < 8) throw std::invalid_argument("winding_number: too few samples");
    const double pi = std::numbers::pi;
    double total = 0.0;
    Complex prev = curve(-pi);
    if (std::abs(prev) < 1e-12)
        throw std::domain_error("winding_number: curve passes through the origin (gap closes)");
    for (int i = 1; i <= n_samples; ++i) {
        const double k = -pi + 2.0 * pi * i / n_samples;
        const Complex c = curve(k);
        if (std::abs(c) < 1e-12)
            throw std::domain_error("winding_number: curve passes through the origin (gap closes)");
        total += std::arg(c / prev);
        prev = c;
    }
    const double turns = total / (2.0 * pi);
    const int w = static_cast<int>(std::lround(turns));
    if (std::abs(turns - w) > 0.25)
        throw std::runtime_error("winding_number: phase accumulation did not close to an integer");
    return w;
}

inline int winding_number(const CouplingParams& p, WindingVariant v,
                          int n_samples = default_winding_samples) {
    return winding_number([&p, v](double k) { return winding_factor(p, k, v); }, n_samples);
}

} // namespace sshqed
