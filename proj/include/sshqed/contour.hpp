// contour.hpp — survival amplitude by quadrature of the resolvent around the
// real axis

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sshqed/discrete.hpp"
#include "sshqed/self_energy.hpp"

namespace sshqed {

struct QuadratureSpec {
    double eta{1e-3};        // contour offset above/below the real axis
    double target_tol{1e-6}; // absolute accuracy goal for the amplitude
    int gl_order{15};        // Gauss-Legendre points per panel
    int max_levels{8};       // density doublings before giving up
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the Legendre
// polynomial; order is fixed per run, so results are deterministic.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

struct ContourMesh {
    std::vector<Complex> nodes_bottom, nodes_top, nodes_right, nodes_left;
    std::vector<double> weights_x;  // shared by top and bottom edges
    std::vector<double> weights_y;  // vertical edges
    std::vector<Complex> g_bottom, g_top, g_right, g_left;
};

// panels on [-W, W]: split at band edges, enclosed poles and 0, geometric
// ladders toward every split (the integrand varies on the eta scale there),
// and a global cap so e^{-izt} stays resolved up to t_max
inline std::vector<std::pair<double, double>> build_panels(const std::vector<double>& splits,
                                                           double W, double eta, double t_max,
                                                           int level) {
    std::set<double> cuts{-W, W};
    for (double s : splits)
        if (s > -W && s < W) cuts.insert(s);
    const double refine = std::ldexp(1.0, -level); // 2^-level
    const double floor_h = std::max(eta / 10.0 * refine, 1e-9);
    const double hmax = std::max(refine * std::min(0.25, 2.0 * std::numbers::pi / std::max(t_max, 1.0) / 2.0),
                                 4.0 * floor_h);

    std::vector<std::pair<double, double>> panels;
    std::vector<double> pts(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        const double len = b - a;
        std::set<double> xs{a, b};
        for (double h = floor_h; h < 0.5 * len; h *= 2.0) {
            xs.insert(a + h);
            xs.insert(b - h);
        }
        std::vector<double> edge(xs.begin(), xs.end());
        for (size_t j = 0; j + 1 < edge.size(); ++j) {
            const double lo = edge[j], hi = edge[j + 1];
            const int m = std::max(1, static_cast<int>(std::ceil((hi - lo) / hmax)));
            for (int q = 0; q < m; ++q)
                panels.emplace_back(lo + (hi - lo) * q / m, lo + (hi - lo) * (q + 1) / m);
        }
    }
    return panels;
}

inline ContourMesh build_mesh(const CouplingParams& p, double W,
                              const std::vector<double>& splits, const QuadratureSpec& spec,
                              double t_max, int level) {
    std::vector<double> gx, gw;
    gauss_legendre(spec.gl_order, gx, gw);

    ContourMesh mesh;
    for (const auto& [a, b] : build_panels(splits, W, spec.eta, t_max, level)) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int i = 0; i < spec.gl_order; ++i) {
            const double x = c + h * gx[i];
            mesh.nodes_bottom.emplace_back(x, -spec.eta);
            mesh.nodes_top.emplace_back(x, spec.eta);
            mesh.weights_x.push_back(h * gw[i]);
        }
    }
    for (int i = 0; i < spec.gl_order; ++i) {
        const double y = spec.eta * gx[i];
        mesh.nodes_right.emplace_back(W, y);
        mesh.nodes_left.emplace_back(-W, y);
        mesh.weights_y.push_back(spec.eta * gw[i]);
    }

    auto eval = [&p](const std::vector<Complex>& zs) {
        std::vector<Complex> g(zs.size());
        for (size_t i = 0; i < zs.size(); ++i) g[i] = green_function(p, zs[i], Sheet::First);
        return g;
    };
    mesh.g_bottom = eval(mesh.nodes_bottom);
    mesh.g_top = eval(mesh.nodes_top);
    mesh.g_right = eval(mesh.nodes_right);
    mesh.g_left = eval(mesh.nodes_left);
    return mesh;
}

// (1/2pi i) over the counterclockwise rectangle: bottom left-to-right, right
// edge up, top right-to-left, left edge down
inline Complex integrate(const ContourMesh& mesh, double t) {
    Complex acc = 0.0;
    for (size_t i = 0; i < mesh.weights_x.size(); ++i) {
        acc += mesh.weights_x[i] * std::exp(Complex(0, -1) * mesh.nodes_bottom[i] * t) * mesh.g_bottom[i];
        acc -= mesh.weights_x[i] * std::exp(Complex(0, -1) * mesh.nodes_top[i] * t) * mesh.g_top[i];
    }
    for (size_t i = 0; i < mesh.weights_y.size(); ++i) {
        acc += Complex(0, 1) * mesh.weights_y[i] *
               std::exp(Complex(0, -1) * mesh.nodes_right[i] * t) * mesh.g_right[i];
        acc -= Complex(0, 1) * mesh.weights_y[i] *
               std::exp(Complex(0, -1) * mesh.nodes_left[i] * t) * mesh.g_left[i];
    }
    return acc / Complex(0.0, 2.0 * std::numbers::pi);
}

} // namespace detail

// Survival amplitudes over a set of times by one shared quadrature mesh.  The
// mesh is refined until the t = 0 sum rule and the largest-time amplitude are
// stable within the target tolerance; failure to converge is an error with
// diagnostics.
inline std::vector<Complex> survival_contour_series(const CouplingParams& p,
                                                    const std::vector<double>& ts,
                                                    const QuadratureSpec& spec = {}) {
    for (double t : ts)
        if (t < 0.0) throw std::invalid_argument("survival_contour: t must be >= 0");
    const double t_max = ts.empty() ? 1.0 : *std::max_element(ts.begin(), ts.end());

    std::vector<double> splits{0.0, p.band_inner(), -p.band_inner(), p.band_outer(),
                               -p.band_outer()};
    double W = p.band_outer() + 1.0;
    if (!detail::near(p.g(), p.j1())) {
        for (const auto& term : first_sheet_poles(p)) {
            splits.push_back(term.energy.real());
            W = std::max(W, std::abs(term.energy.real()) + 1.0);
        }
    }

    double check_prev = 0.0;
    Complex at_tmax_prev = 0.0;
    for (int level = 0; level <= spec.max_levels; ++level) {
        const detail::ContourMesh mesh = detail::build_mesh(p, W, splits, spec, t_max, level);
        const double check0 = std::abs(detail::integrate(mesh, 0.0) - 1.0);
        const Complex at_tmax = detail::integrate(mesh, t_max);
        const bool sum_rule_ok = check0 <= spec.target_tol;
        const bool stable = level > 0 && std::abs(at_tmax - at_tmax_prev) <= spec.target_tol;
        if (sum_rule_ok && (stable || level == 0)) {
            // level 0 alone is accepted only if it already meets the sum rule
            // and a one-step refinement confirms it
            if (level == 0) {
                at_tmax_prev = at_tmax;
                check_prev = check0;
                continue;
            }
            std::vector<Complex> out(ts.size());
            for (size_t i = 0; i < ts.size(); ++i) out[i] = detail::integrate(mesh, ts[i]);
            return out;
        }
        at_tmax_prev = at_tmax;
        check_prev = check0;
    }
    throw std::runtime_error(
        "survival_contour: quadrature did not converge (|A(0)-1| = " + std::to_string(check_prev) +
        " after " + std::to_string(spec.max_levels) + " refinements; eta = " +
        std::to_string(spec.eta) + ")");
}

inline Complex survival_contour(const CouplingParams& p, double t,
                                const QuadratureSpec& spec = {}) {
    return survival_contour_series(p, {t}, spec)[0];
}

} // namespace sshqed
