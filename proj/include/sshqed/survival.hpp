// survival.hpp — survival-amplitude channels: numeric propagation, contour
// quadrature, pole sum, and the branch-point zone laws, side by side

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sshqed/branch.hpp"
#include "sshqed/contour.hpp"
#include "sshqed/discrete.hpp"
#include "sshqed/propagate.hpp"

namespace sshqed {

// sum over first-sheet poles of residue * e^{-i z t}
inline Complex pole_sum(const CouplingParams& p, double t) {
    Complex acc = 0.0;
    for (const auto& term : first_sheet_poles(p))
        acc += term.residue * std::exp(Complex(0.0, -1.0) * term.energy * t);
    return acc;
}

struct TimeSeriesTable {
    TimeGrid grid;
    std::map<std::string, std::vector<Complex>> channels;
    std::vector<double> survival;       // |numeric|^2
    double pole_residual_max{0.0};      // max |numeric - (pole_sum + zone)| in the zone's window
    double crossover_t{0.0};            // near-zone / far-zone boundary used
};

// Fill the numeric, contour, pole-sum and zone channels over a grid.  The
// near/far zone split is decided against the crossover timescale; zone values
// at t = 0 are recorded as zero (the laws hold for t > 0 only).
inline TimeSeriesTable decompose_survival(const CouplingParams& p, const TimeGrid& grid,
                                          int n_cells, const QuadratureSpec& spec = {}) {
    const int needed = reflection_guard_cells(p, grid.t_end);
    if (n_cells < needed)
        throw guard_error("decompose_survival: truncation too short for t_end; need " +
                              std::to_string(needed) + " cells",
                          needed);

    TimeSeriesTable table{grid, {}, {}, 0.0, crossover_timescale(p)};
    const std::vector<double> ts = grid.times();

    const HamiltonianMatrix h = build_hamiltonian(p, n_cells, true);
    const Propagator prop(h);
    table.channels["numeric"] = prop.survival_series(ts);
    table.channels["contour"] = survival_contour_series(p, ts, spec);

    std::vector<Complex> poles(ts.size()), nz(ts.size()), fz(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        poles[i] = pole_sum(p, ts[i]);
        nz[i] = ts[i] > 0.0 ? branch_near_zone(p, ts[i]) : 0.0;
        fz[i] = ts[i] > 0.0 ? branch_far_zone(p, ts[i]) : 0.0;
    }
    table.channels["pole_sum"] = std::move(poles);
    table.channels["near_zone"] = std::move(nz);
    table.channels["far_zone"] = std::move(fz);

    table.survival.resize(ts.size());
    double worst = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        const Complex a = table.channels["numeric"][i];
        table.survival[i] = std::norm(a);
        if (ts[i] <= 0.0) continue;
        const Complex zone = ts[i] > table.crossover_t ? table.channels["far_zone"][i]
                                                       : table.channels["near_zone"][i];
        worst = std::max(worst, std::abs(a - (table.channels["pole_sum"][i] + zone)));
    }
    table.pole_residual_max = worst;
    return table;
}

} // namespace sshqed
