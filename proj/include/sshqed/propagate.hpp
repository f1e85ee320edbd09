// propagate.hpp — exact time evolution from one eigendecomposition, survival
// series, site-resolved probability tables

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sshqed/hamiltonian.hpp"
#include "sshqed/linalg.hpp"

namespace sshqed {

struct TimeGrid {
    double t_start{0.0};
    double t_end{0.0};
    int n_steps{2};

    TimeGrid(double start, double end, int steps) : t_start(start), t_end(end), n_steps(steps) {
        if (!(t_start >= 0.0)) throw std::invalid_argument("TimeGrid: t_start must be >= 0");
        if (!(t_end > t_start)) throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
        if (n_steps < 2) throw std::invalid_argument("TimeGrid: n_steps must be >= 2");
    }

    double dt() const noexcept { return (t_end - t_start) / (n_steps - 1); }

    std::vector<double> times() const {
        std::vector<double> ts(n_steps);
        for (int i = 0; i < n_steps; ++i) ts[i] = t_start + dt() * i;
        return ts;
    }
};

// numeric-guard refusal (truncation too short for the requested horizon)
class guard_error : public std::runtime_error {
public:
    guard_error(const std::string& what, int suggested_cells)
        : std::runtime_error(what), suggested_n_cells(suggested_cells) {}
    int suggested_n_cells;
};

// cells needed so the ballistic front (speed <= J1 + J2) cannot reach the far
// end and reflect within [0, t_end]
inline int reflection_guard_cells(const CouplingParams& p, double t_end) {
    return static_cast<int>(std::ceil(p.band_outer() * t_end)) + 50;
}

// psi(t) = U e^{-i Lambda t} U^T psi(0); one factorization serves every time.
class Propagator {
public:
    explicit Propagator(const HamiltonianMatrix& h)
        : n_cells_(h.n_cells()), with_emitter_(h.with_emitter()) {
        const int dim = h.dim();
        es_ = eig_tridiagonal(Eigen::VectorXd::Zero(dim), h.offdiagonal());
        (void)dim;
    }

    const Eigen::VectorXd& eigenvalues() const noexcept { return es_.values; }
    const Eigen::MatrixXd& eigenvectors() const noexcept { return es_.vectors; }

    StateVector evolve(const StateVector& initial, double t) const {
        if (initial.dim() != es_.values.size() || initial.with_emitter() != with_emitter_)
            throw std::invalid_argument("Propagator::evolve: dimension mismatch");
        const Eigen::VectorXcd modal = es_.vectors.transpose() * initial.amps();
        Eigen::VectorXcd phased(modal.size());
        for (Eigen::Index j = 0; j < modal.size(); ++j)
            phased[j] = modal[j] * std::polar(1.0, -es_.values[j] * t);
        return {n_cells_, with_emitter_, es_.vectors * phased};
    }

    std::vector<StateVector> evolve_series(const StateVector& initial, const TimeGrid& grid) const {
        std::vector<StateVector> out;
        out.reserve(grid.n_steps);
        for (double t : grid.times()) out.push_back(evolve(initial, t));
        return out;
    }

    // survival amplitude <q| e^{-iHt} |q> from the emitter spectral weights
    Complex survival_amplitude(double t) const {
        require_emitter();
        Complex a = 0.0;
        for (Eigen::Index j = 0; j < es_.values.size(); ++j) {
            const double w = es_.vectors(0, j) * es_.vectors(0, j);
            a += w * std::polar(1.0, -es_.values[j] * t);
        }
        return a;
    }

    std::vector<Complex> survival_series(const std::vector<double>& ts) const {
        require_emitter();
        std::vector<Complex> out(ts.size());
        const Eigen::VectorXd wq =
            es_.vectors.row(0).array().square(); // squared emitter overlaps
        parallel_for(static_cast<int>(ts.size()), [&](int i) {
            Complex a = 0.0;
            for (Eigen::Index j = 0; j < es_.values.size(); ++j)
                a += wq[j] * std::polar(1.0, -es_.values[j] * ts[i]);
            out[i] = a;
        });
        return out;
    }

private:
    void require_emitter() const {
        if (!with_emitter_)
            throw std::logic_error("Propagator: survival amplitude needs the emitter site");
    }

    int n_cells_;
    bool with_emitter_;
    Eigensystem es_;
};

// ------------------------------ heatmaps ------------------------------------

struct HeatmapTable {
    std::vector<double> times;
    std::vector<Site> sites;
    Eigen::MatrixXd probs;    // row = time, col = site
    double tail_prob_max{0}; // largest probability seen in the last 10% of the chain
};

inline constexpr int heatmap_max_rows = 2000;

// |<x| e^{-iHt} |q>|^2 over the grid; refuses truncations that would reflect
inline HeatmapTable site_heatmap(const CouplingParams& p, const TimeGrid& grid, int n_cells) {
    const int needed = reflection_guard_cells(p, grid.t_end);
    if (n_cells < needed)
        throw guard_error("site_heatmap: truncation too short for t_end (reflection guard); need " +
                              std::to_string(needed) + " cells",
                          needed);

    const HamiltonianMatrix h = build_hamiltonian(p, n_cells, true);
    const Propagator prop(h);
    StateVector q0(n_cells, true);
    q0.amp(Site::emitter()) = 1.0;

    // down-sample time to bound the table size
    std::vector<double> ts = grid.times();
    if (static_cast<int>(ts.size()) > heatmap_max_rows) {
        std::vector<double> kept;
        const double stride = double(ts.size() - 1) / (heatmap_max_rows - 1);
        for (int i = 0; i < heatmap_max_rows; ++i)
            kept.push_back(ts[static_cast<size_t>(std::lround(i * stride))]);
        ts = std::move(kept);
    }

    HeatmapTable table;
    table.times = ts;
    const int dim = h.dim();
    for (int i = 0; i < dim; ++i) table.sites.push_back(site_at(i, true));
    table.probs.resize(static_cast<Eigen::Index>(ts.size()), dim);

    const int tail_start = dim - std::max(1, dim / 10);
    double tail_max = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        const StateVector psi = prop.evolve(q0, ts[i]);
        for (int s = 0; s < dim; ++s) table.probs(static_cast<Eigen::Index>(i), s) = std::norm(psi.amps()[s]);
        tail_max = std::max(tail_max,
                            table.probs.row(static_cast<Eigen::Index>(i)).segment(tail_start, dim - tail_start).sum());
    }
    table.tail_prob_max = tail_max;
    return table;
}

} // namespace sshqed
