// hamiltonian.hpp — single-particle Hamiltonian on the truncated lattice

#pragma once

#include <Eigen/Dense>

#include "sshqed/couplings.hpp"
#include "sshqed/lattice.hpp"

namespace sshqed {

// Real symmetric, tridiagonal in site order: g between emitter and A(1),
// j2 between A(n),B(n), j1 between B(n),A(n+1), zero diagonal.
class HamiltonianMatrix {
public:
    HamiltonianMatrix(const CouplingParams& params, int n_cells, bool with_emitter)
        : params_(params), n_cells_(n_cells), with_emitter_(with_emitter) {
        const int dim = lattice_dim(n_cells, with_emitter);
        entries_ = Eigen::MatrixXd::Zero(dim, dim);
        const Eigen::VectorXd od = offdiagonal();
        for (int i = 0; i < dim - 1; ++i) {
            entries_(i, i + 1) = od[i];
            entries_(i + 1, i) = od[i];
        }
    }

    const CouplingParams& params() const noexcept { return params_; }
    int n_cells() const noexcept { return n_cells_; }
    bool with_emitter() const noexcept { return with_emitter_; }
    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXd& entries() const noexcept { return entries_; }

    // the single off-diagonal band [g,] j2, j1, j2, j1, ...
    Eigen::VectorXd offdiagonal() const {
        const int dim = lattice_dim(n_cells_, with_emitter_);
        Eigen::VectorXd od(dim - 1);
        int i = 0;
        if (with_emitter_) od[i++] = params_.g();
        for (int n = 1; n <= n_cells_; ++n) {
            od[i++] = params_.j2();
            if (n < n_cells_) od[i++] = params_.j1();
        }
        return od;
    }

    StateVector apply(const StateVector& psi) const {
        if (psi.dim() != dim() || psi.with_emitter() != with_emitter_)
            throw std::invalid_argument("HamiltonianMatrix::apply: layout mismatch");
        return {n_cells_, with_emitter_, entries_ * psi.amps()};
    }

private:
    CouplingParams params_;
    int n_cells_;
    bool with_emitter_;
    Eigen::MatrixXd entries_;
};

inline HamiltonianMatrix build_hamiltonian(const CouplingParams& params, int n_cells,
                                           bool with_emitter) {
    if (n_cells < 1) throw std::invalid_argument("build_hamiltonian: n_cells must be >= 1");
    return {params, n_cells, with_emitter};
}

// Diagonal +-1 operator: +1 on A sites, -1 on B sites and on the emitter
// (the emitter counts as an effective B site).  Anticommutes with H exactly.
inline Eigen::VectorXd chiral_operator(int n_cells, bool with_emitter) {
    const int dim = lattice_dim(n_cells, with_emitter);
    Eigen::VectorXd sig(dim);
    for (int i = 0; i < dim; ++i) {
        const Site s = site_at(i, with_emitter);
        sig[i] = (s.kind == Site::Kind::A) ? 1.0 : -1.0;
    }
    return sig;
}

} // namespace sshqed
