// lattice.hpp — site labels, the fixed matrix ordering, and state vectors

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>

namespace sshqed {

using Complex = std::complex<double>;

// A site is either the emitter or the A/B element of a unit cell (cell >= 1).
// Total ordering Emitter < A(1) < B(1) < A(2) < ... fixes all matrix indices
// and keeps every Hamiltonian tridiagonal.
struct Site {
    enum class Kind { Emitter, A, B };

    Kind kind{Kind::Emitter};
    int cell{0}; // 0 for the emitter, >= 1 otherwise

    static Site emitter() { return {Kind::Emitter, 0}; }
    static Site a(int cell) { return make(Kind::A, cell); }
    static Site b(int cell) { return make(Kind::B, cell); }

    bool operator==(const Site&) const = default;

private:
    static Site make(Kind k, int cell) {
        if (cell < 1) throw std::invalid_argument("Site: cell index must be >= 1");
        return {k, cell};
    }
};

// index of a site in the fixed ordering; emitter occupies slot 0 when present
inline int site_index(const Site& s, bool with_emitter) {
    const int off = with_emitter ? 1 : 0;
    switch (s.kind) {
        case Site::Kind::Emitter:
            if (!with_emitter) throw std::invalid_argument("site_index: no emitter in this lattice");
            return 0;
        case Site::Kind::A: return off + 2 * (s.cell - 1);
        case Site::Kind::B: return off + 2 * (s.cell - 1) + 1;
    }
    throw std::logic_error("site_index: unreachable");
}

inline Site site_at(int index, bool with_emitter) {
    if (index < 0) throw std::invalid_argument("site_at: negative index");
    if (with_emitter) {
        if (index == 0) return Site::emitter();
        --index;
    }
    const int cell = index / 2 + 1;
    return (index % 2 == 0) ? Site::a(cell) : Site::b(cell);
}

inline int lattice_dim(int n_cells, bool with_emitter) {
    if (n_cells < 1) throw std::invalid_argument("lattice_dim: n_cells must be >= 1");
    return 2 * n_cells + (with_emitter ? 1 : 0);
}

// ----------------------------- StateVector ---------------------------------

// Complex amplitudes over {emitter} u {(n,A),(n,B)} in site order.
class StateVector {
public:
    StateVector(int n_cells, bool with_emitter)
        : n_cells_(n_cells), with_emitter_(with_emitter),
          amps_(Eigen::VectorXcd::Zero(lattice_dim(n_cells, with_emitter))) {}

    StateVector(int n_cells, bool with_emitter, Eigen::VectorXcd amps)
        : n_cells_(n_cells), with_emitter_(with_emitter), amps_(std::move(amps)) {
        if (amps_.size() != lattice_dim(n_cells, with_emitter))
            throw std::invalid_argument("StateVector: amplitude length mismatch");
    }

    int n_cells() const noexcept { return n_cells_; }
    bool with_emitter() const noexcept { return with_emitter_; }
    int dim() const noexcept { return static_cast<int>(amps_.size()); }

    const Eigen::VectorXcd& amps() const noexcept { return amps_; }
    Eigen::VectorXcd& amps() noexcept { return amps_; }

    Complex amp(const Site& s) const { return amps_[site_index(s, with_emitter_)]; }
    Complex& amp(const Site& s) { return amps_[site_index(s, with_emitter_)]; }

    double norm() const { return amps_.norm(); }

    void normalize() {
        const double n = norm();
        if (n == 0.0) throw std::runtime_error("StateVector::normalize: zero vector");
        amps_ /= n;
    }

    Complex dot(const StateVector& other) const {
        if (other.dim() != dim() || other.with_emitter_ != with_emitter_)
            throw std::invalid_argument("StateVector::dot: layout mismatch");
        return amps_.dot(other.amps_); // conjugates *this
    }

private:
    int n_cells_;
    bool with_emitter_;
    Eigen::VectorXcd amps_;
};

} // namespace sshqed
