// couplings.hpp — model parameters (J1, J2, g) and the derived coupling scales

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sshqed {

// Hopping/coupling parameters of the emitter + dimerized-chain model.
// j1 is the intercell hopping, j2 the intracell hopping, g the
// emitter-chain coupling.  All derived scales hang off this struct.
class CouplingParams {
public:
    CouplingParams(double j1, double j2, double g) : j1_(j1), j2_(j2), g_(g) {
        if (!(j1 > 0.0)) throw std::invalid_argument("CouplingParams: j1 must be > 0");
        if (!(j2 > 0.0)) throw std::invalid_argument("CouplingParams: j2 must be > 0");
        if (!(g >= 0.0)) throw std::invalid_argument("CouplingParams: g must be >= 0");
    }

    double j1() const noexcept { return j1_; }
    double j2() const noexcept { return j2_; }
    double g() const noexcept { return g_; }

    double j_plus() const noexcept { return j1_ + j2_; }
    double j_minus() const noexcept { return j1_ - j2_; }

    // band edges of the two continua: [band_inner, band_outer] and its mirror
    double band_inner() const noexcept { return std::abs(j1_ - j2_); }
    double band_outer() const noexcept { return j1_ + j2_; }

    // effective intercell hopping seen by the boundary once the emitter is attached
    double j1_tilde() const noexcept { return j1_ - g_ * g_ / j1_; }

    // strong-coupling threshold: bound pair exits the outer band edges above this
    double g_str() const noexcept { return std::sqrt(j1_ * (j1_ + j2_)); }

    // weak-coupling threshold (dimerized topological chain only, j1 > j2)
    double g_weak() const {
        require_topological("g_weak");
        return std::sqrt(j1_ * (j1_ - j2_));
    }

    // coupling at which the nonzero pair coalesces with the zero mode
    double g_ep() const {
        require_topological("g_ep");
        return std::sqrt(j1_ * j1_ - j2_ * j2_);
    }

    bool topological() const noexcept { return j1_ > j2_; }

private:
    void require_topological(const char* what) const {
        if (!(j1_ > j2_))
            throw std::domain_error(std::string(what) + " is defined only for j1 > j2");
    }

    double j1_, j2_, g_;
};

} // namespace sshqed
