#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sshqed/eigenstates.hpp"
#include "sshqed/hamiltonian.hpp"
#include "sshqed/linalg.hpp"

using namespace sshqed;
using Catch::Approx;

namespace {

double eigen_residual(const HamiltonianMatrix& h, const StateVector& psi, double energy) {
    return (h.apply(psi).amps() - energy * psi.amps()).norm();
}

} // namespace

TEST_CASE("edge state: prefactor, sublattice support, eigen-residual") {
    CouplingParams p(1.5, 1.0, 0.1);
    const StateVector phi = edge_state(p, 200);
    CHECK(phi.amp(Site::a(1)).real() == Approx(0.745355992499930).epsilon(1e-12));
    for (int n = 1; n <= 200; ++n) CHECK(std::abs(phi.amp(Site::b(n))) == 0.0);
    // alternating sign with e^{-(n-1)/xi} envelope
    CHECK(phi.amp(Site::a(2)).real() < 0.0);
    CHECK(std::abs(phi.amp(Site::a(2))) < std::abs(phi.amp(Site::a(1))));
    CHECK(phi.norm() == Approx(1.0).epsilon(1e-12));

    const HamiltonianMatrix bare = build_hamiltonian(p, 200, false);
    CHECK(eigen_residual(bare, phi, 0.0) < 1e-10);

    REQUIRE_THROWS_AS(edge_state({1.0, 1.5, 0.1}, 64), std::domain_error);
    REQUIRE_THROWS_AS(edge_state({1.0, 1.0, 0.1}, 64), std::domain_error);
}

TEST_CASE("zero mode: emitter weight, sublattice support, eigen-residual") {
    CouplingParams p(1.0, 1.5, 2.5);
    const int cells = cells_for_tail(1.0 / std::log(1.5));
    const StateVector psi = zero_mode(p, cells);
    CHECK(std::norm(psi.amp(Site::emitter())) == Approx(1.0 / 6.0).epsilon(1e-12));
    for (int n = 1; n <= cells; ++n) CHECK(std::abs(psi.amp(Site::a(n))) == 0.0);
    CHECK(psi.norm() == Approx(1.0).epsilon(1e-12));

    const HamiltonianMatrix h = build_hamiltonian(p, cells, true);
    CHECK(eigen_residual(h, psi, 0.0) < 1e-10);

    REQUIRE_THROWS_AS(zero_mode({1.5, 1.0, 0.1}, 64), std::domain_error);
}

TEST_CASE("localization measures of the bound pair") {
    CouplingParams p(1.5, 1.0, 0.1);
    CHECK(sublattice_r(p) == Approx(0.0600024691*1.00000000).margin(2e-6));
    CHECK(sublattice_r(p) == Approx(0.1 * 1.0 / std::sqrt((1.25 - 0.01) * (2.25 - 0.01)))
                                 .epsilon(1e-14));
    CHECK(pair_localization_length(p) == Approx(2.49370).margin(2e-5));

    // r(g_weak) = 1 exactly
    const double gw = p.g_weak();
    CHECK(sublattice_r({1.5, 1.0, gw * (1 + 1e-13)}) == Approx(1.0).margin(1e-6));
    // r/g -> J2 / sqrt((J1^2 - J2^2) J1^2) as g -> 0
    const double slope = 1.0 / std::sqrt(1.25 * 2.25);
    CHECK(sublattice_r({1.5, 1.0, 1e-5}) / 1e-5 == Approx(slope).epsilon(1e-8));
    // strong coupling flips the sign convention
    CHECK(sublattice_r({1.0, 1.5, 2.5}) < 0.0);

    // region III pair is a resonance: no real sublattice measure
    REQUIRE_THROWS_AS(sublattice_r({1.5, 1.0, 1.3}), std::domain_error);
    // region IV pair is anti-bound: r stays real but the profile grows
    REQUIRE_THROWS_AS(pair_localization_length({1.5, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("bound pair in region V: shape, norm, emitter weight, residual") {
    CouplingParams p(1.5, 1.0, 0.1);
    const int cells = cells_for_tail(pair_localization_length(p));
    auto [plus, minus] = bound_pair_states(p, cells);
    const double z = z_plus_closed_form(p).real();

    CHECK(plus.norm() == Approx(1.0).margin(1e-12));
    CHECK(minus.norm() == Approx(1.0).margin(1e-12));
    CHECK(std::abs(plus.dot(minus)) < 1e-12);

    // alternating cell sign present: sign(j1_tilde) = + flips consecutive cells
    const double a1 = plus.amp(Site::a(1)).real();
    const double a2 = plus.amp(Site::a(2)).real();
    CHECK(a1 * a2 < 0.0);

    // B amplitudes carry the factor -r relative to A
    CHECK(plus.amp(Site::b(1)).real() / plus.amp(Site::a(1)).real() ==
          Approx(-sublattice_r(p)).epsilon(1e-12));

    const HamiltonianMatrix h = build_hamiltonian(p, cells, true);
    CHECK(eigen_residual(h, plus, z) < 1e-8);
    CHECK(eigen_residual(h, minus, -z) < 1e-8);

    // emitter overlap equals the truncated-chain eigenvector weight
    const Eigensystem es = eig_tridiagonal(Eigen::VectorXd::Zero(h.dim()), h.offdiagonal());
    Eigen::Index best = 0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
        if (std::abs(es.values[i] - z) < std::abs(es.values[best] - z)) best = i;
    CHECK(std::abs(es.values[best] - z) < 1e-10);
    CHECK(es.vectors(0, best) * es.vectors(0, best) ==
          Approx(std::norm(plus.amp(Site::emitter()))).margin(1e-10));
}

TEST_CASE("bound pair in deep region I: no cell alternation, emitter weight 9/28") {
    CouplingParams p(1.0, 1.5, 2.5);
    const int cells = cells_for_tail(pair_localization_length(p));
    auto [plus, minus] = bound_pair_states(p, cells);

    CHECK(std::norm(plus.amp(Site::emitter())) == Approx(9.0 / 28.0).epsilon(1e-12));
    CHECK(std::norm(minus.amp(Site::emitter())) == Approx(9.0 / 28.0).epsilon(1e-12));

    // j1_tilde < 0: no alternating cell sign on the A sublattice
    CHECK(plus.amp(Site::a(1)).real() * plus.amp(Site::a(2)).real() > 0.0);
    // the negative-energy state flips sign between A and B within a cell
    CHECK(minus.amp(Site::a(1)).real() * minus.amp(Site::b(1)).real() < 0.0);

    const double z = z_plus_closed_form(p).real();
    const HamiltonianMatrix h = build_hamiltonian(p, cells, true);
    CHECK(eigen_residual(h, plus, z) < 1e-8);
    CHECK(eigen_residual(h, minus, -z) < 1e-8);

    REQUIRE_THROWS_AS(bound_pair_states({1.5, 1.0, 1.0}, 64), std::domain_error);
    REQUIRE_THROWS_AS(bound_pair_states({2.0 / 3.0, 1.0, 0.5}, 64), std::domain_error);
}

TEST_CASE("small-g pair hybridizes emitter and edge state") {
    CouplingParams p(1.5, 1.0, 0.01);
    const int cells = cells_for_tail(pair_localization_length(p));
    auto [plus, minus] = bound_pair_states(p, cells);
    const StateVector edge = edge_state(p, cells);

    StateVector hybrid_plus(cells, true), hybrid_minus(cells, true);
    hybrid_plus.amp(Site::emitter()) = 1.0 / std::numbers::sqrt2;
    hybrid_minus.amp(Site::emitter()) = 1.0 / std::numbers::sqrt2;
    for (int n = 1; n <= cells; ++n) {
        hybrid_plus.amp(Site::a(n)) = edge.amp(Site::a(n)) / std::numbers::sqrt2;
        hybrid_minus.amp(Site::a(n)) = -edge.amp(Site::a(n)) / std::numbers::sqrt2;
    }
    CHECK(std::abs(plus.dot(hybrid_plus)) > 0.9999);
    CHECK(std::abs(minus.dot(hybrid_minus)) > 0.9999);
}

TEST_CASE("transfer matrix eigenpairs match the analytic ones") {
    CouplingParams p(1.5, 1.0, 0.1);
    const double z = z_plus_closed_form(p).real();
    const Eigen::Matrix2d m = transfer_matrix(p, z);
    CHECK(std::abs(m.determinant() - 1.0) < 1e-14);

    const double r = sublattice_r(p);
    const double norm_f = 1.0 / std::sqrt(1.0 - r * r);
    // right eigenvector [1, -r]/N at eigenvalue -j2/j1_tilde
    Eigen::Vector2d xi1(norm_f, -norm_f * r);
    const double m1 = -p.j2() / p.j1_tilde();
    CHECK((m * xi1 - m1 * xi1).cwiseAbs().maxCoeff() < 1e-12);
    // left/right eigenvector bi-orthonormality
    Eigen::Vector2d xi1_left(norm_f, norm_f * r);
    Eigen::Vector2d xi2(-norm_f * r, norm_f), xi2_left(norm_f * r, norm_f);
    CHECK(xi1_left.dot(xi1) == Approx(1.0).epsilon(1e-12));
    CHECK(xi2_left.dot(xi2) == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(xi1_left.dot(xi2)) < 1e-13);
    CHECK(std::abs(xi2_left.dot(xi1)) < 1e-13);
}

TEST_CASE("transfer-matrix route reproduces the closed form entrywise") {
    for (auto [j1, j2, g] : {std::tuple{1.5, 1.0, 0.1}, {1.0, 1.5, 2.5}, {1.5, 1.0, 0.7}}) {
        CouplingParams p(j1, j2, g);
        const int cells = cells_for_tail(pair_localization_length(p));
        auto [plus, minus] = bound_pair_states(p, cells);
        const double z = z_plus_closed_form(p).real();
        const StateVector via_transfer = transfer_matrix_state(p, z, cells);
        const StateVector via_transfer_minus = transfer_matrix_state(p, -z, cells);
        CHECK((via_transfer.amps() - plus.amps()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((via_transfer_minus.amps() - minus.amps()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("transfer-matrix route rejects non-eigenvalue energies") {
    CouplingParams p(1.5, 1.0, 0.1);
    const double z = z_plus_closed_form(p).real();
    REQUIRE_THROWS_AS(transfer_matrix_state(p, 0.9 * z, 128), std::runtime_error);
    REQUIRE_THROWS_AS(transfer_matrix_state(p, 1.1 * z, 128), std::runtime_error);
}

TEST_CASE("symmetric/antisymmetric combinations") {
    CouplingParams p(1.5, 1.0, 0.1);
    const int cells = cells_for_tail(pair_localization_length(p));
    auto [sym, asym] = sym_antisym_states(p, cells);

    for (int n = 1; n <= cells; ++n) {
        CHECK(std::abs(sym.amp(Site::a(n))) < 1e-12);   // psi_s: no A support
        CHECK(std::abs(asym.amp(Site::b(n))) < 1e-12);  // psi_a: no B support
    }
    CHECK(std::abs(asym.amp(Site::emitter())) < 1e-12);
    CHECK(std::abs(sym.amp(Site::emitter())) > 0.5);

    // H psi_s = E+ psi_a and H psi_a = E+ psi_s; hence both are H^2 eigenstates
    const double e_plus = z_plus_closed_form(p).real();
    const HamiltonianMatrix h = build_hamiltonian(p, cells, true);
    CHECK((h.apply(sym).amps() - e_plus * asym.amps()).norm() < 1e-8);
    CHECK((h.apply(asym).amps() - e_plus * sym.amps()).norm() < 1e-8);
    CHECK((h.apply(h.apply(sym)).amps() - e_plus * e_plus * sym.amps()).norm() < 1e-8);
}

TEST_CASE("bare-chain scattering states") {
    CouplingParams p(1.5, 1.0, 0.0);
    const int cells = 400;
    for (int band : {+1, -1}) {
        const StateVector psi = continuum_state(p, 1.0, band, cells, false);
        const double e = dispersion(p, 1.0, band);
        const HamiltonianMatrix h = build_hamiltonian(p, cells, false);
        const Eigen::VectorXcd res = h.apply(psi).amps() - e * psi.amps();
        // interior rows are exact; only the last cell feels the truncation
        CHECK(res.head(res.size() - 4).cwiseAbs().maxCoeff() < 1e-8 * psi.norm());
        // B amplitudes are sin(kn)
        CHECK(psi.amp(Site::b(3)).real() ==
              Approx((band > 0 ? 1.0 : -1.0) * std::sin(3.0)).epsilon(1e-12));
    }
    REQUIRE_THROWS_AS(continuum_state(p, 1e-8, +1, 64, false), std::domain_error);
    REQUIRE_THROWS_AS(continuum_state(p, std::numbers::pi, +1, 64, false), std::domain_error);
}

TEST_CASE("emitter-coupled scattering states") {
    CouplingParams p(1.5, 1.0, 0.1);
    const int cells = 400;
    const double k = 1.0;
    const HamiltonianMatrix h = build_hamiltonian(p, cells, true);
    for (int band : {+1, -1}) {
        const StateVector psi = continuum_state(p, k, band, cells, true);
        const double e = dispersion(p, k, band);
        const Eigen::VectorXcd res = h.apply(psi).amps() - e * psi.amps();
        CHECK(res.head(res.size() - 4).cwiseAbs().maxCoeff() < 1e-8 * psi.norm());

        // boundary-condition identity between <1,B> and <2,A>
        const double e_plus = dispersion(p, k, +1);
        const double expected = (band > 0 ? 1.0 : -1.0) * p.j1() /
                                (e_plus - p.j2() * p.j2() / (e_plus - p.g() * p.g() / e_plus));
        CHECK(psi.amp(Site::b(1)).real() / psi.amp(Site::a(2)).real() ==
              Approx(expected).epsilon(1e-10));
    }

    // g -> 0 reduces to the bare-chain states
    CouplingParams tiny(1.5, 1.0, 1e-9);
    const StateVector with_g = continuum_state(tiny, k, +1, 50, true);
    const StateVector bare = continuum_state(tiny, k, +1, 50, false);
    double worst = 0.0;
    for (int n = 1; n <= 50; ++n) {
        worst = std::max(worst, std::abs(with_g.amp(Site::a(n)) - bare.amp(Site::a(n))));
        worst = std::max(worst, std::abs(with_g.amp(Site::b(n)) - bare.amp(Site::b(n))));
    }
    CHECK(worst < 1e-7);
    CHECK(std::abs(with_g.amp(Site::emitter())) < 1e-8);
}
