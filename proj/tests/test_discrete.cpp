#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sshqed/discrete.hpp"
#include "sshqed/hamiltonian.hpp"
#include "sshqed/linalg.hpp"

using namespace sshqed;
using Catch::Approx;

namespace {

const DiscreteState& pair_plus(const std::vector<DiscreteState>& states) {
    for (const auto& st : states)
        if (st.kind != StateKind::ZeroModeBound && st.kind != StateKind::ZeroModeAntiBound &&
            (st.energy.real() > 0.0 || st.energy.imag() > 0.0))
            return st;
    throw std::runtime_error("no z_+ state found");
}

} // namespace

TEST_CASE("region classification") {
    // topological side j1 > j2: V | IV | III | II | I
    CHECK(classify_region({1.5, 1.0, 0.5}).region == Region::V);
    CHECK(classify_region({1.5, 1.0, 1.0}).region == Region::IV);
    CHECK(classify_region({1.5, 1.0, 1.3}).region == Region::III);
    CHECK(classify_region({1.5, 1.0, 1.7}).region == Region::II);
    CHECK(classify_region({1.5, 1.0, 2.5}).region == Region::I);

    // trivial side j1 < j2: III | II | I only
    CHECK(classify_region({2.0 / 3.0, 1.0, 0.5}).region == Region::III);
    CHECK(classify_region({2.0 / 3.0, 1.0, 0.9}).region == Region::II);
    CHECK(classify_region({2.0 / 3.0, 1.0, 2.5}).region == Region::I);
    // g_str(2/3, 1) = 1.054093; g = 1.2 is already above it
    CHECK(classify_region({2.0 / 3.0, 1.0, 1.2}).region == Region::I);

    // boundaries are reported, not silently classified
    CouplingParams p(1.5, 1.0, 0.0);
    CHECK(classify_region({1.5, 1.0, p.g_weak()}).is_boundary());
    CHECK(classify_region({1.5, 1.0, p.g_ep()}).is_boundary());
    CHECK(classify_region({1.5, 1.0, 1.5}).is_boundary());
    CHECK(classify_region({1.5, 1.0, p.g_str()}).is_boundary());
    CHECK(classify_region({1.5, 1.0, 1.0}).region == Region::IV); // interior stays interior
}

TEST_CASE("topological boundary values at (1.5, 1)") {
    CouplingParams p(1.5, 1.0, 0.1);
    CHECK(p.g_weak() == Approx(0.866025403784439).epsilon(1e-12));
    CHECK(p.g_ep() == Approx(1.118033988749895).epsilon(1e-12));
    CHECK(p.g_str() == Approx(1.936491673103709).epsilon(1e-12));
}

TEST_CASE("closed-form pair energies") {
    // region V (in-gap bound pair)
    {
        const Complex zp = z_plus_closed_form({1.5, 1.0, 0.1});
        CHECK(zp.real() == Approx(0.0744023809142845).epsilon(1e-10));
        CHECK(zp.imag() == 0.0);
    }
    // deep region I for the trivial chain
    {
        const Complex zp = z_plus_closed_form({1.0, 1.5, 2.5});
        CHECK(zp.real() == Approx(2.98807152333598).epsilon(1e-12));
    }
    {
        const Complex zp = z_plus_closed_form({2.0 / 3.0, 1.0, 2.5});
        CHECK(zp.real() == Approx(2.70676098).epsilon(1e-8));
    }
    REQUIRE_THROWS_AS(z_plus_closed_form({1.5, 1.0, 1.5}), std::domain_error);
}

TEST_CASE("discrete eigenvalues in region V: bound pair plus anti-bound zero mode") {
    CouplingParams p(1.5, 1.0, 0.1);
    const auto states = discrete_eigenvalues(p);
    REQUIRE(states.size() == 3);

    const auto& zm = states[0];
    CHECK(zm.kind == StateKind::ZeroModeAntiBound);
    CHECK(zm.sheet == Sheet::Second);

    const auto& zp = pair_plus(states);
    CHECK(zp.kind == StateKind::Bound);
    CHECK(zp.sheet == Sheet::First);
    CHECK(zp.energy.real() == Approx(0.0744023809142845).epsilon(1e-10));
    // Im k = ln(2.24/1.5); Re k = pi (alternating-cell profile)
    CHECK(zp.wavevector.imag() == Approx(std::log(2.24 / 1.5)).epsilon(1e-10));
    CHECK(std::abs(zp.wavevector.real()) == Approx(std::numbers::pi).epsilon(1e-12));

    for (const auto& st : states)
        if (std::abs(st.energy) > 1e-12)
            CHECK(root_residual(p, st.energy, st.sheet) < 1e-10);
}

TEST_CASE("chiral pairing z_- = -z_+ and conjugate resonances") {
    for (auto [j1, j2, g] : {std::tuple{1.5, 1.0, 0.1}, {1.0, 1.5, 2.5}, {2.0 / 3.0, 1.0, 0.5},
                             {1.5, 1.0, 1.3}, {1.5, 1.0, 1.0}}) {
        const auto states = discrete_eigenvalues({j1, j2, g});
        Complex zp(0, 0), zm(0, 0);
        int npair = 0;
        for (const auto& st : states) {
            if (st.kind == StateKind::ZeroModeBound || st.kind == StateKind::ZeroModeAntiBound)
                continue;
            ++npair;
            if (st.energy.real() > 0.0 || st.energy.imag() > 0.0) zp = st.energy;
            else zm = st.energy;
        }
        REQUIRE(npair == 2);
        CHECK(std::abs(zp + zm) < 1e-13);
    }
    // region III pair is a conjugate resonance/anti-resonance pair on sheet II
    const auto states = discrete_eigenvalues({2.0 / 3.0, 1.0, 0.5});
    int res = 0, ares = 0;
    for (const auto& st : states) {
        if (st.kind == StateKind::Resonance) {
            ++res;
            CHECK(st.sheet == Sheet::Second);
            CHECK(st.energy.imag() < 0.0);
        }
        if (st.kind == StateKind::AntiResonance) ++ares;
    }
    CHECK(res == 1);
    CHECK(ares == 1);
}

TEST_CASE("kinds per region on the topological side") {
    auto kind_of_pair = [](double g) {
        return pair_plus(discrete_eigenvalues({1.5, 1.0, g})).kind;
    };
    CHECK(kind_of_pair(0.5) == StateKind::Bound);       // V
    CHECK(kind_of_pair(1.0) == StateKind::AntiBound);   // IV
    CHECK(kind_of_pair(1.3) == StateKind::AntiResonance); // III (Im > 0 branch labeled anti)
    CHECK(kind_of_pair(1.7) == StateKind::AntiBound);   // II
    CHECK(kind_of_pair(2.5) == StateKind::Bound);       // I
}

TEST_CASE("zero mode presence and kind") {
    // bound for j1 < j2
    const auto trivial = discrete_eigenvalues({1.0, 1.5, 2.5});
    CHECK(trivial[0].kind == StateKind::ZeroModeBound);
    CHECK(trivial[0].sheet == Sheet::First);
    // absent for the uniform chain
    const auto uniform = discrete_eigenvalues({1.0, 1.0, 0.7});
    for (const auto& st : uniform) {
        CHECK(st.kind != StateKind::ZeroModeBound);
        CHECK(st.kind != StateKind::ZeroModeAntiBound);
    }
    CHECK(uniform.size() == 2);
}

TEST_CASE("g = j1 is an explicit singular case") {
    REQUIRE_THROWS_AS(discrete_eigenvalues({1.5, 1.0, 1.5}), std::domain_error);
    // limits from both sides stay finite-checkable
    const Complex below = z_plus_closed_form({1.5, 1.0, 1.5 - 1e-4});
    const Complex above = z_plus_closed_form({1.5, 1.0, 1.5 + 1e-4});
    CHECK(std::abs(below) > 10.0);
    CHECK(std::abs(above) > 10.0);
}

TEST_CASE("truncated-chain oracle contains the first-sheet eigenvalues") {
    for (auto [j1, j2, g] : {std::tuple{1.5, 1.0, 0.1}, {2.0 / 3.0, 1.0, 2.5}, {1.0, 1.5, 2.5}}) {
        CouplingParams p(j1, j2, g);
        const HamiltonianMatrix h = build_hamiltonian(p, 600, true);
        const Eigensystem es = eig_tridiagonal(Eigen::VectorXd::Zero(h.dim()), h.offdiagonal());
        for (const auto& st : discrete_eigenvalues(p)) {
            if (st.sheet != Sheet::First) continue;
            double best = 1e300;
            for (Eigen::Index i = 0; i < es.values.size(); ++i)
                best = std::min(best, std::abs(es.values[i] - st.energy.real()));
            REQUIRE(best < 1e-8);
        }
    }
}

TEST_CASE("anti-bound and resonance energies are absent from the truncated spectrum") {
    // region IV anti-bound pair sits in the gap on sheet II; the lattice
    // spectrum must NOT contain it (gap eigenvalues would be spurious)
    CouplingParams p(1.5, 1.0, 1.0);
    const Complex zp = z_plus_closed_form(p);
    const HamiltonianMatrix h = build_hamiltonian(p, 400, true);
    const Eigensystem es = eig_tridiagonal(Eigen::VectorXd::Zero(h.dim()), h.offdiagonal());
    double best = 1e300;
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
        best = std::min(best, std::abs(es.values[i] - zp.real()));
    CHECK(best > 1e-3);
}

TEST_CASE("exceptional point coalescence: |z_pm| -> 0 as g -> g_ep") {
    CouplingParams base(1.5, 1.0, 0.1);
    const double ge = base.g_ep();
    double prev = 1e300;
    for (double eps : {3e-2, 1e-2, 3e-3, 1e-3}) {
        const double below = std::abs(z_plus_closed_form({1.5, 1.0, ge - eps}));
        const double above = std::abs(z_plus_closed_form({1.5, 1.0, ge + eps}));
        CHECK(below < prev);
        CHECK(above < 1.5 * std::sqrt(eps) * 3.0); // sqrt-law shrink
        prev = below;
    }
    CHECK(std::abs(z_plus_closed_form({1.5, 1.0, ge - 1e-9})) < 1e-3);
}

TEST_CASE("root residuals across random draws in every region") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int done = 0;
    while (done < 60) {
        const double j1 = 0.5 + 1.2 * uni(rng);
        const double j2 = 0.5 + 1.2 * uni(rng);
        CouplingParams probe(j1, j2, 0.0);
        const double g = 0.05 + 2.2 * uni(rng);
        CouplingParams p(j1, j2, g);
        const RegionLabel label = classify_region(p);
        if (label.is_boundary()) continue;
        // skip parameters too close to a boundary for clean Newton polish
        const double margin = 0.02;
        if (std::abs(g - probe.g_str()) < margin || std::abs(g - j1) < margin) continue;
        if (j1 > j2 + 1e-9 &&
            (std::abs(g - probe.g_weak()) < margin || std::abs(g - probe.g_ep()) < margin))
            continue;
        if (std::abs(j1 - j2) < 0.03) continue;
        for (const auto& st : discrete_eigenvalues(p)) {
            if (std::abs(st.energy) < 1e-12) continue;
            REQUIRE(root_residual(p, st.energy, st.sheet) < 1e-10);
        }
        ++done;
    }
}
