// manifest.hpp — deterministic run manifests: resolved config, derived
// constants, wall-clock and data-file checksums

#pragma once

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <string>
#include <vector>

#include "sshqed/branch.hpp"
#include "sshqed/couplings.hpp"
#include "sshqed/discrete.hpp"
#include "sshqed/eigenstates.hpp"
#include "sshqed/io.hpp"
#include "sshqed/version.hpp"
#include "sshqed/winding.hpp"

namespace sshqed {

// constants every figure-reproduction run embeds so plots can be annotated
// without recomputation
inline nlohmann::json derived_constants(const CouplingParams& p) {
    nlohmann::json d;
    d["j_plus"] = p.j_plus();
    d["j_minus"] = p.j_minus();
    d["band_edges"] = {p.band_inner(), p.band_outer()};
    d["j1_tilde"] = p.j1_tilde();
    d["g_str"] = p.g_str();
    if (p.topological()) {
        d["g_weak"] = p.g_weak();
        d["g_ep"] = p.g_ep();
    }
    const RegionLabel label = classify_region(p);
    d["region"] = label.is_boundary() ? ("boundary: " + label.boundary)
                                      : std::string(to_string(label.region));

    if (!detail::near(p.g(), p.j1())) {
        const Complex zp = z_plus_closed_form(p);
        d["z_plus"] = {zp.real(), zp.imag()};
        const Complex k = pair_wavevector(p);
        d["pair_wavevector"] = {k.real(), k.imag()};
        try {
            d["r"] = sublattice_r(p);
            d["xi"] = pair_localization_length(p);
        } catch (const std::domain_error&) {
            // delocalized pair: no localization measures to report
        }
    } else {
        d["singular_crossover"] = "g = j1";
    }
    d["winding_bare"] = winding_number(p, WindingVariant::Bare);
    try {
        d["winding_tilde"] = winding_number(p, WindingVariant::Tilde);
    } catch (const std::domain_error&) {
        d["winding_tilde_degenerate"] = true; // |j1_tilde| = j2 closes the effective gap
    }
    return d;
}

class RunManifest {
public:
    RunManifest(const std::string& command, nlohmann::json config)
        : start_(std::chrono::steady_clock::now()) {
        doc_["tool"] = "sshqed";
        doc_["version"] = version;
        doc_["command"] = command;
        doc_["config"] = std::move(config);
    }

    void set_derived(const nlohmann::json& d) { doc_["derived"] = d; }
    void add_extra(const std::string& key, const nlohmann::json& value) { doc_[key] = value; }

    void add_file(const std::string& path) {
        doc_["files"][path] = {{"checksum_fnv1a64", file_checksum(path)}};
    }

    nlohmann::json& doc() { return doc_; }

    void write(const std::string& path) {
        const auto elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_);
        doc_["wall_clock_ms"] = elapsed.count();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("RunManifest: cannot open " + path);
        out << doc_.dump(2) << "\n";
    }

private:
    nlohmann::json doc_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace sshqed
