#pragma once

#include "vpatch/contour.hpp"
#include "vpatch/probes.hpp"
#include "vpatch/sigma.hpp"
#include "vpatch/vstate.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace vpatch {

using json = nlohmann::ordered_json;

// Contour files come in three kinds:
//   {"kind":"complex-fourier","coefficients":[[re,im],...],"k_min":-K,"k_max":K,"nodes":N}
//   {"kind":"polar-fourier","symmetry":m,"base_radius":r0,"cosines":[a1,...],"nodes":N}
//   {"kind":"polyline","points":[[x,y],...]}
json contour_to_json(const Contour& c);
json shape_to_json(const PolarShape& s, int nodes = 0);
Contour contour_from_json(const json& j, int node_override = 0);
Contour load_contour(const std::filesystem::path& path, int node_override = 0);

json load_json(const std::filesystem::path& path);
void save_json(const json& j, const std::filesystem::path& path);

json solution_to_json(const VStateSolution& s);
json branch_to_json(const Branch& b);
json sigma_report_to_json(const SigmaReport& r);
json probe_report_to_json(const ProbeReport& r);
json scan_to_json(const BifurcationScan& s, int symmetry);

std::uint64_t fnv1a_bytes(const void* data, std::size_t size);
std::string fnv1a_file_hex(const std::filesystem::path& path);

struct RunManifest {
    std::string command;
    std::string library;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    std::vector<std::pair<std::string, std::string>> outputs; // path, digest
    std::vector<std::pair<std::string, double>> tolerances;
    double wall_time_seconds = 0.0;
};

json manifest_to_json(const RunManifest& m);

} // namespace vpatch
