#include "vpatch/io.hpp"

#include <fstream>
#include <sstream>

namespace vpatch {

json contour_to_json(const Contour& c) {
    json j;
    j["kind"] = "complex-fourier";
    json coefs = json::array();
    for (const cplx& ck : c.coefficients()) coefs.push_back({ck.real(), ck.imag()});
    j["coefficients"] = std::move(coefs);
    j["k_min"] = -c.max_mode();
    j["k_max"] = c.max_mode();
    j["nodes"] = c.node_count();
    return j;
}

json shape_to_json(const PolarShape& s, int nodes) {
    json j;
    j["kind"] = "polar-fourier";
    j["symmetry"] = s.symmetry;
    j["base_radius"] = s.base_radius;
    j["cosines"] = s.cosines;
    if (nodes > 0) j["nodes"] = nodes;
    return j;
}

Contour contour_from_json(const json& j, int node_override) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "complex-fourier") {
        const auto& arr = j.at("coefficients");
        std::vector<cplx> coefs;
        coefs.reserve(arr.size());
        for (const auto& e : arr)
            coefs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        const int k_min = j.at("k_min").get<int>();
        if (j.contains("k_max") &&
            j.at("k_max").get<int>() - k_min + 1 != static_cast<int>(coefs.size()))
            throw ContourError("coefficient count disagrees with the k range");
        const int k_max = k_min + static_cast<int>(coefs.size()) - 1;
        const int width = std::max(std::abs(k_min), std::abs(k_max));
        int nodes = node_override > 0 ? node_override : j.value("nodes", 0);
        if (nodes <= 0) nodes = std::max(256, 4 * (width + 1));
        return Contour(std::move(coefs), k_min, nodes);
    }
    if (kind == "polar-fourier") {
        PolarShape s;
        s.symmetry = j.at("symmetry").get<int>();
        s.base_radius = j.at("base_radius").get<double>();
        s.cosines = j.at("cosines").get<std::vector<double>>();
        const int nodes = node_override > 0 ? node_override : j.value("nodes", 0);
        return s.to_contour(nodes);
    }
    if (kind == "polyline") {
        const auto& arr = j.at("points");
        std::vector<cplx> pts;
        pts.reserve(arr.size());
        for (const auto& e : arr)
            pts.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        const int nodes = node_override > 0 ? node_override : j.value("nodes", 0);
        return Contour::fit_polyline(pts, j.value("max_mode", 0), nodes);
    }
    // solver output embeds its shape, so solutions chain straight into --contour
    if (kind == "vstate-solution") return contour_from_json(j.at("shape"), node_override);
    throw ContourError("unknown contour kind: " + kind);
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ContourError("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

Contour load_contour(const std::filesystem::path& path, int node_override) {
    return contour_from_json(load_json(path), node_override);
}

void save_json(const json& j, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ContourError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json solution_to_json(const VStateSolution& s) {
    json j;
    j["kind"] = "vstate-solution";
    j["shape"] = shape_to_json(s.shape);
    j["omega"] = s.omega;
    j["residual"] = s.residual_norm;
    j["iterations"] = s.iterations;
    j["branch_parameter"] = s.branch_parameter;
    return j;
}

json branch_to_json(const Branch& b) {
    json j;
    j["kind"] = "branch";
    json sols = json::array();
    for (const auto& s : b.solutions) sols.push_back(solution_to_json(s));
    j["solutions"] = std::move(sols);
    j["aborted"] = b.aborted;
    if (b.aborted) {
        j["abort_reason"] = b.abort_reason;
        j["failed_amplitude"] = b.failed_amplitude;
    }
    return j;
}

namespace {

json point_json(cplx z) { return json::array({z.real(), z.imag()}); }

json condition_json(const ConditionReport& r) {
    json j;
    j["pass"] = r.pass;
    j["margin"] = r.margin;
    j["witness_boundary"] = point_json(r.witness_boundary);
    j["witness_point"] = point_json(r.witness_point);
    j["excluded"] = r.excluded;
    return j;
}

} // namespace

json sigma_report_to_json(const SigmaReport& r) {
    json j;
    j["kind"] = "sigma-report";
    j["alpha"] = r.alpha;
    j["threshold"] = r.threshold;
    j["tol_geom"] = r.tol_geom;
    j["boundary_nodes"] = r.boundary_nodes;
    j["interior_samples"] = r.interior_samples;
    j["star_shaped"] = condition_json(r.star_shaped);
    j["sector"] = condition_json(r.sector);
    j["reflection"] = condition_json(r.reflection);
    j["verdict"] = r.verdict;
    j["exclusion_flag"] = r.exclusion_flag;
    return j;
}

json probe_report_to_json(const ProbeReport& r) {
    json j;
    j["kind"] = "probe-report";
    j["probe"] = r.name;
    j["pass"] = r.pass;
    j["margin"] = r.margin;
    json w = json::array();
    for (const cplx& x : r.witnesses) w.push_back(point_json(x));
    j["witnesses"] = std::move(w);
    j["samples"] = r.samples;
    json d = json::object();
    for (const auto& [key, value] : r.details) d[key] = value;
    j["details"] = std::move(d);
    return j;
}

json scan_to_json(const BifurcationScan& s, int symmetry) {
    json j;
    j["kind"] = "bifurcation-scan";
    j["symmetry"] = symmetry;
    j["omegas"] = s.omegas;
    j["sigmas"] = s.sigmas;
    j["estimate"] = s.estimate;
    j["sigma_at_estimate"] = s.sigma_at_estimate;
    return j;
}

std::uint64_t fnv1a_bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a_file_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContourError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    const std::uint64_t h = fnv1a_bytes(bytes.data(), bytes.size());
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

json manifest_to_json(const RunManifest& m) {
    json j;
    j["kind"] = "run-manifest";
    j["command"] = m.command;
    j["library"] = m.library;
    json in = json::array();
    for (const auto& [path, digest] : m.inputs)
        in.push_back({{"path", path}, {"fnv1a", digest}});
    j["inputs"] = std::move(in);
    json out = json::array();
    for (const auto& [path, digest] : m.outputs)
        out.push_back({{"path", path}, {"fnv1a", digest}});
    j["outputs"] = std::move(out);
    json tol = json::object();
    for (const auto& [key, value] : m.tolerances) tol[key] = value;
    j["tolerances"] = std::move(tol);
    j["wall_time_seconds"] = m.wall_time_seconds;
    return j;
}

} // namespace vpatch
