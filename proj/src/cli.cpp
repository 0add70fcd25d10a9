#include "vpatch/cli.hpp"

#include "vpatch/evolve.hpp"
#include "vpatch/io.hpp"
#include "vpatch/potential.hpp"
#include "vpatch/probes.hpp"
#include "vpatch/runtime.hpp"
#include "vpatch/sigma.hpp"
#include "vpatch/vstate.hpp"

#include "CLI11.hpp"

#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

namespace fs = std::filesystem;

namespace vpatch {

namespace {

struct Session {
    RunManifest manifest;
    fs::path out_dir;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void input(const fs::path& p) {
        manifest.inputs.emplace_back(p.string(), fnv1a_file_hex(p));
    }
    void output(const json& j, const fs::path& p) {
        save_json(j, p);
        manifest.outputs.emplace_back(p.string(), fnv1a_file_hex(p));
    }
    void output_raw(const fs::path& p) {
        manifest.outputs.emplace_back(p.string(), fnv1a_file_hex(p));
    }
    void tol(const std::string& name, double value) {
        manifest.tolerances.emplace_back(name, value);
    }
    void finish() {
        manifest.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        save_json(manifest_to_json(manifest), out_dir / "manifest.json");
    }
};

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

// "lo:hi:step" sweep (inclusive) or a comma-separated list.
std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo, hi, step;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0))
            throw ContourError("expected lo:hi:step in '" + text + "'");
        for (double v = lo; v <= hi + 0.5 * step; v += step) out.push_back(v);
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
            if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw ContourError("empty value list '" + text + "'");
    return out;
}

double parse_alpha(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "critical" || t == "acos(1/sqrt5)" || t == "acos(1/sqrt(5))")
        return critical_alpha();
    return std::stod(t);
}

double outer_radius(const Contour& c) {
    double r = 0.0;
    for (const cplx& z : c.node_positions()) r = std::max(r, std::abs(z));
    return r;
}

std::vector<cplx> interior_points(const Contour& c, int target, double collar) {
    std::vector<cplx> out;
    for (const cplx& p : interior_sample_grid(c, target))
        if (nearest_boundary_point(c, p).distance >= collar) out.push_back(p);
    return out;
}

std::vector<cplx> exterior_points(const Contour& c, int target, double collar) {
    const cplx center = c.barycenter_cached();
    const double rmax = outer_radius(c);
    const int rings = 12;
    const int angles = std::max(8, target / rings);
    std::vector<cplx> out;
    for (int i = 0; i < rings; ++i) {
        const double r = rmax + collar + (0.05 + 0.2 * i) * rmax;
        for (int a = 0; a < angles; ++a) {
            const cplx p = center + std::polar(r, 2.0 * std::numbers::pi * a / angles);
            if (nearest_boundary_point(c, p).distance >= collar && !contains(c, p))
                out.push_back(p);
        }
    }
    return out;
}

void print_value(const char* label, double v) {
    std::cout << label << std::setprecision(17) << v << "\n";
}

int fail_report(Session& ses, const std::string& command, const std::string& reason,
                const std::vector<std::pair<std::string, double>>& data) {
    json j;
    j["kind"] = "error-report";
    j["command"] = command;
    j["reason"] = reason;
    json d = json::object();
    for (const auto& [k, v] : data) d[k] = v;
    j["data"] = std::move(d);
    ses.output(j, ses.out_dir / "error-report.json");
    ses.finish();
    std::cerr << command << " failed: " << reason << "\n";
    return 2;
}

// ---------------------------------------------------------------- residual --

struct ResidualCfg {
    std::string contour;
    double omega = 0.0;
    int nodes = 0;
    double tol = -1.0;
};

int run_residual(const ResidualCfg& cfg, Session& ses) {
    const Contour c = load_contour(cfg.contour, cfg.nodes);
    ses.input(cfg.contour);
    const double sup = boundary_residual_sup(c, cfg.omega);
    print_value("residual sup-norm = ", sup);

    json j;
    j["kind"] = "residual-report";
    j["omega"] = cfg.omega;
    j["nodes"] = c.node_count();
    j["sup_norm"] = sup;
    if (cfg.tol >= 0.0) {
        j["tol"] = cfg.tol;
        j["pass"] = sup <= cfg.tol;
        ses.tol("residual", cfg.tol);
    }
    ses.output(j, ses.out_dir / "residual-report.json");
    ses.finish();
    return (cfg.tol >= 0.0 && sup > cfg.tol) ? 2 : 0;
}

// ------------------------------------------------------------------- solve --

struct SolveCfg {
    int m = 0;
    double omega = 0.0;
    double amp0 = 0.05;
    int modes = 10;
    int nodes = 512;
    double tol = 1e-10;
    int max_iter = 40;
    bool omega_free = false;
    double pin = std::numeric_limits<double>::quiet_NaN();
    std::string output;
};

int run_solve(const SolveCfg& cfg, Session& ses) {
    VStateProblem p;
    p.shape.symmetry = cfg.m;
    p.shape.base_radius = 1.0;
    p.shape.cosines.assign(static_cast<std::size_t>(cfg.modes), 0.0);
    p.shape.cosines[0] = cfg.amp0;
    p.omega = cfg.omega;
    p.omega_free = cfg.omega_free;
    p.amplitude_pin = std::isnan(cfg.pin) ? cfg.amp0 : cfg.pin;
    p.node_count = cfg.nodes;
    ses.tol("newton", cfg.tol);

    try {
        const VStateSolution sol = newton_solve(p, cfg.tol, cfg.max_iter);
        std::cout << "converged in " << sol.iterations << " iterations\n";
        print_value("omega = ", sol.omega);
        print_value("residual sup-norm = ", sol.residual_norm);
        const fs::path out =
            cfg.output.empty() ? ses.out_dir / "solution.json" : fs::path(cfg.output);
        ses.output(solution_to_json(sol), out);
        ses.finish();
        return 0;
    } catch (const SingularSystemError& e) {
        return fail_report(ses, "solve", e.what(), {{"sigma_ratio", e.sigma_ratio}});
    } catch (const SolverDivergenceError& e) {
        return fail_report(ses, "solve", e.what(),
                           {{"residual", e.residual},
                            {"iterations", static_cast<double>(e.iterations)}});
    }
}

// ------------------------------------------------------------------ branch --

struct BranchCfg {
    int m = 0;
    std::string amps = "0.02:0.2:0.02";
    int modes = 10;
    int nodes = 512;
    double tol = 1e-10;
};

int run_branch(const BranchCfg& cfg, Session& ses) {
    const auto amps = parse_values(cfg.amps);
    ses.tol("newton", cfg.tol);
    const Branch br = continuation(cfg.m, amps, cfg.modes, cfg.nodes, cfg.tol);
    for (const auto& s : br.solutions)
        std::cout << "s = " << std::setprecision(6) << s.branch_parameter
                  << "  omega = " << std::setprecision(17) << s.omega
                  << "  residual = " << s.residual_norm << "\n";
    if (br.aborted)
        std::cerr << "branch aborted at s = " << br.failed_amplitude << ": "
                  << br.abort_reason << "\n";
    ses.output(branch_to_json(br), ses.out_dir / "branch.json");
    ses.finish();
    return br.aborted ? 2 : 0;
}

// ------------------------------------------------------------- sigma-check --

struct SigmaCfg {
    std::string contour;
    std::string alpha = "critical";
    int samples = 10000;
    int nodes = 0;
};

int run_sigma(const SigmaCfg& cfg, Session& ses) {
    const Contour c = load_contour(cfg.contour, cfg.nodes);
    ses.input(cfg.contour);
    const double alpha = parse_alpha(cfg.alpha);
    const SigmaReport rep = classify(c, alpha, cfg.samples);
    ses.tol("tol_geom", rep.tol_geom);
    std::cout << "star-shaped: " << (rep.star_shaped.pass ? "pass" : "FAIL")
              << "  margin = " << std::setprecision(6) << rep.star_shaped.margin << "\n"
              << "sector:      " << (rep.sector.pass ? "pass" : "FAIL")
              << "  margin = " << rep.sector.margin << "\n"
              << "reflection:  " << (rep.reflection.pass ? "pass" : "FAIL")
              << "  margin = " << rep.reflection.margin << "\n"
              << "verdict: " << (rep.verdict ? "inside the class" : "outside the class")
              << "\n";
    ses.output(sigma_report_to_json(rep), ses.out_dir / "sigma-report.json");
    ses.finish();
    return rep.verdict ? 0 : 2;
}

// ------------------------------------------------------------------- probe --

struct ProbeCfg {
    std::string kind;
    std::string contour;
    double omega = 0.5;
    int nodes = 0;
    int samples = 10000;
    double collar = -1.0;
    double eps = 1e-10;
    double tmax = 3.0;
    double tstep = 0.05;
    double tol = -1.0;
    std::string lambdas = "0.1:2.0:0.1";
    int grid = 100;
    std::string radii = "0.25:3.0:0.25";
    int angles = 64;
    double h = 1e-3;
};

int run_probe(const ProbeCfg& cfg, Session& ses) {
    const Contour c = load_contour(cfg.contour, cfg.nodes);
    ses.input(cfg.contour);
    const PatchField field = make_patch_field(c, cfg.omega);
    const double collar = cfg.collar > 0.0 ? cfg.collar : default_collar(c);

    ProbeReport rep;
    if (cfg.kind == "phi-sign") {
        const auto inside = interior_points(c, cfg.samples, collar);
        const auto outside = exterior_points(c, cfg.samples, collar);
        rep = phi_sign_probe(field, inside, outside, cfg.eps);
        ses.tol("eps_strict", cfg.eps);
    } else if (cfg.kind == "g-mono") {
        std::vector<double> offsets;
        for (double t = 0.0; t <= cfg.tmax + 0.5 * cfg.tstep; t += cfg.tstep)
            offsets.push_back(t);
        rep = g_monotonicity_probe(field, offsets);
    } else if (cfg.kind == "normal-bound") {
        std::vector<double> offsets;
        for (double t = 0.0; t <= cfg.tmax + 0.5 * cfg.tstep; t += cfg.tstep)
            offsets.push_back(t);
        const double tol = cfg.tol >= 0.0 ? cfg.tol : 1e-9;
        rep = normal_derivative_bound_probe(field, offsets, tol);
        ses.tol("normal_bound", tol);
    } else if (cfg.kind == "moving-plane") {
        rep = moving_plane_probe(field, parse_values(cfg.lambdas), cfg.grid);
    } else if (cfg.kind == "radial") {
        const double tol = cfg.tol >= 0.0 ? cfg.tol : 1e-8;
        try {
            const double measure =
                radial_symmetry_measure(field, parse_values(cfg.radii), cfg.angles, tol);
            rep.name = "radial";
            rep.margin = measure;
            rep.pass = measure < tol;
            rep.samples = parse_values(cfg.radii).size() * static_cast<std::size_t>(cfg.angles);
            rep.details.emplace_back("tol", tol);
        } catch (const ContourError& e) {
            return fail_report(ses, "probe radial", e.what(), {});
        }
        ses.tol("radial", tol);
    } else if (cfg.kind == "half-omega") {
        const double tol = cfg.tol >= 0.0 ? cfg.tol : 1e-8;
        rep = half_omega_identity_probe(field, tol);
        ses.tol("half_omega", tol);
    } else if (cfg.kind == "laplacian") {
        const double tol = cfg.tol >= 0.0 ? cfg.tol : 1e-5;
        rep = laplacian_dichotomy_probe(field, cfg.samples, cfg.h, tol);
        ses.tol("laplacian", tol);
    } else {
        throw ContourError("unknown probe kind: " + cfg.kind);
    }

    std::cout << rep.name << ": " << (rep.pass ? "pass" : "FAIL")
              << "  margin = " << std::setprecision(17) << rep.margin << "\n";
    ses.output(probe_report_to_json(rep), ses.out_dir / "probe-report.json");
    ses.finish();
    return rep.pass ? 0 : 2;
}

// ------------------------------------------------------------------ evolve --

struct EvolveCfg {
    std::string contour;
    double omega = std::numeric_limits<double>::quiet_NaN();
    double tend = 1.0;
    int steps = 0;
    double dt = 1e-3;
    int renode = 20;
    double area_tol = 1e-12;
    int snapshots = 10;
    int nodes = 0;
};

int run_evolve(const EvolveCfg& cfg, Session& ses) {
    const Contour c0 = load_contour(cfg.contour, cfg.nodes);
    ses.input(cfg.contour);
    const int steps =
        cfg.steps > 0 ? cfg.steps : static_cast<int>(std::llround(cfg.tend / cfg.dt));
    if (steps <= 0) throw ContourError("no steps to take");
    TimeStepConfig tcfg;
    tcfg.dt = cfg.dt;
    tcfg.steps = steps;
    tcfg.renode_every = cfg.renode;
    tcfg.area_tol = cfg.area_tol;
    ses.tol("area", cfg.area_tol);

    const double area0 = c0.signed_area();
    const fs::path snapdir = ses.out_dir / "snapshots";
    fs::create_directories(snapdir);
    const fs::path csv_path = ses.out_dir / "evolution.csv";
    std::ofstream csv(csv_path);
    csv << "step,time,area,area_drift,perimeter\n";
    char row[256];
    auto write_row = [&](const EvolutionState& st) {
        std::snprintf(row, sizeof row, "%d,%.17g,%.17g,%.17g,%.17g\n", st.step_index,
                      st.time, st.contour.signed_area(),
                      st.contour.signed_area() - area0, st.contour.perimeter());
        csv << row;
    };
    json snaplist = json::array();
    auto snap = [&](const EvolutionState& st) {
        char name[40];
        std::snprintf(name, sizeof name, "snapshot-%06d.json", st.step_index);
        json j = contour_to_json(st.contour);
        j["time"] = st.time;
        j["step"] = st.step_index;
        ses.output(j, snapdir / name);
        snaplist.push_back((snapdir / name).string());
    };

    EvolutionState state{c0};
    write_row(state);
    snap(state);
    const int stride = std::max(1, steps / std::max(1, cfg.snapshots));
    double max_drift = 0.0;
    try {
        state = evolve(state, tcfg, [&](const EvolutionState& st) {
            max_drift = std::max(max_drift, std::abs(st.contour.signed_area() - area0));
            write_row(st);
            if (st.step_index % stride == 0 || st.step_index == steps) snap(st);
        });
    } catch (const EvolutionBreakdownError& e) {
        snap(e.last_valid);
        csv.close();
        ses.output_raw(csv_path);
        return fail_report(ses, "evolve", e.what(),
                           {{"step", static_cast<double>(e.last_valid.step_index)},
                            {"time", e.last_valid.time}});
    }
    csv.close();
    ses.output_raw(csv_path);

    json summary;
    summary["kind"] = "evolution-summary";
    summary["steps"] = steps;
    summary["dt"] = cfg.dt;
    summary["time"] = state.time;
    summary["area_initial"] = area0;
    summary["area_final"] = state.contour.signed_area();
    summary["max_area_drift"] = max_drift;
    summary["perimeter_final"] = state.contour.perimeter();
    if (!std::isnan(cfg.omega)) {
        const double err = rigid_rotation_error(c0, state.contour, cfg.omega, state.time);
        summary["rigid_rotation_error"] = err;
        print_value("rigid rotation error = ", err);
    }
    print_value("max area drift = ", max_drift);
    summary["snapshots"] = std::move(snaplist);
    summary["csv"] = csv_path.string();
    ses.output(summary, ses.out_dir / "evolution-summary.json");
    ses.finish();
    return 0;
}

// ------------------------------------------------------------------- field --

struct FieldCfg {
    std::string contour;
    double omega = 0.0;
    double xmin = std::numeric_limits<double>::quiet_NaN();
    double xmax = std::numeric_limits<double>::quiet_NaN();
    double ymin = std::numeric_limits<double>::quiet_NaN();
    double ymax = std::numeric_limits<double>::quiet_NaN();
    int nx = 64;
    int ny = 64;
    int nodes = 0;
    std::string output;
};

int run_field(const FieldCfg& cfg, Session& ses) {
    const Contour c = load_contour(cfg.contour, cfg.nodes);
    ses.input(cfg.contour);
    const PatchField field = make_patch_field(c, cfg.omega);
    const cplx center = c.barycenter_cached();
    const double r = 1.6 * outer_radius(c);
    const double xmin = std::isnan(cfg.xmin) ? center.real() - r : cfg.xmin;
    const double xmax = std::isnan(cfg.xmax) ? center.real() + r : cfg.xmax;
    const double ymin = std::isnan(cfg.ymin) ? center.imag() - r : cfg.ymin;
    const double ymax = std::isnan(cfg.ymax) ? center.imag() + r : cfg.ymax;
    if (!(xmax > xmin) || !(ymax > ymin) || cfg.nx < 2 || cfg.ny < 2)
        throw ContourError("bad field window");

    const fs::path out =
        cfg.output.empty() ? ses.out_dir / "field.csv" : fs::path(cfg.output);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    std::ofstream csv(out);
    csv << "x,y,psi,vx,vy,phi,re_C,im_C\n";

    const std::size_t total = static_cast<std::size_t>(cfg.nx) * cfg.ny;
    std::vector<std::array<double, 8>> rows(total);
    parallel_for(total, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const int i = static_cast<int>(idx) % cfg.nx;
            const int j = static_cast<int>(idx) / cfg.nx;
            const double x = xmin + (xmax - xmin) * i / (cfg.nx - 1);
            const double y = ymin + (ymax - ymin) * j / (cfg.ny - 1);
            const cplx z{x, y};
            const double psi = stream_function(c, z);
            const cplx v = velocity(c, z);
            const double phi = field.mu + 0.5 * field.omega * std::norm(z) - psi;
            const cplx cau = cauchy_transform(c, z);
            rows[idx] = {x, y, psi, v.real(), v.imag(), phi, cau.real(), cau.imag()};
        }
    });
    char line[512];
    for (const auto& row : rows) {
        std::snprintf(line, sizeof line,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", row[0], row[1],
                      row[2], row[3], row[4], row[5], row[6], row[7]);
        csv << line;
    }
    csv.close();
    ses.output_raw(out);
    ses.finish();
    return 0;
}

// -------------------------------------------------------- bifurcation-scan --

struct ScanCfg {
    int m = 0;
    std::string omega;
    int modes = 4;
    int nodes = 0;
};

int run_scan(const ScanCfg& cfg, Session& ses) {
    double lo, hi, step;
    {
        char c1, c2;
        std::istringstream in(cfg.omega);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
            !(step > 0.0))
            throw ContourError("expected lo:hi:step in '" + cfg.omega + "'");
    }
    const BifurcationScan scan = bifurcation_scan(cfg.m, lo, hi, step, cfg.modes, cfg.nodes);
    print_value("singular value minimum at omega = ", scan.estimate);
    print_value("expected (m-1)/(2m) = ", bifurcation_omega(cfg.m));
    ses.output(scan_to_json(scan, cfg.m), ses.out_dir / "bifurcation-scan.json");
    ses.finish();
    return 0;
}

} // namespace

int dispatch(int argc, char** argv) {
    CLI::App app{"numerical laboratory for uniformly rotating vortex patches"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    int threads = 0;

    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--out", out_dir, "output directory")->capture_default_str();
        sc->add_option("--threads", threads, "worker thread cap (0 = automatic)");
    };

    ResidualCfg rc;
    auto* sc_res = app.add_subcommand("residual", "boundary residual of a contour");
    sc_res->add_option("--contour", rc.contour, "contour JSON")->required()
        ->check(CLI::ExistingFile);
    sc_res->add_option("--omega", rc.omega, "angular velocity")->required();
    sc_res->add_option("--nodes", rc.nodes, "node count override");
    sc_res->add_option("--tol", rc.tol, "pass/fail threshold");
    add_common(sc_res);

    SolveCfg sv;
    auto* sc_solve = app.add_subcommand("solve", "Newton solve for a rotating patch");
    sc_solve->add_option("--m", sv.m, "fold symmetry")->required()->check(CLI::Range(2, 64));
    sc_solve->add_option("--omega", sv.omega, "angular velocity (initial guess if free)")
        ->required();
    sc_solve->add_option("--amp0", sv.amp0, "starting first-mode amplitude")
        ->capture_default_str();
    sc_solve->add_option("--modes", sv.modes, "cosine modes")->capture_default_str();
    sc_solve->add_option("--nodes", sv.nodes, "node count")->capture_default_str();
    sc_solve->add_option("--tol", sv.tol, "residual tolerance")->capture_default_str();
    sc_solve->add_option("--max-iter", sv.max_iter, "iteration cap")->capture_default_str();
    sc_solve->add_flag("--omega-free", sv.omega_free, "treat omega as an unknown");
    sc_solve->add_option("--pin", sv.pin, "pinned first amplitude (with --omega-free)");
    sc_solve->add_option("--output", sv.output, "solution path");
    add_common(sc_solve);

    BranchCfg bc;
    auto* sc_branch = app.add_subcommand("branch", "amplitude continuation from the disc");
    sc_branch->add_option("--m", bc.m, "fold symmetry")->required()->check(CLI::Range(2, 64));
    sc_branch->add_option("--amps", bc.amps, "amplitudes lo:hi:step or list")
        ->capture_default_str();
    sc_branch->add_option("--modes", bc.modes, "cosine modes")->capture_default_str();
    sc_branch->add_option("--nodes", bc.nodes, "node count")->capture_default_str();
    sc_branch->add_option("--tol", bc.tol, "residual tolerance")->capture_default_str();
    add_common(sc_branch);

    SigmaCfg sg;
    auto* sc_sigma = app.add_subcommand("sigma-check", "geometric class membership");
    sc_sigma->add_option("--contour", sg.contour, "contour JSON")->required()
        ->check(CLI::ExistingFile);
    sc_sigma->add_option("--alpha", sg.alpha, "aperture (radians, or 'critical')")
        ->capture_default_str();
    sc_sigma->add_option("--samples", sg.samples, "interior sample target")
        ->capture_default_str();
    sc_sigma->add_option("--nodes", sg.nodes, "node count override");
    add_common(sc_sigma);

    ProbeCfg pb;
    auto* sc_probe = app.add_subcommand("probe", "rigidity probes on a patch field");
    sc_probe->add_option("--kind", pb.kind, "phi-sign|g-mono|normal-bound|moving-plane|radial|half-omega|laplacian")
        ->required();
    sc_probe->add_option("--contour", pb.contour, "contour JSON")->required()
        ->check(CLI::ExistingFile);
    sc_probe->add_option("--omega", pb.omega, "angular velocity")->capture_default_str();
    sc_probe->add_option("--nodes", pb.nodes, "node count override");
    sc_probe->add_option("--samples", pb.samples, "sample target")->capture_default_str();
    sc_probe->add_option("--collar", pb.collar, "boundary collar width");
    sc_probe->add_option("--eps", pb.eps, "strictness slack")->capture_default_str();
    sc_probe->add_option("--tmax", pb.tmax, "largest normal offset")->capture_default_str();
    sc_probe->add_option("--tstep", pb.tstep, "normal offset spacing")->capture_default_str();
    sc_probe->add_option("--tol", pb.tol, "probe tolerance");
    sc_probe->add_option("--lambdas", pb.lambdas, "plane offsets lo:hi:step or list")
        ->capture_default_str();
    sc_probe->add_option("--grid", pb.grid, "moving-plane grid size")->capture_default_str();
    sc_probe->add_option("--radii", pb.radii, "circle radii lo:hi:step or list")
        ->capture_default_str();
    sc_probe->add_option("--angles", pb.angles, "angular samples per circle")
        ->capture_default_str();
    sc_probe->add_option("--fd", pb.h, "finite-difference step")->capture_default_str();
    add_common(sc_probe);

    EvolveCfg ev;
    auto* sc_evolve = app.add_subcommand("evolve", "contour dynamics time integration");
    sc_evolve->add_option("--contour", ev.contour, "contour JSON")->required()
        ->check(CLI::ExistingFile);
    sc_evolve->add_option("--omega", ev.omega, "reference rotation rate for diagnostics");
    sc_evolve->add_option("--tend", ev.tend, "final time")->capture_default_str();
    sc_evolve->add_option("--steps", ev.steps, "step count (overrides --tend)");
    sc_evolve->add_option("--dt", ev.dt, "time step")->capture_default_str();
    sc_evolve->add_option("--renode", ev.renode, "resample period (0 = never)")
        ->capture_default_str();
    sc_evolve->add_option("--area-tol", ev.area_tol, "area conservation tolerance")
        ->capture_default_str();
    sc_evolve->add_option("--snapshots", ev.snapshots, "snapshot count")
        ->capture_default_str();
    sc_evolve->add_option("--nodes", ev.nodes, "node count override");
    add_common(sc_evolve);

    FieldCfg fd;
    auto* sc_field = app.add_subcommand("field", "sample psi, velocity, phi, C on a grid");
    sc_field->add_option("--contour", fd.contour, "contour JSON")->required()
        ->check(CLI::ExistingFile);
    sc_field->add_option("--omega", fd.omega, "angular velocity")->required();
    sc_field->add_option("--xmin", fd.xmin, "window");
    sc_field->add_option("--xmax", fd.xmax, "window");
    sc_field->add_option("--ymin", fd.ymin, "window");
    sc_field->add_option("--ymax", fd.ymax, "window");
    sc_field->add_option("--nx", fd.nx, "grid columns")->capture_default_str();
    sc_field->add_option("--ny", fd.ny, "grid rows")->capture_default_str();
    sc_field->add_option("--nodes", fd.nodes, "node count override");
    sc_field->add_option("--output", fd.output, "CSV path");
    add_common(sc_field);

    ScanCfg sn;
    auto* sc_scan = app.add_subcommand("bifurcation-scan", "smallest singular value sweep");
    sc_scan->add_option("--m", sn.m, "fold symmetry")->required()->check(CLI::Range(2, 64));
    sc_scan->add_option("--omega", sn.omega, "sweep lo:hi:step")->required();
    sc_scan->add_option("--modes", sn.modes, "cosine modes")->capture_default_str();
    sc_scan->add_option("--nodes", sn.nodes, "node count")->capture_default_str();
    add_common(sc_scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    set_thread_limit(threads);
    Session ses;
    ses.manifest.command = join_args(argc, argv);
    ses.manifest.library = library_version();
    ses.out_dir = out_dir;
    std::filesystem::create_directories(ses.out_dir);

    try {
        if (sc_res->parsed()) return run_residual(rc, ses);
        if (sc_solve->parsed()) return run_solve(sv, ses);
        if (sc_branch->parsed()) return run_branch(bc, ses);
        if (sc_sigma->parsed()) return run_sigma(sg, ses);
        if (sc_probe->parsed()) return run_probe(pb, ses);
        if (sc_evolve->parsed()) return run_evolve(ev, ses);
        if (sc_field->parsed()) return run_field(fd, ses);
        if (sc_scan->parsed()) return run_scan(sn, ses);
    } catch (const ProbePreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ContourError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace vpatch
