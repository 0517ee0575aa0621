// genhyp command-line tool. All numerics go through the extern-C library
// API in genhyp/genhyp.h; this translation unit only parses flags, moves
// files around and formats reports.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "genhyp/genhyp.h"

namespace {

using Json = nlohmann::ordered_json;

// exit codes: 0 ok, 1 usage/verification failure, 2 domain-type errors,
// 3 non-convergence
int exit_code_of(genhyp_status status)
{
    switch (status) {
        case GENHYP_OK: return 0;
        case GENHYP_ERR_INPUT:
        case GENHYP_ERR_PARSE:
        case GENHYP_ERR_VALIDATION: return 1;
        case GENHYP_ERR_CONVERGENCE: return 3;
        default: return 2;
    }
}

[[noreturn]] void fail(genhyp_status status)
{
    std::cerr << "error (" << genhyp_status_name(status) << "): " << genhyp_last_error() << "\n";
    const std::string detail = genhyp_last_error_detail();
    if (!detail.empty()) std::cerr << "detail: " << detail << "\n";
    std::exit(exit_code_of(status));
}

void check(genhyp_status status)
{
    if (status != GENHYP_OK) fail(status);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(1);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(1);
    }
    out << text;
}

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { genhyp_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct TriSurfaceHandle {
    genhyp_surface* ptr = nullptr;
    ~TriSurfaceHandle() { genhyp_surface_free(ptr); }
};

struct CellSurfaceHandle {
    genhyp_cell_surface* ptr = nullptr;
    ~CellSurfaceHandle() { genhyp_cell_surface_free(ptr); }
};

std::vector<int> parse_type_triple(const std::string& text)
{
    int e[3];
    char c1, c2;
    std::stringstream is(text);
    if (!(is >> e[0] >> c1 >> e[1] >> c2 >> e[2]) || c1 != ',' || c2 != ',') {
        std::cerr << "error: cannot parse --type '" << text << "' (expected e1,e2,e3)\n";
        std::exit(1);
    }
    return {e[0], e[1], e[2]};
}

std::vector<double> parse_value_list(const std::string& text, std::size_t expected)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.size() != expected) {
        std::cerr << "error: expected " << expected << " comma-separated values, got " << out.size()
                  << "\n";
        std::exit(1);
    }
    return out;
}

Json triangle_json(const genhyp_triangle& tri)
{
    Json doc;
    doc["type"] = {tri.eps[0], tri.eps[1], tri.eps[2]};
    doc["angles"] = {tri.theta[0], tri.theta[1], tri.theta[2]};
    doc["lengths"] = {tri.len[0], tri.len[1], tri.len[2]};
    return doc;
}

Json value_map_json(const std::vector<std::string>& ids, const std::vector<double>& values)
{
    Json map;
    for (std::size_t i = 0; i < ids.size(); ++i) map[ids[i]] = values[i];
    return map;
}

std::vector<std::string> tri_vertex_ids(const genhyp_surface* s)
{
    std::vector<std::string> ids;
    for (int v = 0; v < genhyp_surface_vertex_count(s); ++v)
        ids.push_back(genhyp_surface_vertex_id(s, v));
    return ids;
}

std::vector<std::string> tri_edge_ids(const genhyp_surface* s)
{
    std::vector<std::string> ids;
    for (int e = 0; e < genhyp_surface_edge_count(s); ++e)
        ids.push_back(genhyp_surface_edge_id(s, e));
    return ids;
}

std::vector<std::string> cell_face_ids(const genhyp_cell_surface* s)
{
    std::vector<std::string> ids;
    for (int f = 0; f < genhyp_cell_surface_face_count(s); ++f)
        ids.push_back(genhyp_cell_surface_face_id(s, f));
    return ids;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string types = "all";
    int samples = 1000;
    unsigned long long seed = 7;
    double tol = 1e-9;
    std::string json_path;
};

int run_verify(const VerifyArgs& args)
{
    int pass = 0;
    OwnedString report;
    check(genhyp_verify_laws(args.types.c_str(), args.samples, args.seed, args.tol, &pass,
                             &report.ptr));
    if (!args.json_path.empty()) write_output(args.json_path, report.str());
    const Json doc = Json::parse(report.str());
    std::cout << (pass ? "PASS" : "FAIL") << " verify-laws: max error " << doc["max_error"]
              << " (tol " << args.tol << "), max finite-difference error " << doc["max_fd_error"]
              << "\n";
    return pass ? 0 : 1;
}

struct TriangleArgs {
    std::string type;
    std::string given = "angles";
    std::string values;
    std::string out;
};

int run_triangle(const TriangleArgs& args)
{
    const std::vector<int> eps = parse_type_triple(args.type);
    const std::vector<double> v = parse_value_list(args.values, 3);
    genhyp_triangle tri{};
    const int e[3] = {eps[0], eps[1], eps[2]};
    if (args.given == "angles")
        check(genhyp_triangle_from_angles(e, v.data(), &tri));
    else if (args.given == "lengths")
        check(genhyp_triangle_from_lengths(e, v.data(), &tri));
    else if (args.given == "sas")
        check(genhyp_triangle_sas(e, v[0], v[1], v[2], &tri));
    else {
        std::cerr << "error: --given must be angles, lengths or sas\n";
        return 1;
    }
    write_output(args.out, triangle_json(tri).dump(1) + "\n");
    return 0;
}

struct PennerArgs {
    std::string mode;
    std::string mesh;
    std::string lengths_path;
    std::string z_path;
    double tol = 1e-10;
    int max_iter = 50;
    std::string out;
};

int run_penner(const PennerArgs& args)
{
    TriSurfaceHandle surface;
    check(genhyp_surface_parse(read_file(args.mesh).c_str(), &surface.ptr));
    const int ne = genhyp_surface_edge_count(surface.ptr);
    const auto edge_ids = tri_edge_ids(surface.ptr);

    if (args.mode == "map") {
        if (args.lengths_path.empty()) {
            std::cerr << "error: penner map requires --lengths\n";
            return 1;
        }
        std::vector<double> l(ne), z(ne);
        check(genhyp_surface_edge_values(surface.ptr, read_file(args.lengths_path).c_str(),
                                         l.data()));
        check(genhyp_penner_map(surface.ptr, l.data(), z.data()));
        Json doc;
        doc["edge_invariants"] = value_map_json(edge_ids, z);
        write_output(args.out, doc.dump(1) + "\n");
        return 0;
    }
    if (args.z_path.empty()) {
        std::cerr << "error: penner " << args.mode << " requires --z\n";
        return 1;
    }
    std::vector<double> z(ne);
    check(genhyp_surface_edge_values(surface.ptr, read_file(args.z_path).c_str(), z.data()));

    if (args.mode == "check-polytope") {
        int feasible = 0;
        OwnedString witness;
        check(genhyp_penner_check(surface.ptr, z.data(), &feasible, &witness.ptr));
        Json doc;
        doc["feasible"] = feasible != 0;
        if (!feasible) doc["witness_cycle"] = Json::parse(witness.str());
        write_output(args.out, doc.dump(1) + "\n");
        if (!feasible) {
            std::cerr << "infeasible: witness cycle " << witness.str() << "\n";
            return 2;
        }
        return 0;
    }
    if (args.mode == "solve") {
        std::vector<double> l(ne);
        int iterations = 0;
        double residual = 0.0;
        check(genhyp_penner_solve(surface.ptr, z.data(), args.tol, args.max_iter, l.data(),
                                  &iterations, &residual));
        Json doc;
        doc["lengths"] = value_map_json(edge_ids, l);
        doc["iterations"] = iterations;
        doc["residual"] = residual;
        write_output(args.out, doc.dump(1) + "\n");
        return 0;
    }
    std::cerr << "error: penner mode must be map, solve or check-polytope\n";
    return 1;
}

struct PackingArgs {
    std::string mode;
    std::string mesh;
    std::string phi_path;
    std::string r_path;
    std::string target_path;
    double tol = 1e-10;
    int max_iter = 50;
    double dt = 0.01;
    int steps = 1000;
    int eps = 0;
    int delta = 0;
    bool classic = false;
    std::string trace;
    std::string out;
};

int run_packing(const PackingArgs& args)
{
    TriSurfaceHandle surface;
    check(genhyp_surface_parse(read_file(args.mesh).c_str(), &surface.ptr));
    const int ne = genhyp_surface_edge_count(surface.ptr);
    const int nv = genhyp_surface_vertex_count(surface.ptr);
    const auto vertex_ids = tri_vertex_ids(surface.ptr);

    if (args.classic && !(args.eps == 1 && args.delta == 1)) {
        std::cerr << "error: --classic is only valid for the (1,1) packing\n";
        return 1;
    }
    if (args.phi_path.empty()) {
        std::cerr << "error: packing requires --phi\n";
        return 1;
    }
    std::vector<double> phi(ne);
    check(genhyp_surface_edge_values(surface.ptr, read_file(args.phi_path).c_str(), phi.data()));

    const auto load_vertex = [&](const std::string& path, const char* what) {
        if (path.empty()) {
            std::cerr << "error: packing " << args.mode << " requires --" << what << "\n";
            std::exit(1);
        }
        std::vector<double> v(nv);
        check(genhyp_surface_vertex_values(surface.ptr, read_file(path).c_str(), v.data()));
        return v;
    };
    const auto to_report_curvature = [&](std::vector<double> k) {
        if (args.classic)
            for (double& x : k) x = 2.0 * std::numbers::pi - x;
        return k;
    };

    if (args.mode == "curvature") {
        const std::vector<double> r = load_vertex(args.r_path, "r");
        std::vector<double> k(nv);
        check(genhyp_packing_curvature(surface.ptr, args.eps, args.delta, phi.data(), r.data(),
                                       k.data()));
        Json doc;
        doc[args.classic ? "classic_curvature" : "curvature"] =
            value_map_json(vertex_ids, to_report_curvature(k));
        write_output(args.out, doc.dump(1) + "\n");
        return 0;
    }
    if (args.mode == "solve") {
        std::vector<double> target = load_vertex(args.target_path, "target");
        if (args.classic)
            for (double& x : target) x = 2.0 * std::numbers::pi - x;
        std::vector<double> r(nv);
        int iterations = 0;
        double residual = 0.0;
        check(genhyp_packing_solve(surface.ptr, args.eps, args.delta, phi.data(), target.data(),
                                   args.tol, args.max_iter, r.data(), &iterations, &residual));
        Json doc;
        doc["radii"] = value_map_json(vertex_ids, r);
        doc["iterations"] = iterations;
        doc["residual"] = residual;
        write_output(args.out, doc.dump(1) + "\n");
        return 0;
    }
    if (args.mode == "flow") {
        const std::vector<double> r0 = load_vertex(args.r_path, "r");
        std::vector<double> target = load_vertex(args.target_path, "target");
        if (args.classic)
            for (double& x : target) x = 2.0 * std::numbers::pi - x;
        std::vector<double> r(nv);
        OwnedString trace;
        check(genhyp_packing_flow(surface.ptr, args.eps, args.delta, phi.data(), r0.data(),
                                  target.data(), args.dt, args.steps, r.data(),
                                  args.trace.empty() ? nullptr : &trace.ptr));
        if (!args.trace.empty()) write_output(args.trace, trace.str());
        std::vector<double> k(nv);
        check(genhyp_packing_curvature(surface.ptr, args.eps, args.delta, phi.data(), r.data(),
                                       k.data()));
        Json doc;
        doc["radii"] = value_map_json(vertex_ids, r);
        doc[args.classic ? "classic_curvature" : "curvature"] =
            value_map_json(vertex_ids, to_report_curvature(k));
        write_output(args.out, doc.dump(1) + "\n");
        return 0;
    }
    std::cerr << "error: packing mode must be curvature, solve or flow\n";
    return 1;
}

struct PatternArgs {
    std::string mode;
    std::string mesh;
    std::string theta_path;
    std::string r_path;
    std::string target_path;
    double h = 0.0;
    double tol = 1e-10;
    int max_iter = 50;
    double dt = 0.01;
    int steps = 1000;
    int eps = 0;
    int delta = 0;
    std::string trace;
    std::string out;
};

int run_pattern(const PatternArgs& args)
{
    CellSurfaceHandle surface;
    check(genhyp_cell_surface_parse(read_file(args.mesh).c_str(), &surface.ptr));
    const int ne = genhyp_cell_surface_edge_count(surface.ptr);
    const int nf = genhyp_cell_surface_face_count(surface.ptr);
    const auto face_ids = cell_face_ids(surface.ptr);

    if (args.theta_path.empty()) {
        std::cerr << "error: pattern requires --theta\n";
        return 1;
    }
    std::vector<double> theta(ne);
    check(genhyp_cell_surface_edge_values(surface.ptr, read_file(args.theta_path).c_str(),
                                          theta.data()));

    const auto load_face = [&](const std::string& path, const char* what) {
        if (path.empty()) {
            std::cerr << "error: pattern " << args.mode << " requires --" << what << "\n";
            std::exit(1);
        }
        std::vector<double> v(nf);
        check(genhyp_cell_surface_face_values(surface.ptr, read_file(path).c_str(), v.data()));
        return v;
    };

    if (args.mode == "curvature") {
        const std::vector<double> r = load_face(args.r_path, "r");
        std::vector<double> k(nf);
        check(genhyp_pattern_curvature(surface.ptr, args.eps, args.delta, args.h, theta.data(),
                                       r.data(), k.data()));
        Json doc;
        doc["curvature"] = value_map_json(face_ids, k);
        write_output(args.out, doc.dump(1) + "\n");
        return 0;
    }
    if (args.mode == "solve") {
        const std::vector<double> target = load_face(args.target_path, "target");
        std::vector<double> r(nf);
        int iterations = 0;
        double residual = 0.0;
        check(genhyp_pattern_solve(surface.ptr, args.eps, args.delta, args.h, theta.data(),
                                   target.data(), args.tol, args.max_iter, r.data(), &iterations,
                                   &residual));
        Json doc;
        doc["radii"] = value_map_json(face_ids, r);
        doc["iterations"] = iterations;
        doc["residual"] = residual;
        write_output(args.out, doc.dump(1) + "\n");
        return 0;
    }
    if (args.mode == "flow") {
        const std::vector<double> r0 = load_face(args.r_path, "r");
        const std::vector<double> target = load_face(args.target_path, "target");
        std::vector<double> r(nf);
        OwnedString trace;
        check(genhyp_pattern_flow(surface.ptr, args.eps, args.delta, args.h, theta.data(),
                                  r0.data(), target.data(), args.dt, args.steps, r.data(),
                                  args.trace.empty() ? nullptr : &trace.ptr));
        if (!args.trace.empty()) write_output(args.trace, trace.str());
        std::vector<double> k(nf);
        check(genhyp_pattern_curvature(surface.ptr, args.eps, args.delta, args.h, theta.data(),
                                       r.data(), k.data()));
        Json doc;
        doc["radii"] = value_map_json(face_ids, r);
        doc["curvature"] = value_map_json(face_ids, k);
        write_output(args.out, doc.dump(1) + "\n");
        return 0;
    }
    std::cerr << "error: pattern mode must be curvature, solve or flow\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"generalized hyperbolic triangle laws, Penner edge invariants, circle packings "
                 "and circle patterns"};
    // pattern takes --h (the curvature family parameter), so help keeps only
    // its long form
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify-laws", "run the cosine/sine-law identity suite");
    verify->add_option("--types", verify_args.types, "'all' or 'e1,e2,e3;...'");
    verify->add_option("--samples", verify_args.samples, "samples per type")->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_args.seed, "sampling seed");
    verify->add_option("--tol", verify_args.tol, "identity tolerance");
    verify->add_option("--json", verify_args.json_path, "write the JSON report here");

    TriangleArgs triangle_args;
    auto* triangle = app.add_subcommand("triangle", "solve one generalized triangle");
    triangle->add_option("--type", triangle_args.type, "vertex types e1,e2,e3")->required();
    triangle->add_option("--given", triangle_args.given, "angles | lengths | sas");
    triangle->add_option("--values", triangle_args.values, "three comma-separated values")->required();
    triangle->add_option("--out", triangle_args.out, "output path (default stdout)");

    PennerArgs penner_args;
    auto* penner = app.add_subcommand("penner", "edge invariants on an ideal triangulation");
    penner->add_option("mode", penner_args.mode, "map | solve | check-polytope")->required();
    penner->add_option("--mesh", penner_args.mesh, "genhyp-tri/1 file")->required();
    penner->add_option("--lengths", penner_args.lengths_path, "edge_weights file of lengths");
    penner->add_option("--z", penner_args.z_path, "edge_weights file of target invariants");
    penner->add_option("--tol", penner_args.tol, "solver tolerance");
    penner->add_option("--max-iter", penner_args.max_iter, "Newton iteration cap");
    penner->add_option("--out", penner_args.out, "output path (default stdout)");

    PackingArgs packing_args;
    auto* packing = app.add_subcommand("packing", "generalized circle packing");
    packing->add_option("mode", packing_args.mode, "curvature | solve | flow")->required();
    packing->add_option("--mesh", packing_args.mesh, "genhyp-tri/1 file")->required();
    packing->add_option("--eps", packing_args.eps, "vertex type")->required();
    packing->add_option("--delta", packing_args.delta, "weight type")->required();
    packing->add_option("--phi", packing_args.phi_path, "edge_weights file")->required();
    packing->add_option("--r", packing_args.r_path, "vertex_values file of radii");
    packing->add_option("--target", packing_args.target_path, "vertex_values file of curvatures");
    packing->add_option("--tol", packing_args.tol, "solver tolerance");
    packing->add_option("--max-iter", packing_args.max_iter, "Newton iteration cap");
    packing->add_option("--dt", packing_args.dt, "flow step");
    packing->add_option("--steps", packing_args.steps, "flow step count");
    packing->add_option("--trace", packing_args.trace, "CSV trace path");
    packing->add_flag("--classic", packing_args.classic, "report 2*pi - K (only for eps=delta=1)");
    packing->add_option("--out", packing_args.out, "output path (default stdout)");

    PatternArgs pattern_args;
    auto* pattern = app.add_subcommand("pattern", "generalized circle pattern");
    pattern->add_option("mode", pattern_args.mode, "curvature | solve | flow")->required();
    pattern->add_option("--mesh", pattern_args.mesh, "genhyp-cell/1 file")->required();
    pattern->add_option("--eps", pattern_args.eps, "vertex type")->required();
    pattern->add_option("--delta", pattern_args.delta, "angle type")->required();
    pattern->add_option("--h", pattern_args.h, "curvature family parameter");
    pattern->add_option("--theta", pattern_args.theta_path, "edge_weights file")->required();
    pattern->add_option("--r", pattern_args.r_path, "face_values file of dual radii");
    pattern->add_option("--target", pattern_args.target_path, "face_values file of curvatures");
    pattern->add_option("--tol", pattern_args.tol, "solver tolerance");
    pattern->add_option("--max-iter", pattern_args.max_iter, "Newton iteration cap");
    pattern->add_option("--dt", pattern_args.dt, "flow step");
    pattern->add_option("--steps", pattern_args.steps, "flow step count");
    pattern->add_option("--trace", pattern_args.trace, "CSV trace path");
    pattern->add_option("--out", pattern_args.out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) return run_verify(verify_args);
    if (triangle->parsed()) return run_triangle(triangle_args);
    if (penner->parsed()) return run_penner(penner_args);
    if (packing->parsed()) return run_packing(packing_args);
    if (pattern->parsed()) return run_pattern(pattern_args);
    return 1;
}
