#include "genhyp/genhyp.h"

#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "genhyp/coords.hpp"
#include "genhyp/packing.hpp"
#include "genhyp/pattern.hpp"
#include "genhyp/penner.hpp"
#include "genhyp/surface.hpp"
#include "genhyp/trig.hpp"
#include "genhyp/verify.hpp"

using genhyp::Error;
using genhyp::ErrorCode;

struct genhyp_surface {
    genhyp::TriSurface impl;
};

struct genhyp_cell_surface {
    genhyp::CellSurface impl;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_detail;

genhyp_status status_of(ErrorCode code)
{
    switch (code) {
        case ErrorCode::input: return GENHYP_ERR_INPUT;
        case ErrorCode::parse: return GENHYP_ERR_PARSE;
        case ErrorCode::validation: return GENHYP_ERR_VALIDATION;
        case ErrorCode::domain: return GENHYP_ERR_DOMAIN;
        case ErrorCode::degenerate: return GENHYP_ERR_DEGENERATE;
        case ErrorCode::realizability: return GENHYP_ERR_REALIZABILITY;
        case ErrorCode::infeasible: return GENHYP_ERR_INFEASIBLE;
        case ErrorCode::convergence: return GENHYP_ERR_CONVERGENCE;
        case ErrorCode::unsupported: return GENHYP_ERR_UNSUPPORTED;
        case ErrorCode::size: return GENHYP_ERR_SIZE;
        case ErrorCode::overflow: return GENHYP_ERR_OVERFLOW;
        case ErrorCode::quadrature: return GENHYP_ERR_QUADRATURE;
        case ErrorCode::domain_exit: return GENHYP_ERR_DOMAIN_EXIT;
    }
    return GENHYP_ERR_INTERNAL;
}

template <typename Fn>
genhyp_status guarded(Fn&& fn)
{
    g_last_error.clear();
    g_last_detail.clear();
    try {
        fn();
        return GENHYP_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        g_last_detail = e.detail();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GENHYP_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return GENHYP_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& text)
{
    char* out = static_cast<char*>(::operator new(text.size() + 1));
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

genhyp::TriangleType type_of(const int eps[3])
{
    return genhyp::TriangleType::of(eps[0], eps[1], eps[2]);
}

void fill_triangle(const genhyp::Triangle& tri, genhyp_triangle* out)
{
    for (int i = 0; i < 3; ++i) {
        out->eps[i] = tri.type.eps[i];
        out->theta[i] = tri.theta[i];
        out->len[i] = tri.len[i];
    }
}

// Deterministic shortest-round-trip formatting for CSV cells.
std::string format_double(double value)
{
    return nlohmann::ordered_json(value).dump();
}

template <typename Sample>
std::string trace_to_csv(const std::vector<Sample>& trace, const std::vector<std::string>& ids)
{
    std::ostringstream csv;
    csv << "t";
    for (const auto& id : ids) csv << "," << id;
    for (const auto& id : ids) csv << ",K_" << id;
    csv << ",gradnorm\n";
    for (const Sample& s : trace) {
        csv << format_double(s.t);
        for (double v : s.r) csv << "," << format_double(v);
        for (double v : s.curvature) csv << "," << format_double(v);
        csv << "," << format_double(s.grad_norm) << "\n";
    }
    return csv.str();
}

}  // namespace

extern "C" {

const char* genhyp_status_name(genhyp_status status)
{
    switch (status) {
        case GENHYP_OK: return "ok";
        case GENHYP_ERR_INPUT: return "input";
        case GENHYP_ERR_PARSE: return "parse";
        case GENHYP_ERR_VALIDATION: return "validation";
        case GENHYP_ERR_DOMAIN: return "domain";
        case GENHYP_ERR_DEGENERATE: return "degenerate";
        case GENHYP_ERR_REALIZABILITY: return "realizability";
        case GENHYP_ERR_INFEASIBLE: return "infeasible";
        case GENHYP_ERR_CONVERGENCE: return "convergence";
        case GENHYP_ERR_UNSUPPORTED: return "unsupported";
        case GENHYP_ERR_SIZE: return "size";
        case GENHYP_ERR_OVERFLOW: return "overflow";
        case GENHYP_ERR_QUADRATURE: return "quadrature";
        case GENHYP_ERR_DOMAIN_EXIT: return "domain-exit";
        case GENHYP_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* genhyp_last_error(void)
{
    return g_last_error.c_str();
}

const char* genhyp_last_error_detail(void)
{
    return g_last_detail.c_str();
}

const char* genhyp_version(void)
{
    return "1.0.0";
}

void genhyp_string_free(char* text)
{
    ::operator delete(text);
}

genhyp_status genhyp_triangle_from_angles(const int eps[3], const double theta[3],
                                          genhyp_triangle* out)
{
    return guarded([&] {
        fill_triangle(genhyp::trig::solve_from_angles(type_of(eps), {theta[0], theta[1], theta[2]}),
                      out);
    });
}

genhyp_status genhyp_triangle_from_lengths(const int eps[3], const double len[3],
                                           genhyp_triangle* out)
{
    return guarded([&] {
        fill_triangle(genhyp::trig::solve_from_lengths(type_of(eps), {len[0], len[1], len[2]}), out);
    });
}

genhyp_status genhyp_triangle_sas(const int eps[3], double l0, double l1, double included,
                                  genhyp_triangle* out)
{
    return guarded(
        [&] { fill_triangle(genhyp::trig::solve_sas(type_of(eps), l0, l1, included), out); });
}

genhyp_status genhyp_triangle_jacobians(const genhyp_triangle* tri, double dl_dtheta[9],
                                        double dtheta_dl[9])
{
    return guarded([&] {
        genhyp::Triangle t{type_of(tri->eps),
                           {tri->theta[0], tri->theta[1], tri->theta[2]},
                           {tri->len[0], tri->len[1], tri->len[2]}};
        if (dl_dtheta) {
            const Eigen::Matrix3d m = genhyp::trig::dl_dtheta(t);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) dl_dtheta[3 * i + j] = m(i, j);
        }
        if (dtheta_dl) {
            const Eigen::Matrix3d m = genhyp::trig::dtheta_dl(t);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) dtheta_dl[3 * i + j] = m(i, j);
        }
    });
}

genhyp_status genhyp_verify_laws(const char* types, int samples, unsigned long long seed,
                                 double tolerance, int* pass, char** json_report)
{
    return guarded([&] {
        genhyp::verify::Options options;
        options.samples = samples;
        options.jacobian_samples = std::min(samples, options.jacobian_samples);
        options.seed = seed;
        options.tolerance = tolerance;
        const genhyp::verify::Report report =
            genhyp::verify::run(genhyp::verify::parse_types(types ? types : "all"), options);
        if (pass) *pass = report.pass ? 1 : 0;
        if (json_report) *json_report = dup_string(report.to_json());
    });
}

genhyp_status genhyp_surface_parse(const char* json_text, genhyp_surface** out)
{
    return guarded([&] { *out = new genhyp_surface{genhyp::TriSurface::parse(json_text)}; });
}

void genhyp_surface_free(genhyp_surface* surface)
{
    delete surface;
}

int genhyp_surface_vertex_count(const genhyp_surface* surface)
{
    return surface->impl.vertex_count();
}

int genhyp_surface_edge_count(const genhyp_surface* surface)
{
    return surface->impl.edge_count();
}

int genhyp_surface_triangle_count(const genhyp_surface* surface)
{
    return surface->impl.triangle_count();
}

const char* genhyp_surface_vertex_id(const genhyp_surface* surface, int index)
{
    if (index < 0 || index >= surface->impl.vertex_count()) return nullptr;
    return surface->impl.vertex_id(index).c_str();
}

const char* genhyp_surface_edge_id(const genhyp_surface* surface, int index)
{
    if (index < 0 || index >= surface->impl.edge_count()) return nullptr;
    return surface->impl.edge_id(index).c_str();
}

genhyp_status genhyp_surface_serialize(const genhyp_surface* surface, char** json_text)
{
    return guarded([&] { *json_text = dup_string(surface->impl.serialize()); });
}

genhyp_status genhyp_cell_surface_parse(const char* json_text, genhyp_cell_surface** out)
{
    return guarded([&] { *out = new genhyp_cell_surface{genhyp::CellSurface::parse(json_text)}; });
}

void genhyp_cell_surface_free(genhyp_cell_surface* surface)
{
    delete surface;
}

int genhyp_cell_surface_vertex_count(const genhyp_cell_surface* surface)
{
    return surface->impl.vertex_count();
}

int genhyp_cell_surface_edge_count(const genhyp_cell_surface* surface)
{
    return surface->impl.edge_count();
}

int genhyp_cell_surface_face_count(const genhyp_cell_surface* surface)
{
    return surface->impl.face_count();
}

const char* genhyp_cell_surface_face_id(const genhyp_cell_surface* surface, int index)
{
    if (index < 0 || index >= surface->impl.face_count()) return nullptr;
    return surface->impl.face(index).id.c_str();
}

const char* genhyp_cell_surface_edge_id(const genhyp_cell_surface* surface, int index)
{
    if (index < 0 || index >= surface->impl.edge_count()) return nullptr;
    return surface->impl.edge(index).id.c_str();
}

genhyp_status genhyp_cell_surface_serialize(const genhyp_cell_surface* surface, char** json_text)
{
    return guarded([&] { *json_text = dup_string(surface->impl.serialize()); });
}

genhyp_status genhyp_surface_edge_values(const genhyp_surface* surface, const char* json_text,
                                         double* out)
{
    return guarded([&] {
        const auto values = genhyp::parse_edge_values(surface->impl, json_text);
        std::copy(values.begin(), values.end(), out);
    });
}

genhyp_status genhyp_surface_vertex_values(const genhyp_surface* surface, const char* json_text,
                                           double* out)
{
    return guarded([&] {
        const auto values = genhyp::parse_vertex_values(surface->impl, json_text);
        std::copy(values.begin(), values.end(), out);
    });
}

genhyp_status genhyp_cell_surface_edge_values(const genhyp_cell_surface* surface,
                                              const char* json_text, double* out)
{
    return guarded([&] {
        const auto values = genhyp::parse_edge_values(surface->impl, json_text);
        std::copy(values.begin(), values.end(), out);
    });
}

genhyp_status genhyp_cell_surface_face_values(const genhyp_cell_surface* surface,
                                              const char* json_text, double* out)
{
    return guarded([&] {
        const auto values = genhyp::parse_face_values(surface->impl, json_text);
        std::copy(values.begin(), values.end(), out);
    });
}

genhyp_status genhyp_penner_map(const genhyp_surface* surface, const double* lengths, double* z)
{
    return guarded([&] {
        const std::vector<double> l(lengths, lengths + surface->impl.edge_count());
        const auto psi = genhyp::penner::psi_map(surface->impl, l);
        std::copy(psi.begin(), psi.end(), z);
    });
}

genhyp_status genhyp_penner_check(const genhyp_surface* surface, const double* z, int* feasible,
                                  char** witness_json)
{
    return guarded([&] {
        const std::vector<double> zz(z, z + surface->impl.edge_count());
        const auto check = genhyp::penner::polytope_check(surface->impl, zz);
        if (feasible) *feasible = check.feasible ? 1 : 0;
        if (witness_json) {
            *witness_json = nullptr;
            if (!check.feasible) {
                nlohmann::ordered_json ids = nlohmann::ordered_json::array();
                for (int e : check.witness->edge_indices()) ids.push_back(surface->impl.edge_id(e));
                *witness_json = dup_string(ids.dump());
            }
        }
    });
}

genhyp_status genhyp_penner_solve(const genhyp_surface* surface, const double* z, double tol,
                                  int max_iter, double* lengths, int* iterations, double* residual)
{
    return guarded([&] {
        const std::vector<double> zz(z, z + surface->impl.edge_count());
        genhyp::penner::SolveOptions options;
        if (tol > 0.0) options.tol = tol;
        if (max_iter > 0) options.max_iter = max_iter;
        const auto result = genhyp::penner::psi_solve(surface->impl, zz, options);
        std::copy(result.lengths.begin(), result.lengths.end(), lengths);
        if (iterations) *iterations = result.iterations;
        if (residual) *residual = result.residual;
    });
}

genhyp_status genhyp_packing_curvature(const genhyp_surface* surface, int eps, int delta,
                                       const double* phi, const double* r, double* curvature)
{
    return guarded([&] {
        const genhyp::packing::Config config{
            eps, delta, std::vector<double>(phi, phi + surface->impl.edge_count())};
        const std::vector<double> rv(r, r + surface->impl.vertex_count());
        const auto k = genhyp::packing::curvature(surface->impl, config, rv);
        std::copy(k.begin(), k.end(), curvature);
    });
}

genhyp_status genhyp_packing_solve(const genhyp_surface* surface, int eps, int delta,
                                   const double* phi, const double* target, double tol,
                                   int max_iter, double* r, int* iterations, double* residual)
{
    return guarded([&] {
        const genhyp::packing::Config config{
            eps, delta, std::vector<double>(phi, phi + surface->impl.edge_count())};
        const std::vector<double> tv(target, target + surface->impl.vertex_count());
        genhyp::packing::SolveOptions options;
        if (tol > 0.0) options.tol = tol;
        if (max_iter > 0) options.max_iter = max_iter;
        const auto result = genhyp::packing::solve(surface->impl, config, tv, options);
        std::copy(result.r.begin(), result.r.end(), r);
        if (iterations) *iterations = result.iterations;
        if (residual) *residual = result.residual;
    });
}

genhyp_status genhyp_packing_flow(const genhyp_surface* surface, int eps, int delta,
                                  const double* phi, const double* r0, const double* target,
                                  double dt, int steps, double* r_final, char** trace_csv)
{
    return guarded([&] {
        const genhyp::packing::Config config{
            eps, delta, std::vector<double>(phi, phi + surface->impl.edge_count())};
        const int n = surface->impl.vertex_count();
        genhyp::packing::FlowOptions options;
        options.dt = dt;
        options.steps = steps;
        const auto result = genhyp::packing::flow(surface->impl, config,
                                                  std::vector<double>(r0, r0 + n),
                                                  std::vector<double>(target, target + n), options);
        const auto& last = result.trace.back();
        std::copy(last.r.begin(), last.r.end(), r_final);
        if (trace_csv) {
            std::vector<std::string> ids;
            for (int v = 0; v < n; ++v) ids.push_back(surface->impl.vertex_id(v));
            *trace_csv = dup_string(trace_to_csv(result.trace, ids));
        }
    });
}

genhyp_status genhyp_pattern_curvature(const genhyp_cell_surface* surface, int eps, int delta,
                                       double h, const double* theta, const double* r,
                                       double* curvature)
{
    return guarded([&] {
        const genhyp::pattern::Config config{
            eps, delta, h, std::vector<double>(theta, theta + surface->impl.edge_count())};
        const std::vector<double> rv(r, r + surface->impl.face_count());
        const auto k = genhyp::pattern::curvature(surface->impl, config, rv);
        std::copy(k.begin(), k.end(), curvature);
    });
}

genhyp_status genhyp_pattern_solve(const genhyp_cell_surface* surface, int eps, int delta,
                                   double h, const double* theta, const double* target, double tol,
                                   int max_iter, double* r, int* iterations, double* residual)
{
    return guarded([&] {
        const genhyp::pattern::Config config{
            eps, delta, h, std::vector<double>(theta, theta + surface->impl.edge_count())};
        const std::vector<double> tv(target, target + surface->impl.face_count());
        genhyp::pattern::SolveOptions options;
        if (tol > 0.0) options.tol = tol;
        if (max_iter > 0) options.max_iter = max_iter;
        const auto result = genhyp::pattern::solve(surface->impl, config, tv, options);
        std::copy(result.r.begin(), result.r.end(), r);
        if (iterations) *iterations = result.iterations;
        if (residual) *residual = result.residual;
    });
}

genhyp_status genhyp_pattern_flow(const genhyp_cell_surface* surface, int eps, int delta, double h,
                                  const double* theta, const double* r0, const double* target,
                                  double dt, int steps, double* r_final, char** trace_csv)
{
    return guarded([&] {
        const genhyp::pattern::Config config{
            eps, delta, h, std::vector<double>(theta, theta + surface->impl.edge_count())};
        const int n = surface->impl.face_count();
        genhyp::pattern::FlowOptions options;
        options.dt = dt;
        options.steps = steps;
        const auto result = genhyp::pattern::flow(surface->impl, config,
                                                  std::vector<double>(r0, r0 + n),
                                                  std::vector<double>(target, target + n), options);
        const auto& last = result.trace.back();
        std::copy(last.r.begin(), last.r.end(), r_final);
        if (trace_csv) {
            std::vector<std::string> ids;
            for (int f = 0; f < n; ++f) ids.push_back(surface->impl.face(f).id);
            *trace_csv = dup_string(trace_to_csv(result.trace, ids));
        }
    });
}

}  // extern "C"
