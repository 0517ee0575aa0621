#include "genhyp/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "genhyp/coords.hpp"
#include "newton.hpp"

namespace genhyp::packing {

namespace {

constexpr double kPi = std::numbers::pi;

// Endpoint vertex indices of an edge, via its first gluing slot.
std::array<int, 2> edge_ends(const TriSurface& surface, int e)
{
    const auto& g = surface.gluing(e);
    const auto& corners = surface.triangle(g.tri[0]).corners;
    return {corners[(g.side[0] + 1) % 3], corners[(g.side[0] + 2) % 3]};
}

TriangleType sas_type(const Config& config)
{
    return TriangleType::of(config.eps, config.eps, config.delta);
}

TriangleType glued_type(const Config& config)
{
    return TriangleType::of(config.eps, config.eps, config.eps);
}

void check_vectors(const TriSurface& surface, const Config& config, const std::vector<double>* r,
                   const std::vector<double>* per_vertex)
{
    if (static_cast<int>(config.phi.size()) != surface.edge_count())
        throw InputError("phi vector size does not match the edge count");
    if (r && static_cast<int>(r->size()) != surface.vertex_count())
        throw InputError("radius vector size does not match the vertex count");
    if (per_vertex && static_cast<int>(per_vertex->size()) != surface.vertex_count())
        throw InputError("per-vertex vector size does not match the vertex count");
}

// SAS triangle over edge e: sides r(a), r(b) with the included weight.
Triangle edge_triangle(const TriSurface& surface, const Config& config,
                       const std::vector<double>& r, int e)
{
    const auto ends = edge_ends(surface, e);
    try {
        return trig::solve_sas(sas_type(config), r[ends[0]], r[ends[1]], config.phi[e]);
    } catch (const RealizabilityError& err) {
        throw RealizabilityError("edge " + surface.edge_id(e) + ": " + err.what());
    } catch (const InputError& err) {
        throw InputError("edge " + surface.edge_id(e) + ": " + err.what());
    }
}

Vec3 triangle_side_lengths(const TriSurface& surface, const Config& config,
                           const std::vector<double>& r, int tri)
{
    Vec3 l;
    for (int s = 0; s < 3; ++s) l[s] = edge_triangle(surface, config, r, surface.edge_of(tri, s)).len[2];
    return l;
}

}  // namespace

void validate_config(const TriSurface& surface, const Config& config, bool solver_mode)
{
    for (int x : {config.eps, config.delta})
        if (x != -1 && x != 0 && x != 1) throw InputError("type entries must be -1, 0 or 1");
    check_vectors(surface, config, nullptr, nullptr);
    for (int e = 0; e < surface.edge_count(); ++e)
        if (!coords::in_I(config.delta, config.phi[e]))
            throw InputError("weight of edge " + surface.edge_id(e) + " outside I_delta");
    if (solver_mode && config.eps == 1) {
        if (config.delta != 1)
            throw UnsupportedCaseError(
                "prescribed-curvature solving is not established for types (1,1,0) and (1,1,-1)");
        for (int e = 0; e < surface.edge_count(); ++e)
            if (config.phi[e] < kPi / 2.0)
                throw UnsupportedCaseError("(1,1) solving requires all weights in [pi/2, pi]; edge " +
                                           surface.edge_id(e) + " has " +
                                           std::to_string(config.phi[e]));
    }
}

std::vector<double> lengths(const TriSurface& surface, const Config& config,
                            const std::vector<double>& r)
{
    validate_config(surface, config, false);
    check_vectors(surface, config, &r, nullptr);
    std::vector<double> out(surface.edge_count());
    for (int e = 0; e < surface.edge_count(); ++e)
        out[e] = edge_triangle(surface, config, r, e).len[2];
    return out;
}

Vec3 triangle_angles(const TriSurface& surface, const Config& config, const std::vector<double>& r,
                     int tri)
{
    const Vec3 side = triangle_side_lengths(surface, config, r, tri);
    try {
        return trig::angles_from_lengths(glued_type(config), side);
    } catch (const Error& err) {
        throw RealizabilityError("triangle " + surface.triangle(tri).id +
                                 ": glued lengths admit no triangle (" + err.what() + ")");
    }
}

std::vector<double> curvature(const TriSurface& surface, const Config& config,
                              const std::vector<double>& r)
{
    validate_config(surface, config, false);
    check_vectors(surface, config, &r, nullptr);
    std::vector<double> k(surface.vertex_count(), 0.0);
    for (int t = 0; t < surface.triangle_count(); ++t) {
        const Vec3 theta = triangle_angles(surface, config, r, t);
        const auto& corners = surface.triangle(t).corners;
        for (int c = 0; c < 3; ++c) k[corners[c]] += theta[c];
    }
    return k;
}

std::vector<double> eps0_constant(const TriSurface& surface, const Config& config)
{
    validate_config(surface, config, false);
    if (config.eps != 0) throw InputError("eps0_constant requires eps = 0");
    std::vector<double> c(surface.vertex_count(), 0.0);
    for (int t = 0; t < surface.triangle_count(); ++t) {
        // theta_k = 2 rho(phi_k/2) / (rho(phi_i/2) rho(phi_j/2)) e^{-r_k},
        // phi_k the weight of the edge opposite corner k
        Vec3 rho_half;
        for (int s = 0; s < 3; ++s)
            rho_half[s] = trig::rho(config.delta, 0.5 * config.phi[surface.edge_of(t, s)]);
        const auto& corners = surface.triangle(t).corners;
        for (int s = 0; s < 3; ++s)
            c[corners[s]] += 2.0 * rho_half[s] / (rho_half[(s + 1) % 3] * rho_half[(s + 2) % 3]);
    }
    return c;
}

Eigen::Matrix3d triangle_jacobian(const TriSurface& surface, const Config& config,
                                  const std::vector<double>& r, int tri)
{
    validate_config(surface, config, true);
    check_vectors(surface, config, &r, nullptr);
    const auto& corners = surface.triangle(tri).corners;

    // d(theta)/d(l) of the glued triangle
    const Vec3 side = triangle_side_lengths(surface, config, r, tri);
    const Triangle glued = trig::solve_from_lengths(glued_type(config), side);
    const Eigen::Matrix3d theta_by_l = trig::dtheta_dl(glued);

    // d(l_s)/d(r_v): moving an endpoint of the SAS triangle over side s
    // stretches the third side by rho' of the angle at that endpoint.
    // In the SAS triangle, len[0] = r(ends[0]) is opposite corner 0, so the
    // angle at the ends[0] endpoint is theta[1] (and vice versa).
    Eigen::Matrix3d l_by_r = Eigen::Matrix3d::Zero();
    for (int s = 0; s < 3; ++s) {
        const int e = surface.edge_of(tri, s);
        const Triangle sas = edge_triangle(surface, config, r, e);
        const auto ends = edge_ends(surface, e);
        const int pa = (s + 1) % 3, pb = (s + 2) % 3;  // local corner slots of side s
        const double at_first = trig::rho_prime(config.eps, sas.theta[1]);
        const double at_second = trig::rho_prime(config.eps, sas.theta[0]);
        if (corners[pa] == ends[0]) {
            l_by_r(s, pa) += at_first;
            l_by_r(s, pb) += at_second;
        } else {
            l_by_r(s, pa) += at_second;
            l_by_r(s, pb) += at_first;
        }
    }

    Eigen::Matrix3d r_by_u = Eigen::Matrix3d::Zero();
    for (int c = 0; c < 3; ++c)
        r_by_u(c, c) = trig::tau(config.eps * config.delta, r[corners[c]]);

    return theta_by_l * l_by_r * r_by_u;
}

Eigen::MatrixXd hessian(const TriSurface& surface, const Config& config,
                        const std::vector<double>& r)
{
    const int n = surface.vertex_count();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int t = 0; t < surface.triangle_count(); ++t) {
        const Eigen::Matrix3d block = triangle_jacobian(surface, config, r, t);
        const auto& corners = surface.triangle(t).corners;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) h(corners[a], corners[b]) += block(a, b);
    }
    return h;
}

namespace {

// u-space feasibility: componentwise image intervals plus, for eps = -1,
// the per-edge constraints u_a + u_b > -phi(e).
struct UDomain {
    const TriSurface& surface;
    const Config& config;

    bool component_ok(double u) const
    {
        if (!(u < 0.0)) return false;
        if (config.eps * config.delta == -1 && !(u > -kPi / 2.0)) return false;
        return true;
    }

    double margin(const Eigen::VectorXd& u) const
    {
        double m = std::numeric_limits<double>::infinity();
        for (int v = 0; v < surface.vertex_count(); ++v) m = std::min(m, -u[v]);
        if (config.eps == -1) {
            for (int e = 0; e < surface.edge_count(); ++e) {
                const auto ends = edge_ends(surface, e);
                m = std::min(m, u[ends[0]] + u[ends[1]] + config.phi[e]);
            }
        }
        return m;
    }

    bool feasible(const Eigen::VectorXd& u) const
    {
        for (int v = 0; v < surface.vertex_count(); ++v)
            if (!component_ok(u[v])) return false;
        return margin(u) > 0.0;
    }
};

std::vector<double> r_of_u(const Config& config, const Eigen::VectorXd& u)
{
    std::vector<double> r(u.size());
    for (int i = 0; i < u.size(); ++i) r[i] = coords::r_from_u(config.eps * config.delta, u[i]);
    return r;
}

Eigen::VectorXd u_of_r(const Config& config, const std::vector<double>& r)
{
    Eigen::VectorXd u(static_cast<int>(r.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        u[static_cast<int>(i)] = coords::u_from_r(config.eps * config.delta, r[i]);
    return u;
}

// A strictly feasible starting radius vector (r = 1, grown if needed).
std::vector<double> feasible_start(const TriSurface& surface, const Config& config)
{
    for (double r0 = 1.0; r0 <= 64.0; r0 *= 2.0) {
        std::vector<double> r(surface.vertex_count(), r0);
        try {
            curvature(surface, config, r);
            return r;
        } catch (const RealizabilityError&) {
            continue;
        }
    }
    throw ConvergenceError("no feasible starting radius vector found");
}

}  // namespace

SolveResult solve(const TriSurface& surface, const Config& config,
                  const std::vector<double>& target, const SolveOptions& options)
{
    validate_config(surface, config, true);
    check_vectors(surface, config, nullptr, &target);

    if (config.eps == 0) {
        // K(v) = C(v) e^{-r(v)} solves in closed form per vertex.
        for (int v = 0; v < surface.vertex_count(); ++v)
            if (!(target[v] > 0.0))
                throw InfeasibleError("the eps=0 curvature image is the positive orthant; target at vertex " +
                                      surface.vertex_id(v) + " is not positive");
        const std::vector<double> c = eps0_constant(surface, config);
        SolveResult out;
        out.r.resize(surface.vertex_count());
        for (int v = 0; v < surface.vertex_count(); ++v) out.r[v] = std::log(c[v] / target[v]);
        out.iterations = 0;
        const std::vector<double> k = curvature(surface, config, out.r);
        out.residual = 0.0;
        for (int v = 0; v < surface.vertex_count(); ++v)
            out.residual = std::max(out.residual, std::abs(k[v] - target[v]));
        return out;
    }

    if (config.eps == -1) {
        for (int v = 0; v < surface.vertex_count(); ++v)
            if (!(target[v] > 0.0))
                throw InfeasibleError("the eps=-1 curvature image is the positive orthant; target at vertex " +
                                      surface.vertex_id(v) + " is not positive");
    }

    const UDomain domain{surface, config};
    detail::NewtonProblem problem;
    problem.feasible = [&](const Eigen::VectorXd& u) { return domain.feasible(u); };
    problem.boundary_margin = [&](const Eigen::VectorXd& u) { return domain.margin(u); };
    problem.gradient = [&](const Eigen::VectorXd& u) {
        const std::vector<double> k = curvature(surface, config, r_of_u(config, u));
        Eigen::VectorXd g(u.size());
        for (int v = 0; v < u.size(); ++v) g[v] = k[v] - target[v];
        return g;
    };
    problem.hessian = [&](const Eigen::VectorXd& u) {
        return hessian(surface, config, r_of_u(config, u));
    };

    detail::NewtonOptions newton;
    newton.tol = options.tol;
    newton.max_iter = options.max_iter;
    newton.label = "packing_solve";
    newton.infeasible_on_boundary = (config.eps == 1);
    const detail::NewtonResult res =
        detail::maximize_concave(problem, u_of_r(config, feasible_start(surface, config)), newton);

    SolveResult out;
    out.r = r_of_u(config, res.x);
    out.iterations = res.iterations;
    out.residual = res.residual;
    return out;
}

std::vector<double> flow_velocity(const TriSurface& surface, const Config& config,
                                  const std::vector<double>& r, const std::vector<double>& target)
{
    const std::vector<double> k = curvature(surface, config, r);
    std::vector<double> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        v[i] = (k[i] - target[i]) * trig::tau(config.eps * config.delta, r[i]);
    return v;
}

namespace {

Eigen::VectorXd flow_velocity_vec(const TriSurface& surface, const Config& config,
                                  const Eigen::VectorXd& r, const std::vector<double>& target)
{
    const std::vector<double> v =
        flow_velocity(surface, config, std::vector<double>(r.data(), r.data() + r.size()), target);
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<int>(v.size()));
}

}  // namespace

FlowResult flow(const TriSurface& surface, const Config& config, const std::vector<double>& r0,
                const std::vector<double>& target, const FlowOptions& options)
{
    validate_config(surface, config, true);
    check_vectors(surface, config, &r0, &target);
    if (!(options.dt > 0.0)) throw InputError("flow requires dt > 0");
    if (options.steps < 0) throw InputError("flow requires steps >= 0");

    const auto sample = [&](double t, const Eigen::VectorXd& r) {
        std::vector<double> rv(r.data(), r.data() + r.size());
        const std::vector<double> k = curvature(surface, config, rv);
        double norm2 = 0.0;
        for (int v = 0; v < surface.vertex_count(); ++v)
            norm2 += (k[v] - target[v]) * (k[v] - target[v]);
        return FlowSample{t, std::move(rv), k, std::sqrt(norm2)};
    };

    Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(r0.data(), static_cast<int>(r0.size()));
    FlowResult out;
    out.trace.push_back(sample(0.0, r));

    double t = 0.0;
    for (int step = 0; step < options.steps; ++step) {
        double dt = options.dt;
        bool advanced = false;
        for (int attempt = 0; attempt <= options.max_halvings; ++attempt) {
            try {
                const Eigen::VectorXd k1 = flow_velocity_vec(surface, config, r, target);
                const Eigen::VectorXd k2 = flow_velocity_vec(surface, config, r + 0.5 * dt * k1, target);
                const Eigen::VectorXd k3 = flow_velocity_vec(surface, config, r + 0.5 * dt * k2, target);
                const Eigen::VectorXd k4 = flow_velocity_vec(surface, config, r + dt * k3, target);
                const Eigen::VectorXd next = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                // the end state must itself be evaluable
                flow_velocity_vec(surface, config, next, target);
                r = next;
                t += dt;
                advanced = true;
                break;
            } catch (const Error&) {
                dt *= 0.5;
            }
        }
        if (!advanced) {
            DomainExitError err("flow left the packing domain at t = " + std::to_string(t) +
                                " (step halving exhausted); last valid state retained");
            err.with_detail(std::to_string(t));
            throw err;
        }
        out.trace.push_back(sample(t, r));
    }
    return out;
}

double potential_delta(const TriSurface& surface, const Config& config,
                       const std::vector<double>& r_from, const std::vector<double>& r_to,
                       const std::vector<double>& target)
{
    validate_config(surface, config, true);
    check_vectors(surface, config, &r_from, &target);
    check_vectors(surface, config, &r_to, nullptr);
    const Eigen::VectorXd u0 = u_of_r(config, r_from);
    const Eigen::VectorXd u1 = u_of_r(config, r_to);
    const Eigen::VectorXd du = u1 - u0;

    // Gauss-Legendre 7 on the straight segment (the u-domain is convex).
    static const double nodes[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                                    0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
    static const double weights[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                      0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                      0.1294849661688697};
    double total = 0.0;
    for (int q = 0; q < 7; ++q) {
        const double s = 0.5 * (nodes[q] + 1.0);
        const Eigen::VectorXd u = u0 + s * du;
        const std::vector<double> k = curvature(surface, config, r_of_u(config, u));
        double inner = 0.0;
        for (int v = 0; v < surface.vertex_count(); ++v) inner += (k[v] - target[v]) * du[v];
        total += 0.5 * weights[q] * inner;
    }
    return total;
}

double limit_decay(int delta, const Vec3& phi, double r_i, double r_j, double R)
{
    const TriangleType sas = TriangleType::of(-1, -1, delta);
    const double l_k = trig::solve_sas(sas, r_i, r_j, phi[2]).len[2];
    const double l_i = trig::solve_sas(sas, r_j, R, phi[0]).len[2];
    const double l_j = trig::solve_sas(sas, R, r_i, phi[1]).len[2];
    const Vec3 theta = trig::angles_from_lengths(TriangleType::of(-1, -1, -1), {l_i, l_j, l_k});
    return theta[2];
}

double classic_curvature(double k_tilde)
{
    return 2.0 * kPi - k_tilde;
}

}  // namespace genhyp::packing
