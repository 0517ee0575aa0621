#include "genhyp/pattern.hpp"

#include <cmath>
#include <string>

#include "genhyp/coords.hpp"
#include "newton.hpp"

namespace genhyp::pattern {

namespace {

TriangleType sas_type(int eps, int delta)
{
    return TriangleType::of(eps, eps, delta);
}

void check_vectors(const CellSurface& surface, const Config& config, const std::vector<double>* r,
                   const std::vector<double>* per_face)
{
    if (static_cast<int>(config.theta.size()) != surface.edge_count())
        throw InputError("theta vector size does not match the edge count");
    if (r && static_cast<int>(r->size()) != surface.face_count())
        throw InputError("radius vector size does not match the face count");
    if (per_face && static_cast<int>(per_face->size()) != surface.face_count())
        throw InputError("per-face vector size does not match the face count");
}

// angle coordinate of a triangle angle
double a_of(const Config& config, double angle)
{
    return coords::a_from_theta(config.h, config.eps, angle);
}

}  // namespace

void validate_config(const CellSurface& surface, const Config& config)
{
    for (int x : {config.eps, config.delta})
        if (x != -1 && x != 0 && x != 1) throw InputError("type entries must be -1, 0 or 1");
    if (!std::isfinite(config.h)) throw InputError("h must be finite");
    check_vectors(surface, config, nullptr, nullptr);
    for (int e = 0; e < surface.edge_count(); ++e)
        if (!coords::in_I(config.delta, config.theta[e], /*open_at_pi=*/true))
            throw InputError("theta of edge " + surface.edge(e).id +
                             " outside the open interval I_delta");
}

Triangle quad_triangle(const CellSurface& surface, const Config& config,
                       const std::vector<double>& r, int edge)
{
    const auto& e = surface.edge(edge);
    try {
        return trig::solve_sas(sas_type(config.eps, config.delta), r[e.faces[0]], r[e.faces[1]],
                               config.theta[edge]);
    } catch (const RealizabilityError& err) {
        throw RealizabilityError("edge " + e.id + ": " + err.what());
    } catch (const InputError& err) {
        throw InputError("edge " + e.id + ": " + err.what());
    }
}

std::vector<double> curvature(const CellSurface& surface, const Config& config,
                              const std::vector<double>& r)
{
    validate_config(surface, config);
    check_vectors(surface, config, &r, nullptr);
    std::vector<double> k(surface.face_count(), 0.0);
    for (int e = 0; e < surface.edge_count(); ++e) {
        const Triangle tri = quad_triangle(surface, config, r, e);
        const auto& faces = surface.edge(e).faces;
        k[faces[0]] += 2.0 * a_of(config, tri.theta[1]);
        k[faces[1]] += 2.0 * a_of(config, tri.theta[0]);
    }
    return k;
}

namespace {

struct FState {
    double l1, l2;
    Triangle tri;
};

FState f_state(int eps, int delta, double h, double theta3, double w1, double w2)
{
    const int sigma = eps * delta;
    const double l1 = coords::l_from_w(h, sigma, w1);
    const double l2 = coords::l_from_w(h, sigma, w2);
    return {l1, l2, trig::solve_sas(sas_type(eps, delta), l1, l2, theta3)};
}

// Deterministic anchor: l = (c,c) with c the first of 1, 1.5, 1.5^2, ...
// realizable for theta3.
double diagonal_anchor(int eps, int delta, double theta3)
{
    for (double c = 1.0; c <= 80.0; c *= 1.5) {
        if (coords::d_membership(eps, delta, theta3, c, c)) return c;
    }
    throw RealizabilityError("no realizable diagonal anchor for this included angle");
}

// Integrate a_1 dw_2 + a_2 dw_1 along the straight segment between two
// w-points.
double segment_integral(int eps, int delta, double h, double theta3, const Eigen::Vector2d& from,
                        const Eigen::Vector2d& to)
{
    const Eigen::Vector2d d = to - from;
    if (d.norm() == 0.0) return 0.0;
    return coords::integrate(
        [&](double s) {
            const Eigen::Vector2d w = from + s * d;
            const FState st = f_state(eps, delta, h, theta3, w[0], w[1]);
            const double a1 = coords::a_from_theta(h, eps, st.tri.theta[0]);
            const double a2 = coords::a_from_theta(h, eps, st.tri.theta[1]);
            return a1 * d[1] + a2 * d[0];
        },
        0.0, 1.0, 1e-12);
}

}  // namespace

double f_energy(int eps, int delta, double h, double theta3, double w1, double w2, FPath path)
{
    const double anchor_l = diagonal_anchor(eps, delta, theta3);
    const double wb = coords::w_from_l(h, eps * delta, anchor_l);
    const Eigen::Vector2d base(wb, wb), target(w1, w2);

    const auto axis = [&](bool first_coordinate_first) {
        const Eigen::Vector2d mid =
            first_coordinate_first ? Eigen::Vector2d(w1, wb) : Eigen::Vector2d(wb, w2);
        return segment_integral(eps, delta, h, theta3, base, mid) +
               segment_integral(eps, delta, h, theta3, mid, target);
    };

    switch (path) {
        case FPath::axis: return axis(true);
        case FPath::axis_swapped: return axis(false);
        case FPath::diagonal: return segment_integral(eps, delta, h, theta3, base, target);
        case FPath::automatic: break;
    }
    try {
        return axis(true);
    } catch (const Error&) {
    }
    try {
        return axis(false);
    } catch (const Error&) {
    }
    try {
        return segment_integral(eps, delta, h, theta3, base, target);
    } catch (const Error&) {
    }
    throw RealizabilityError(
        "every integration path between the anchor and the requested point leaves the "
        "realizability domain");
}

Eigen::Vector2d f_gradient(int eps, int delta, double h, double theta3, double w1, double w2)
{
    const FState st = f_state(eps, delta, h, theta3, w1, w2);
    return {coords::a_from_theta(h, eps, st.tri.theta[1]),
            coords::a_from_theta(h, eps, st.tri.theta[0])};
}

Eigen::Matrix2d f_amatrix(int eps, int delta, double h, double theta3, double w1, double w2)
{
    const FState st = f_state(eps, delta, h, theta3, w1, w2);
    const int sigma = eps * delta;
    const double t1 = std::pow(trig::tau(sigma, st.l1), h);
    const double t2 = std::pow(trig::tau(sigma, st.l2), h);
    const double tp3 = trig::tau_prime(eps * eps, st.tri.len[2]);
    const double r1 = std::pow(trig::rho(eps, st.tri.theta[0]), -h);
    const double r2 = std::pow(trig::rho(eps, st.tri.theta[1]), -h);
    Eigen::Matrix2d a;
    a << t1 * tp3 * r2, t1 * eps * r1,
         t2 * eps * r2, t2 * tp3 * r1;
    return a;
}

Eigen::Matrix2d f_hessian(int eps, int delta, double h, double theta3, double w1, double w2)
{
    const FState st = f_state(eps, delta, h, theta3, w1, w2);
    const double det_l = trig::gram_lengths(sas_type(eps, delta), st.tri.len).determinant();
    if (det_l >= -1e-14)
        throw DegenerateError("degenerate pattern triangle (Gram determinant not negative)");
    const Eigen::Matrix2d a = f_amatrix(eps, delta, h, theta3, w1, w2);
    return -std::sqrt(-det_l) * a.inverse();
}

namespace {

std::vector<double> r_of_w(const Config& config, const Eigen::VectorXd& w)
{
    std::vector<double> r(w.size());
    for (int i = 0; i < w.size(); ++i)
        r[i] = coords::l_from_w(config.h, config.eps * config.delta, w[i]);
    return r;
}

Eigen::VectorXd w_of_r(const Config& config, const std::vector<double>& r)
{
    Eigen::VectorXd w(static_cast<int>(r.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        w[static_cast<int>(i)] = coords::w_from_l(config.h, config.eps * config.delta, r[i]);
    return w;
}

std::vector<double> feasible_start(const CellSurface& surface, const Config& config)
{
    for (double r0 = 1.0; r0 <= 80.0; r0 *= 1.5) {
        std::vector<double> r(surface.face_count(), r0);
        try {
            curvature(surface, config, r);
            return r;
        } catch (const RealizabilityError&) {
            continue;
        }
    }
    throw ConvergenceError("no feasible starting dual radius vector found");
}

Eigen::MatrixXd kh_jacobian(const CellSurface& surface, const Config& config,
                            const std::vector<double>& r)
{
    const int n = surface.face_count();
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int e = 0; e < surface.edge_count(); ++e) {
        const auto& faces = surface.edge(e).faces;
        const int sigma = config.eps * config.delta;
        const Eigen::Matrix2d block =
            2.0 * f_hessian(config.eps, config.delta, config.h, config.theta[e],
                            coords::w_from_l(config.h, sigma, r[faces[0]]),
                            coords::w_from_l(config.h, sigma, r[faces[1]]));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) j(faces[a], faces[b]) += block(a, b);
    }
    return j;
}

}  // namespace

SolveResult solve(const CellSurface& surface, const Config& config,
                  const std::vector<double>& target, const SolveOptions& options)
{
    validate_config(surface, config);
    check_vectors(surface, config, nullptr, &target);

    detail::NewtonProblem problem;
    problem.feasible = [&](const Eigen::VectorXd& w) {
        try {
            const std::vector<double> r = r_of_w(config, w);
            for (int e = 0; e < surface.edge_count(); ++e) {
                const auto& edge = surface.edge(e);
                if (!coords::d_membership(config.eps, config.delta, config.theta[e],
                                          r[edge.faces[0]], r[edge.faces[1]]))
                    return false;
            }
        } catch (const Error&) {
            return false;
        }
        return true;
    };
    problem.gradient = [&](const Eigen::VectorXd& w) {
        const std::vector<double> k = curvature(surface, config, r_of_w(config, w));
        Eigen::VectorXd g(w.size());
        for (int f = 0; f < w.size(); ++f) g[f] = k[f] - target[f];
        return g;
    };
    problem.hessian = [&](const Eigen::VectorXd& w) {
        return kh_jacobian(surface, config, r_of_w(config, w));
    };

    detail::NewtonOptions newton;
    newton.tol = options.tol;
    newton.max_iter = options.max_iter;
    newton.label = "pattern_solve";
    const detail::NewtonResult res =
        detail::maximize_concave(problem, w_of_r(config, feasible_start(surface, config)), newton);

    SolveResult out;
    out.r = r_of_w(config, res.x);
    out.iterations = res.iterations;
    out.residual = res.residual;
    return out;
}

std::vector<double> flow_velocity(const CellSurface& surface, const Config& config,
                                  const std::vector<double>& r, const std::vector<double>& target)
{
    const std::vector<double> k = curvature(surface, config, r);
    std::vector<double> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        v[i] = (k[i] - target[i]) *
               std::pow(trig::tau(config.eps * config.delta, r[i]), 1.0 - config.h);
    return v;
}

namespace {

Eigen::VectorXd flow_velocity_vec(const CellSurface& surface, const Config& config,
                                  const Eigen::VectorXd& r, const std::vector<double>& target)
{
    const std::vector<double> v =
        flow_velocity(surface, config, std::vector<double>(r.data(), r.data() + r.size()), target);
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<int>(v.size()));
}

}  // namespace

FlowResult flow(const CellSurface& surface, const Config& config, const std::vector<double>& r0,
                const std::vector<double>& target, const FlowOptions& options)
{
    validate_config(surface, config);
    check_vectors(surface, config, &r0, &target);
    if (!(options.dt > 0.0)) throw InputError("flow requires dt > 0");
    if (options.steps < 0) throw InputError("flow requires steps >= 0");

    const auto sample = [&](double t, const Eigen::VectorXd& r) {
        std::vector<double> rv(r.data(), r.data() + r.size());
        const std::vector<double> k = curvature(surface, config, rv);
        double norm2 = 0.0;
        for (int f = 0; f < surface.face_count(); ++f)
            norm2 += (k[f] - target[f]) * (k[f] - target[f]);
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
            DomainExitError err("pattern flow left the realizability domain at t = " +
                                std::to_string(t) + "; last valid state retained");
            err.with_detail(std::to_string(t));
            throw err;
        }
        out.trace.push_back(sample(t, r));
    }
    return out;
}

double potential_delta(const CellSurface& surface, const Config& config,
                       const std::vector<double>& r_from, const std::vector<double>& r_to,
                       const std::vector<double>& target)
{
    validate_config(surface, config);
    check_vectors(surface, config, &r_from, &target);
    check_vectors(surface, config, &r_to, nullptr);
    const Eigen::VectorXd w0 = w_of_r(config, r_from);
    const Eigen::VectorXd w1 = w_of_r(config, r_to);
    const Eigen::VectorXd dw = w1 - w0;

    static const double nodes[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                                    0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
    static const double weights[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                      0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                      0.1294849661688697};
    double total = 0.0;
    for (int q = 0; q < 7; ++q) {
        const double s = 0.5 * (nodes[q] + 1.0);
        const Eigen::VectorXd w = w0 + s * dw;
        const std::vector<double> k = curvature(surface, config, r_of_w(config, w));
        double inner = 0.0;
        for (int f = 0; f < surface.face_count(); ++f) inner += (k[f] - target[f]) * dw[f];
        total += 0.5 * weights[q] * inner;
    }
    return total;
}

}  // namespace genhyp::pattern
