#include "genhyp/penner.hpp"

#include <cmath>
#include <string>

#include "newton.hpp"

namespace genhyp::penner {

namespace {

void require_penner_surface(const TriSurface& surface)
{
    if (surface.punctured_euler() >= 0)
        throw InputError("ideal triangulation requires negative punctured Euler characteristic, got " +
                         std::to_string(surface.punctured_euler()));
}

Vec3 side_lengths(const TriSurface& surface, const std::vector<double>& lengths, int tri)
{
    return Vec3{lengths[surface.edge_of(tri, 0)], lengths[surface.edge_of(tri, 1)],
                lengths[surface.edge_of(tri, 2)]};
}

}  // namespace

Vec3 ideal_angles(const Vec3& l)
{
    Vec3 theta;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        theta[i] = 2.0 * std::exp(0.5 * (l[i] - l[j] - l[k]));
        if (!std::isfinite(theta[i]) || theta[i] <= 0.0)
            throw OverflowError("ideal angle exponent left the floating range at corner " +
                                std::to_string(i));
    }
    return theta;
}

Vec3 radius_invariants(const Vec3& l)
{
    const Vec3 theta = ideal_angles(l);
    Vec3 x;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        x[i] = 0.5 * (theta[j] + theta[k] - theta[i]);
    }
    return x;
}

double triangle_energy(const Vec3& l)
{
    const Vec3 theta = ideal_angles(l);
    return 6.0 - (theta[0] + theta[1] + theta[2]);
}

Eigen::Matrix3d triangle_energy_hessian(const Vec3& l)
{
    // From d(theta_i) = theta_i (dl_i - dl_j - dl_k)/2:
    //   d x_i / d l_i = -(theta_1+theta_2+theta_3)/4,
    //   d x_i / d l_j = (theta_i+theta_j-theta_k)/4.
    const Vec3 theta = ideal_angles(l);
    const double sum = theta[0] + theta[1] + theta[2];
    Eigen::Matrix3d h;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                h(i, j) = -0.25 * sum;
            } else {
                const int k = 3 - i - j;
                h(i, j) = 0.25 * (theta[i] + theta[j] - theta[k]);
            }
        }
    }
    return h;
}

std::vector<double> psi_map(const TriSurface& surface, const std::vector<double>& lengths)
{
    require_penner_surface(surface);
    if (static_cast<int>(lengths.size()) != surface.edge_count())
        throw InputError("length vector size does not match the edge count");
    std::vector<double> z(lengths.size(), 0.0);
    for (int t = 0; t < surface.triangle_count(); ++t) {
        const Vec3 x = radius_invariants(side_lengths(surface, lengths, t));
        for (int s = 0; s < 3; ++s) z[surface.edge_of(t, s)] += x[s];
    }
    return z;
}

PolytopeCheck polytope_check(const TriSurface& surface, const std::vector<double>& z,
                             std::size_t cycle_cap)
{
    if (static_cast<int>(z.size()) != surface.edge_count())
        throw InputError("z vector size does not match the edge count");
    PolytopeCheck result{true, std::numeric_limits<double>::infinity(), std::nullopt};
    for (const EdgeCycle& cycle : enumerate_edge_cycles(surface, 2, cycle_cap)) {
        double sum = 0.0;
        for (const auto& step : cycle.steps) sum += z[step.edge];
        if (sum < result.worst_sum) {
            result.worst_sum = sum;
            if (sum <= 0.0 && result.feasible) {
                result.feasible = false;
                result.witness = cycle;
            } else if (sum <= 0.0) {
                result.witness = cycle;
            }
        }
    }
    return result;
}

SolveResult psi_solve(const TriSurface& surface, const std::vector<double>& z,
                      const SolveOptions& options)
{
    require_penner_surface(surface);
    if (static_cast<int>(z.size()) != surface.edge_count())
        throw InputError("z vector size does not match the edge count");
    if (options.check_polytope) {
        const PolytopeCheck check = polytope_check(surface, z, options.cycle_cap);
        if (!check.feasible) {
            std::string ids, ids_json;
            for (int e : check.witness->edge_indices()) {
                ids += (ids.empty() ? "" : ",") + surface.edge_id(e);
                ids_json += (ids_json.empty() ? "" : ",") + ("\"" + surface.edge_id(e) + "\"");
            }
            InfeasibleError err("z violates the edge-cycle polytope: cycle [" + ids +
                                "] has sum " + std::to_string(check.worst_sum));
            err.with_detail("[" + ids_json + "]");
            throw err;
        }
    }

    const int n = surface.edge_count();
    detail::NewtonProblem problem;
    problem.gradient = [&](const Eigen::VectorXd& l) {
        std::vector<double> lengths(l.data(), l.data() + n);
        const std::vector<double> psi = psi_map(surface, lengths);
        Eigen::VectorXd g(n);
        for (int e = 0; e < n; ++e) g[e] = psi[e] - z[e];
        return g;
    };
    problem.hessian = [&](const Eigen::VectorXd& l) {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        for (int t = 0; t < surface.triangle_count(); ++t) {
            Vec3 side{l[surface.edge_of(t, 0)], l[surface.edge_of(t, 1)], l[surface.edge_of(t, 2)]};
            const Eigen::Matrix3d block = triangle_energy_hessian(side);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) h(surface.edge_of(t, a), surface.edge_of(t, b)) += block(a, b);
        }
        return h;
    };

    detail::NewtonOptions newton;
    newton.tol = options.tol;
    newton.max_iter = options.max_iter;
    newton.label = "psi_solve";
    const detail::NewtonResult res =
        detail::maximize_concave(problem, Eigen::VectorXd::Zero(n), newton);

    SolveResult out;
    out.lengths.assign(res.x.data(), res.x.data() + n);
    out.iterations = res.iterations;
    out.residual = res.residual;
    return out;
}

std::pair<double, double> edge_cycle_sum_identity(const TriSurface& surface,
                                                  const std::vector<double>& lengths,
                                                  const EdgeCycle& cycle)
{
    const std::vector<double> psi = psi_map(surface, lengths);
    double lhs = 0.0;
    for (const auto& step : cycle.steps) lhs += psi[step.edge];
    double rhs = 0.0;
    for (const auto& step : cycle.steps) {
        // the angle of this triangle adjacent to both visited sides is the
        // corner off both of them
        const int corner = 3 - step.slot_in - step.slot_out;
        rhs += ideal_angles(side_lengths(surface, lengths, step.tri))[corner];
    }
    return {lhs, rhs};
}

}  // namespace genhyp::penner
