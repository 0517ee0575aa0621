#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "genhyp/surface.hpp"
#include "genhyp/trig.hpp"

namespace genhyp::penner {

/// Angles of a decorated ideal triangle with edge lengths l:
/// theta_i = 2 exp((l_i - l_j - l_k)/2). Throws OverflowError when an
/// exponent leaves the floating range.
Vec3 ideal_angles(const Vec3& l);

/// Radius invariants x_i = (theta_j + theta_k - theta_i)/2.
Vec3 radius_invariants(const Vec3& l);

/// W(l) = integral of sum x_i dl_i from 0 (closed form 6 - sum theta_i);
/// grad W = radius_invariants, Hessian symmetric negative definite.
double triangle_energy(const Vec3& l);
Eigen::Matrix3d triangle_energy_hessian(const Vec3& l);

/// Per-edge sum of the two incident radius invariants (a triangle incident
/// twice contributes twice). Lengths indexed by edge.
std::vector<double> psi_map(const TriSurface& surface, const std::vector<double>& lengths);

struct PolytopeCheck {
    bool feasible;
    double worst_sum;
    std::optional<EdgeCycle> witness;  // a violating cycle when infeasible
};

/// Feasibility of z: every enumerated edge-cycle sum must be positive.
PolytopeCheck polytope_check(const TriSurface& surface, const std::vector<double>& z,
                             std::size_t cycle_cap = 1000000);

struct SolveOptions {
    double tol = 1e-10;      // on the sup-norm of psi(l) - z
    int max_iter = 50;
    bool check_polytope = true;
    std::size_t cycle_cap = 1000000;
};

struct SolveResult {
    std::vector<double> lengths;
    int iterations;
    double residual;
};

/// Invert the edge-invariant map: the unique l with psi(l) = z, by damped
/// Newton on the strictly concave energy sum_t W - <z,l>.
SolveResult psi_solve(const TriSurface& surface, const std::vector<double>& z,
                      const SolveOptions& options = {});

/// Both sides of the edge-cycle identity: (sum of psi over the cycle's
/// edges, sum of the cycle angles a_i); equal for any metric.
std::pair<double, double> edge_cycle_sum_identity(const TriSurface& surface,
                                                  const std::vector<double>& lengths,
                                                  const EdgeCycle& cycle);

}  // namespace genhyp::penner
