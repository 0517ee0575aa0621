#pragma once

#include <vector>

#include <Eigen/Dense>

#include "genhyp/surface.hpp"
#include "genhyp/trig.hpp"

namespace genhyp::packing {

/// Generalized circle packing of type (eps,eps,delta) with per-edge
/// intersection weights phi in I_delta.
struct Config {
    int eps;
    int delta;
    std::vector<double> phi;  // by edge index
};

/// Weights must lie in I_delta (pi allowed for delta=1); solver_mode
/// additionally restricts eps=1 to (1,1) with all phi in [pi/2,pi].
void validate_config(const TriSurface& surface, const Config& config, bool solver_mode);

/// Edge lengths from radii: per edge, the SAS third side with sides
/// r(endpoints) and the included weight. Throws RealizabilityError naming
/// the edge.
std::vector<double> lengths(const TriSurface& surface, const Config& config,
                            const std::vector<double>& r);

/// Angles of one glued triangle (indexed by corner); throws
/// RealizabilityError naming the triangle.
Vec3 triangle_angles(const TriSurface& surface, const Config& config,
                     const std::vector<double>& r, int tri);

/// Generalized discrete curvature: per vertex, the sum of incident angles.
std::vector<double> curvature(const TriSurface& surface, const Config& config,
                              const std::vector<double>& r);

/// eps = 0 only: the per-vertex constant with K(v) = C(v) e^{-r(v)}.
std::vector<double> eps0_constant(const TriSurface& surface, const Config& config);

/// Per-triangle Jacobian d(theta)/d(u) in the u-parametrization of the
/// radii; symmetric and negative definite for eps=-1 and for (1,1) with
/// weights in [pi/2,pi].
Eigen::Matrix3d triangle_jacobian(const TriSurface& surface, const Config& config,
                                  const std::vector<double>& r, int tri);

/// Assembled Hessian dK/du (vertex-indexed).
Eigen::MatrixXd hessian(const TriSurface& surface, const Config& config,
                        const std::vector<double>& r);

struct SolveOptions {
    double tol = 1e-10;  // sup-norm of K - target
    int max_iter = 50;
};

struct SolveResult {
    std::vector<double> r;
    int iterations;
    double residual;
};

/// Prescribed-curvature solve. eps=0 is closed form; eps=-1 and (1,1)
/// with phi in [pi/2,pi] run damped Newton in u-coordinates. (1,0) and
/// (1,-1) raise UnsupportedCaseError; an unreachable (1,1) target raises
/// InfeasibleError on boundary contact.
SolveResult solve(const TriSurface& surface, const Config& config,
                  const std::vector<double>& target, const SolveOptions& options = {});

struct FlowOptions {
    double dt = 0.01;
    int steps = 1000;
    int max_halvings = 30;
};

struct FlowSample {
    double t;
    std::vector<double> r;
    std::vector<double> curvature;
    double grad_norm;  // 2-norm of K - target
};

struct FlowResult {
    std::vector<FlowSample> trace;  // steps+1 samples including t = 0
};

/// Right-hand side of the target curvature flow,
/// dr_i/dt = (K_i - target_i) tau_{eps*delta}(r_i)  (du_i/dt = K_i - target_i).
std::vector<double> flow_velocity(const TriSurface& surface, const Config& config,
                                  const std::vector<double>& r, const std::vector<double>& target);

/// The flow integrated with RK4; a step that exits the packing domain is
/// retried with halved dt and reported as DomainExitError when halving
/// runs out.
FlowResult flow(const TriSurface& surface, const Config& config, const std::vector<double>& r0,
                const std::vector<double>& target, const FlowOptions& options);

/// Potential difference V(r_to) - V(r_from) of V(u) = W(u) - <target,u>,
/// integrated along the straight u-segment (the flow's Lyapunov value).
double potential_delta(const TriSurface& surface, const Config& config,
                       const std::vector<double>& r_from, const std::vector<double>& r_to,
                       const std::vector<double>& target);

/// eps = -1 decay probe: the angle at the third vertex of one packing
/// triangle with radii (r_i, r_j, R) and weights phi; tends to 0 as R
/// grows.
double limit_decay(int delta, const Vec3& phi, double r_i, double r_j, double R);

/// Thurston's classical curvature 2*pi - K for the (1,1,1) case.
double classic_curvature(double k_tilde);

}  // namespace genhyp::packing
