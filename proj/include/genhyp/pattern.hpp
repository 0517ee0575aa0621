#pragma once

#include <vector>

#include <Eigen/Dense>

#include "genhyp/surface.hpp"
#include "genhyp/trig.hpp"

namespace genhyp::pattern {

/// Generalized circle pattern of type (eps,eps,delta) on a cellular
/// surface: per-edge angles theta in the open interval I̊_delta, dual
/// radii live on faces, and curvature is the h-family K_h.
struct Config {
    int eps;
    int delta;
    double h;
    std::vector<double> theta;  // by edge index
};

void validate_config(const CellSurface& surface, const Config& config);

/// The SAS triangle over one edge: sides r(face), r(face_other) with the
/// included per-edge angle at the primal vertex. The angle at the first
/// face's dual vertex is theta[1], at the other theta[0].
Triangle quad_triangle(const CellSurface& surface, const Config& config,
                       const std::vector<double>& r, int edge);

/// K_h per dual vertex: sum over incident quadrilaterals of twice the
/// rho^h-integral of the angle at that dual vertex.
std::vector<double> curvature(const CellSurface& surface, const Config& config,
                              const std::vector<double>& r);

enum class FPath { automatic, axis, axis_swapped, diagonal };

/// Two-variable quadrilateral potential F (anchored at l = (1,1), moved
/// outward along the diagonal when that point is not realizable);
/// gradient (a_2, a_1), Hessian -sqrt(-det G_l) A^{-1}.
double f_energy(int eps, int delta, double h, double theta3, double w1, double w2,
                FPath path = FPath::automatic);
Eigen::Vector2d f_gradient(int eps, int delta, double h, double theta3, double w1, double w2);
Eigen::Matrix2d f_hessian(int eps, int delta, double h, double theta3, double w1, double w2);
/// The A matrix from the derivative computation (symmetric by the sine law).
Eigen::Matrix2d f_amatrix(int eps, int delta, double h, double theta3, double w1, double w2);

struct SolveOptions {
    double tol = 1e-10;  // sup-norm of K_h - target
    int max_iter = 50;
};

struct SolveResult {
    std::vector<double> r;  // by face index
    int iterations;
    double residual;
};

/// Prescribed-K_h solve by damped Newton in w-coordinates; a target
/// outside the (uncharacterized) image reports ConvergenceError.
SolveResult solve(const CellSurface& surface, const Config& config,
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
    double grad_norm;
};

struct FlowResult {
    std::vector<FlowSample> trace;
};

/// Right-hand side of the target flow,
/// dr_i/dt = (K_h,i - target_i) tau_{eps*delta}(r_i)^{1-h}
/// (dw_i/dt = K_h,i - target_i).
std::vector<double> flow_velocity(const CellSurface& surface, const Config& config,
                                  const std::vector<double>& r, const std::vector<double>& target);

/// The flow integrated with RK4, with domain-guarded steps.
FlowResult flow(const CellSurface& surface, const Config& config, const std::vector<double>& r0,
                const std::vector<double>& target, const FlowOptions& options);

/// Lyapunov difference V(r_to) - V(r_from) for V(w) = sum 2F - <target,w>.
double potential_delta(const CellSurface& surface, const Config& config,
                       const std::vector<double>& r_from, const std::vector<double>& r_to,
                       const std::vector<double>& target);

}  // namespace genhyp::pattern
