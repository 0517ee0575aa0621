#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "genhyp/error.hpp"

namespace genhyp::detail {

// Damped Newton ascent of a smooth strictly concave objective, driven by
// its gradient and (negative definite) Hessian. The merit is the gradient
// 2-norm: along the Newton direction d = -H^{-1} g one has
// d/dt ||g||^2 = 2 g^T H d = -2 g^T g < 0, so backtracking always makes
// progress while iterates stay strictly feasible.
struct NewtonProblem {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
    // strict feasibility of a candidate; default accepts everything
    std::function<bool(const Eigen::VectorXd&)> feasible;
    // distance to the nearest domain constraint (>= 0), used only to
    // classify line-search failures; default reports "far inside"
    std::function<double(const Eigen::VectorXd&)> boundary_margin;
};

struct NewtonOptions {
    double tol = 1e-10;  // sup-norm of the gradient
    int max_iter = 50;
    int max_halvings = 60;
    // when true, a stalled line search at boundary contact (margin below
    // 1e-13) reports InfeasibleError instead of ConvergenceError
    bool infeasible_on_boundary = false;
    std::string label = "newton";
};

struct NewtonResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual = 0.0;
};

inline NewtonResult maximize_concave(const NewtonProblem& problem, Eigen::VectorXd x,
                                     const NewtonOptions& options)
{
    const auto try_gradient = [&](const Eigen::VectorXd& at, Eigen::VectorXd& g) {
        if (problem.feasible && !problem.feasible(at)) return false;
        try {
            g = problem.gradient(at);
        } catch (const Error&) {
            return false;
        }
        return g.allFinite();
    };

    Eigen::VectorXd g;
    if (!try_gradient(x, g))
        throw InputError(options.label + ": initial point is not strictly feasible");

    NewtonResult result;
    for (int iter = 0; iter < options.max_iter; ++iter) {
        const double res = g.lpNorm<Eigen::Infinity>();
        if (res <= options.tol) {
            result.x = std::move(x);
            result.iterations = iter;
            result.residual = res;
            return result;
        }
        Eigen::MatrixXd h = problem.hessian(x);
        // -H is symmetric positive definite for these energies
        Eigen::LDLT<Eigen::MatrixXd> fact((-h).selfadjointView<Eigen::Lower>());
        Eigen::VectorXd d = fact.solve(g);
        if (!d.allFinite())
            throw ConvergenceError(options.label + ": Newton system solve produced non-finite step");

        const double merit = g.norm();
        double step = 1.0;
        bool accepted = false;
        Eigen::VectorXd candidate, g_candidate;
        for (int halving = 0; halving <= options.max_halvings; ++halving) {
            candidate = x + step * d;
            if (try_gradient(candidate, g_candidate) && g_candidate.norm() < merit) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            const double margin = problem.boundary_margin ? problem.boundary_margin(x) : 1.0;
            const std::string diag = options.label + ": line search stalled after " +
                                     std::to_string(options.max_halvings) +
                                     " halvings (gradient norm " + std::to_string(merit) +
                                     ", boundary margin " + std::to_string(margin) + ")";
            if (options.infeasible_on_boundary && margin < 1e-13)
                throw InfeasibleError(diag + "; target appears to lie outside the image polytope");
            throw ConvergenceError(diag);
        }
        x = std::move(candidate);
        g = std::move(g_candidate);
    }
    const double res = g.lpNorm<Eigen::Infinity>();
    if (res <= options.tol) {
        result.x = std::move(x);
        result.iterations = options.max_iter;
        result.residual = res;
        return result;
    }
    throw ConvergenceError(options.label + ": no convergence after " +
                           std::to_string(options.max_iter) + " iterations (residual " +
                           std::to_string(res) + ")");
}

}  // namespace genhyp::detail
