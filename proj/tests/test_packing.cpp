#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "genhyp/coords.hpp"
#include "genhyp/packing.hpp"
#include "genhyp/rng.hpp"

using namespace genhyp;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::string data_path(const std::string& name)
{
    return std::string(GENHYP_TEST_DATA) + "/" + name;
}

packing::Config uniform_config(const TriSurface& s, int eps, int delta, double phi)
{
    return packing::Config{eps, delta, std::vector<double>(s.edge_count(), phi)};
}

}  // namespace

TEST_CASE("packing lengths closed forms")
{
    const TriSurface tetra = TriSurface::load(data_path("tetrahedron.json"));

    // eps=0: e^l = rho(phi/2)^2 e^{r_i + r_j}
    const auto l0 = packing::lengths(tetra, uniform_config(tetra, 0, 0, 2.0),
                                     std::vector<double>(4, 0.0));
    for (double l : l0) CHECK(l == Approx(0.0).margin(1e-14));

    // tangent circles: l = r_i + r_j
    const auto l1 = packing::lengths(tetra, uniform_config(tetra, 1, 1, kPi),
                                     std::vector<double>(4, 1.0));
    for (double l : l1) CHECK(l == Approx(2.0).epsilon(1e-13));

    // (-1,1) with phi = pi/2: cosh l = sinh(1)^2
    const auto l2 = packing::lengths(tetra, uniform_config(tetra, -1, 1, kPi / 2),
                                     std::vector<double>(4, 1.0));
    const double expected = std::acosh(std::sinh(1.0) * std::sinh(1.0));
    for (double l : l2) CHECK(l == Approx(expected).epsilon(1e-12));
}

TEST_CASE("curvature of the symmetric eps=0 packing")
{
    const TriSurface tetra = TriSurface::load(data_path("tetrahedron.json"));
    const auto config = uniform_config(tetra, 0, 0, 2.0);
    const auto k = packing::curvature(tetra, config, std::vector<double>(4, 0.0));
    for (double v : k) CHECK(v == Approx(6.0).epsilon(1e-12));  // three incident angles of 2

    const auto c = packing::eps0_constant(tetra, config);
    for (double v : c) CHECK(v == Approx(6.0).epsilon(1e-12));
}

TEST_CASE("eps=0 curvature is proportional to e^{-r}")
{
    const TriSurface tetra = TriSurface::load(data_path("tetrahedron.json"));
    for (int delta : {-1, 0, 1}) {
        const auto config = uniform_config(tetra, 0, delta, delta == 1 ? 2.5 : 2.0);
        const auto c = packing::eps0_constant(tetra, config);
        SplitMix64 rng(61);
        for (int n = 0; n < 10; ++n) {
            std::vector<double> r(4);
            for (double& x : r) x = rng.uniform(-1.0, 1.5);
            const auto k = packing::curvature(tetra, config, r);
            for (int v = 0; v < 4; ++v)
                CHECK(k[v] * std::exp(r[v]) == Approx(c[v]).epsilon(1e-12));
        }
    }
}

TEST_CASE("symmetric radii on a vertex-transitive complex give equal curvature")
{
    const TriSurface octa = TriSurface::load(data_path("octahedron.json"));
    const auto config = uniform_config(octa, -1, -1, 2.0);
    const auto k = packing::curvature(octa, config, std::vector<double>(6, 1.0));
    for (double v : k) {
        CHECK(v == Approx(k[0]).epsilon(1e-12));
        CHECK(v > 0.0);
    }
}

TEST_CASE("closed-form eps=0 solve")
{
    const TriSurface tetra = TriSurface::load(data_path("tetrahedron.json"));
    const auto config = uniform_config(tetra, 0, 0, 2.0);
    const auto result = packing::solve(tetra, config, std::vector<double>(4, 3.0));
    for (double r : result.r) CHECK(r == Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(result.residual <= 1e-12);

    CHECK_THROWS_AS(packing::solve(tetra, config, std::vector<double>(4, -1.0)), InfeasibleError);
}

TEST_CASE("per-triangle jacobian is symmetric, negative definite and matches finite differences")
{
    const TriSurface tetra = TriSurface::load(data_path("tetrahedron.json"));
    SplitMix64 rng(67);
    struct Case {
        int eps, delta;
        double phi;
        double r_lo, r_hi;
    };
    const Case cases[] = {
        {-1, 1, 2.0, 0.8, 2.0}, {-1, 0, 2.0, 1.0, 2.0}, {-1, -1, 2.0, 0.8, 2.0}, {1, 1, 2.0, 0.3, 2.0}};
    for (const auto& c : cases) {
        const auto config = uniform_config(tetra, c.eps, c.delta, c.phi);
        for (int n = 0; n < 60; ++n) {
            std::vector<double> r(4);
            for (double& x : r) x = rng.uniform(c.r_lo, c.r_hi);
            bool feasible = true;
            try {
                packing::curvature(tetra, config, r);
            } catch (const RealizabilityError&) {
                feasible = false;
            }
            if (!feasible) continue;
            for (int t = 0; t < tetra.triangle_count(); ++t) {
                const Eigen::Matrix3d a = packing::triangle_jacobian(tetra, config, r, t);
                CHECK((a - a.transpose()).cwiseAbs().maxCoeff() < 1e-10);
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eigs(0.5 * (a + a.transpose()));
                CHECK(eigs.eigenvalues().maxCoeff() < 0.0);

                // central differences of theta(u) for this triangle
                const auto& corners = tetra.triangle(t).corners;
                const double step = 1e-6;
                for (int col = 0; col < 3; ++col) {
                    auto rp = r, rm = r;
                    const int v = corners[col];
                    const double u = coords::u_from_r(c.eps * c.delta, r[v]);
                    rp[v] = coords::r_from_u(c.eps * c.delta, u + step);
                    rm[v] = coords::r_from_u(c.eps * c.delta, u - step);
                    const Vec3 tp = packing::triangle_angles(tetra, config, rp, t);
                    const Vec3 tm = packing::triangle_angles(tetra, config, rm, t);
                    for (int row = 0; row < 3; ++row) {
                        const double fd = (tp[row] - tm[row]) / (2.0 * step);
                        CHECK(std::abs(fd - a(row, col)) <=
                              1e-5 * std::max(1.0, std::abs(a(row, col))));
                    }
                }
            }
        }
    }
}

TEST_CASE("newton solve round trips")
{
    SplitMix64 rng(71);
    for (const char* name : {"tetrahedron.json", "octahedron.json"}) {
        const TriSurface s = TriSurface::load(data_path(name));
        const int nv = s.vertex_count();
        struct Case {
            int eps, delta;
            double phi;
            double r_lo, r_hi;
        };
        const Case cases[] = {{-1, 1, 2.0, 0.9, 1.8},
                              {-1, 0, 2.0, 1.0, 1.8},
                              {-1, -1, 2.0, 0.9, 1.8},
                              {1, 1, kPi, 0.5, 1.5}};
        for (const auto& c : cases) {
            const auto config = uniform_config(s, c.eps, c.delta, c.phi);
            for (int n = 0; n < 5; ++n) {
                std::vector<double> r_true(nv);
                for (double& x : r_true) x = rng.uniform(c.r_lo, c.r_hi);
                std::vector<double> target;
                try {
                    target = packing::curvature(s, config, r_true);
                } catch (const RealizabilityError&) {
                    continue;
                }
                packing::SolveOptions options;
                options.tol = 1e-10;
                const auto result = packing::solve(s, config, target, options);
                CHECK(result.iterations <= 50);
                for (int v = 0; v < nv; ++v) CHECK(result.r[v] == Approx(r_true[v]).margin(1e-8));
            }
        }
    }
}

TEST_CASE("(1,1) packing on the icosahedron with tangent circles")
{
    const TriSurface ico = TriSurface::load(data_path("icosahedron.json"));
    const auto config = uniform_config(ico, 1, 1, kPi);
    SplitMix64 rng(73);
    std::vector<double> r_true(ico.vertex_count());
    for (double& x : r_true) x = rng.uniform(0.5, 1.5);
    const auto target = packing::curvature(ico, config, r_true);
    const auto result = packing::solve(ico, config, target);
    for (int v = 0; v < ico.vertex_count(); ++v)
        CHECK(result.r[v] == Approx(r_true[v]).margin(1e-8));
}

TEST_CASE("unsupported packing cases are reported")
{
    const TriSurface tetra = TriSurface::load(data_path("tetrahedron.json"));
    const std::vector<double> target(4, 1.0);
    CHECK_THROWS_AS(packing::solve(tetra, uniform_config(tetra, 1, 0, 2.0), target),
                    UnsupportedCaseError);
    CHECK_THROWS_AS(packing::solve(tetra, uniform_config(tetra, 1, -1, 2.0), target),
                    UnsupportedCaseError);
    CHECK_THROWS_AS(packing::solve(tetra, uniform_config(tetra, 1, 1, 1.0), target),
                    UnsupportedCaseError);  // a weight below pi/2
}

TEST_CASE("flow equilibrium and convergence")
{
    const TriSurface tetra = TriSurface::load(data_path("tetrahedron.json"));
    const auto config = uniform_config(tetra, -1, 1, kPi / 2);
    const std::vector<double> target = packing::curvature(tetra, config, std::vector<double>(4, 1.0));

    // the solver's output is a fixed point
    const auto solved = packing::solve(tetra, config, target);
    packing::FlowOptions still;
    still.dt = 0.01;
    still.steps = 1;
    const auto fixed = packing::flow(tetra, config, solved.r, target, still);
    CHECK(fixed.trace.front().grad_norm <= 1e-9);

    // from a displaced start the flow reaches the same solution
    packing::FlowOptions options;
    options.dt = 0.01;
    options.steps = 5000;
    const auto run = packing::flow(tetra, config, std::vector<double>(4, 1.3), target, options);
    const auto& last = run.trace.back();
    double max_residual = 0.0;
    for (int v = 0; v < 4; ++v)
        max_residual = std::max(max_residual, std::abs(last.curvature[v] - target[v]));
    CHECK(max_residual <= 1e-6);
    for (int v = 0; v < 4; ++v) CHECK(last.r[v] == Approx(solved.r[v]).margin(1e-6));

    // Lyapunov value is non-decreasing along accepted steps
    for (std::size_t i = 0; i + 1 < run.trace.size(); i += 100) {
        const double dv = packing::potential_delta(tetra, config, run.trace[i].r,
                                                   run.trace[i + 1].r, target);
        CHECK(dv >= -1e-9);
    }
}

TEST_CASE("limit decay")
{
    const Vec3 phi_half_pi{kPi / 2, kPi / 2, kPi / 2};
    double prev = std::numeric_limits<double>::infinity();
    for (double R : {5.0, 10.0, 20.0, 40.0}) {
        const double theta = packing::limit_decay(1, phi_half_pi, 1.0, 1.0, R);
        CHECK(theta > 0.0);
        CHECK(theta < prev);
        prev = theta;
    }
    CHECK(packing::limit_decay(1, phi_half_pi, 1.0, 1.0, 40.0) <= 1e-8);
}

TEST_CASE("classic curvature conversion")
{
    CHECK(packing::classic_curvature(1.0) == Approx(2.0 * kPi - 1.0));
}
