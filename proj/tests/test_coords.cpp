#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "genhyp/coords.hpp"
#include "genhyp/rng.hpp"
#include "genhyp/trig.hpp"

using namespace genhyp;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("u coordinate closed forms")
{
    // tanh(ln(3)/2) = 1/2
    CHECK(coords::u_from_r(1, std::log(3.0)) == Approx(-std::log(2.0)).epsilon(1e-14));
    // arctan(1 + sqrt(2)) = 3 pi / 8
    CHECK(coords::u_from_r(-1, std::log(1.0 + std::sqrt(2.0))) == Approx(-kPi / 4).epsilon(1e-14));
    CHECK(coords::u_from_r(0, std::log(2.0)) == Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("u round trips, monotonicity and derivative")
{
    SplitMix64 rng(41);
    for (int epsdelta : {-1, 0, 1}) {
        double prev_r = 0.0, prev_u = 0.0;
        bool have_prev = false;
        for (int n = 0; n < 1000; ++n) {
            const double r = epsdelta == 0 ? rng.uniform(-2.0, 3.0) : rng.uniform(0.05, 4.0);
            const double u = coords::u_from_r(epsdelta, r);
            CHECK(u < 0.0);
            if (epsdelta == -1) CHECK(u > -kPi / 2);
            CHECK(coords::r_from_u(epsdelta, u) == Approx(r).margin(1e-12));
            if (have_prev && r != prev_r)
                CHECK((u - prev_u) * (r - prev_r) > 0.0);  // strictly increasing
            prev_r = r;
            prev_u = u;
            have_prev = true;

            const double h = 1e-6;
            const double fd =
                (coords::u_from_r(epsdelta, r + h) - coords::u_from_r(epsdelta, r - h)) / (2 * h);
            CHECK(fd == Approx(1.0 / trig::tau(epsdelta, r)).margin(1e-6));
        }
    }
}

TEST_CASE("u rejects values outside the image")
{
    CHECK_THROWS_AS(coords::r_from_u(1, 0.5), InputError);
    CHECK_THROWS_AS(coords::r_from_u(-1, -2.0), InputError);
    CHECK_THROWS_AS(coords::u_from_r(1, -1.0), InputError);
}

TEST_CASE("w and a closed-form cases")
{
    for (double h : {-1.0, 0.0, 0.5, 1.0, 2.0})
        for (int s : {-1, 0, 1}) CHECK(coords::w_from_l(h, s, 1.0) == 0.0);
    CHECK(coords::w_from_l(1.0, -1, 2.5) == Approx(1.5));
    CHECK(coords::a_from_theta(0.0, 1, kPi / 4) == Approx(kPi / 4 - 1.0));
    // integral of sin from 1 to pi/2
    CHECK(coords::a_from_theta(1.0, 1, kPi / 2) == Approx(std::cos(1.0)).epsilon(1e-12));
}

TEST_CASE("w and a round trips across h values")
{
    SplitMix64 rng(43);
    for (double h : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        for (int s : {-1, 0, 1}) {
            for (int n = 0; n < 200; ++n) {
                const double l = s == 0 ? rng.uniform(-1.5, 2.5) : rng.uniform(0.3, 3.0);
                const double w = coords::w_from_l(h, s, l);
                CHECK(coords::l_from_w(h, s, w) == Approx(l).margin(1e-12));
            }
        }
        for (int eps : {-1, 0, 1}) {
            for (int n = 0; n < 200; ++n) {
                const double theta = rng.uniform(0.3, eps == 1 ? 2.8 : 3.5);
                const double a = coords::a_from_theta(h, eps, theta);
                CHECK(coords::theta_from_a(h, eps, a) == Approx(theta).margin(1e-12));
            }
        }
    }
}

TEST_CASE("quadrature agrees with calculus")
{
    CHECK(coords::integrate([](double x) { return std::sin(x); }, 0.0, kPi) ==
          Approx(2.0).epsilon(1e-13));
    CHECK(coords::integrate([](double x) { return std::exp(-x); }, 0.0, 20.0) ==
          Approx(1.0 - std::exp(-20.0)).epsilon(1e-12));
    CHECK(coords::integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("d membership literal cases")
{
    CHECK(coords::d_membership(1, 1, 1.0, 0.7, 2.0));
    CHECK(coords::d_membership(0, -1, 1.0, -1.0, 2.0));
    // sinh(1)^2 > 1
    CHECK(coords::d_membership(-1, 1, kPi / 2, 1.0, 1.0));
    CHECK_FALSE(coords::d_membership(-1, 0, 1.0, 0.0, 0.0));
    CHECK_THROWS_AS(coords::d_membership(-1, 1, -0.5, 1.0, 1.0), InputError);
    CHECK_THROWS_AS(coords::d_membership(-1, 1, 1.0, -1.0, 1.0), InputError);
}

TEST_CASE("d membership agrees with the SAS constructor")
{
    SplitMix64 rng(47);
    for (int delta : {-1, 0, 1}) {
        const int sigma = -delta;
        for (int n = 0; n < 1000; ++n) {
            const double theta = delta == 1 ? rng.uniform(0.1, kPi - 0.05) : rng.uniform(0.1, 4.0);
            const double l1 = sigma == 0 ? rng.uniform(-2.0, 2.5) : rng.uniform(0.05, 2.5);
            const double l2 = sigma == 0 ? rng.uniform(-2.0, 2.5) : rng.uniform(0.05, 2.5);
            const bool member = coords::d_membership(-1, delta, theta, l1, l2);
            bool constructed = true;
            double third = 0.0;
            try {
                third = trig::solve_sas(TriangleType::of(-1, -1, delta), l1, l2, theta).len[2];
            } catch (const RealizabilityError&) {
                constructed = false;
            }
            CHECK(member == constructed);
            if (constructed) CHECK(third > 0.0);
        }
    }
}

TEST_CASE("(-1,1) membership matches the linear u constraint")
{
    SplitMix64 rng(53);
    for (int n = 0; n < 1000; ++n) {
        const double theta = rng.uniform(0.1, kPi - 0.05);
        const double l1 = rng.uniform(0.05, 2.5);
        const double l2 = rng.uniform(0.05, 2.5);
        const double u1 = coords::u_from_r(-1, l1);
        const double u2 = coords::u_from_r(-1, l2);
        CHECK(coords::d_membership(-1, 1, theta, l1, l2) == (u1 + u2 > -theta));
    }
}

TEST_CASE("m membership cases")
{
    CHECK(coords::m_membership(0, 0, {2.0, 2.0, 2.0}, {0.0, 0.0, 0.0}));
    CHECK(coords::m_membership(1, 1, {kPi, kPi, kPi}, {0.3, 5.0, 1.0}));
    CHECK_FALSE(coords::m_membership(-1, -1, {0.1, 0.1, 0.1}, {0.1, 0.1, 0.1}));
    CHECK_THROWS_AS(coords::m_membership(1, 0, {2.0, 2.0, 2.0}, {1.0, 1.0, 1.0}),
                    UnsupportedCaseError);
    CHECK_THROWS_AS(coords::m_membership(1, -1, {2.0, 2.0, 2.0}, {1.0, 1.0, 1.0}),
                    UnsupportedCaseError);
    CHECK_THROWS_AS(coords::m_membership(1, 1, {1.0, kPi, kPi}, {1.0, 1.0, 1.0}),
                    UnsupportedCaseError);
}

TEST_CASE("m membership matches per-pair membership for eps in {0,-1}")
{
    SplitMix64 rng(59);
    for (int eps : {0, -1}) {
        for (int delta : {-1, 0, 1}) {
            const int sigma = eps * delta;
            for (int n = 0; n < 300; ++n) {
                Vec3 phi, r;
                for (int i = 0; i < 3; ++i) {
                    phi[i] = delta == 1 ? rng.uniform(0.1, kPi) : rng.uniform(0.1, 4.0);
                    r[i] = sigma == 0 ? rng.uniform(-2.0, 2.5) : rng.uniform(0.05, 2.5);
                }
                bool expected = true;
                for (int k = 0; k < 3; ++k)
                    expected = expected && coords::d_membership(eps, delta, phi[k], r[(k + 1) % 3],
                                                                r[(k + 2) % 3]);
                CHECK(coords::m_membership(eps, delta, phi, r) == expected);
            }
        }
    }
}
