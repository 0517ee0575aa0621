#include "genhyp/coords.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace genhyp::coords {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& msg)
{
    if (!ok) throw InputError(msg);
}

}  // namespace

bool in_I(int delta, double value, bool open_at_pi)
{
    if (!std::isfinite(value) || value <= 0.0) return false;
    if (delta == 1) return open_at_pi ? value < kPi : value <= kPi;
    return true;
}

bool in_J(int sigma, double value)
{
    if (!std::isfinite(value)) return false;
    return sigma == 0 || value > 0.0;
}

bool d_membership(int eps, int delta, double theta, double l1, double l2)
{
    require(eps == -1 || eps == 0 || eps == 1, "eps must be -1, 0 or 1");
    require(delta == -1 || delta == 0 || delta == 1, "delta must be -1, 0 or 1");
    require(in_I(delta, theta), "included angle outside I_delta");
    const int sigma = eps * delta;
    require(in_J(sigma, l1) && in_J(sigma, l2), "side outside J_{eps*delta}");

    if (eps == 1 || eps == 0) return true;
    switch (delta) {
        case 1:
            return std::sinh(l1) * std::sinh(l2) - std::cos(theta) * std::cosh(l1) * std::cosh(l2) > 1.0;
        case 0:
            // theta is twice the horocyclic arc; the paper's printed bound
            // drops this factor (see the uniform law for (-1,-1,0)).
            return theta > 2.0 * (std::exp(-l1) + std::exp(-l2));
        case -1:
            return std::cosh(theta) * std::sinh(l1) * std::sinh(l2) - std::cosh(l1) * std::cosh(l2) > 1.0;
    }
    return false;
}

bool m_membership(int eps, int delta, const Vec3& phi, const Vec3& r)
{
    for (double p : phi)
        require(in_I(delta, p), "weight outside I_delta");
    for (double x : r)
        require(in_J(eps * delta, x), "radius outside J_{eps*delta}");

    if (eps == 1) {
        if (delta != 1)
            throw UnsupportedCaseError("(1,1,0) and (1,1,-1) packings are not supported");
        for (double p : phi)
            if (p < kPi / 2.0)
                throw UnsupportedCaseError(
                    "(1,1) packing requires all weights in [pi/2, pi]");
        return true;  // Thurston: M_{1,1} is all of R^3_{>0}
    }
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        if (!d_membership(eps, delta, phi[k], r[i], r[j])) return false;
    }
    return true;
}

double u_from_r(int epsdelta, double r)
{
    require(in_J(epsdelta, r), "radius outside J_{eps*delta}");
    switch (epsdelta) {
        case 1: return std::log(std::tanh(0.5 * r));
        case -1: return 2.0 * std::atan(std::exp(r)) - kPi;
        case 0: return -2.0 * std::exp(-r);
    }
    throw InputError("eps*delta must be -1, 0 or 1");
}

double r_from_u(int epsdelta, double u)
{
    switch (epsdelta) {
        case 1:
            require(u < 0.0, "u outside the image (-inf, 0)");
            return 2.0 * std::atanh(std::exp(u));
        case -1:
            require(u < 0.0 && u > -kPi / 2.0, "u outside the image (-pi/2, 0)");
            return std::log(std::tan(0.5 * (u + kPi)));
        case 0:
            require(u < 0.0, "u outside the image (-inf, 0)");
            return -std::log(-0.5 * u);
    }
    throw InputError("eps*delta must be -1, 0 or 1");
}

namespace {

// Antiderivative of 1/tau_s (the h=0 integrand of w).
double tau_reciprocal_antiderivative(int s, double t)
{
    switch (s) {
        case 1: return std::log(std::tanh(0.5 * t));
        case -1: return 2.0 * std::atan(std::exp(t));
        case 0: return -2.0 * std::exp(-t);
    }
    throw InputError("eps*delta must be -1, 0 or 1");
}

// Antiderivative of rho_eps (the h=1 integrand of a).
double rho_antiderivative(int eps, double t)
{
    switch (eps) {
        case 1: return -std::cos(t);
        case 0: return 0.5 * t * t;
        case -1: return std::cosh(t);
    }
    throw InputError("eps must be -1, 0 or 1");
}

struct GK15 {
    double value;
    double error;
};

// Gauss-Kronrod 7/15 nodes and weights on [-1,1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

GK15 gk15(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b, double tol,
                     int depth, int& budget)
{
    if (--budget < 0)
        throw QuadratureError("adaptive quadrature exceeded its subdivision cap");
    const GK15 est = gk15(f, a, b);
    if (est.error <= tol || depth >= 48) {
        if (depth >= 48 && est.error > tol)
            throw QuadratureError("adaptive quadrature tolerance unreachable at maximum depth");
        return est.value;
    }
    const double c = 0.5 * (a + b);
    return integrate_rec(f, a, c, 0.5 * tol, depth + 1, budget) +
           integrate_rec(f, c, b, 0.5 * tol, depth + 1, budget);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol)
{
    if (a == b) return 0.0;
    int budget = 20000;
    return integrate_rec(f, a, b, abs_tol, 0, budget);
}

double w_from_l(double h, int epsdelta, double l)
{
    require(in_J(epsdelta, l), "length outside J_{eps*delta}");
    if (h == 1.0) return l - 1.0;
    if (h == 0.0)
        return tau_reciprocal_antiderivative(epsdelta, l) - tau_reciprocal_antiderivative(epsdelta, 1.0);
    return integrate([=](double t) { return std::pow(trig::tau(epsdelta, t), h - 1.0); }, 1.0, l);
}

double a_from_theta(double h, int eps, double theta)
{
    require(in_I(eps == 1 ? 1 : 0, theta, /*open_at_pi=*/eps == 1), "angle outside its interval");
    if (h == 0.0) return theta - 1.0;
    if (h == 1.0) return rho_antiderivative(eps, theta) - rho_antiderivative(eps, 1.0);
    return integrate([=](double t) { return std::pow(trig::rho(eps, t), h); }, 1.0, theta);
}

namespace {

// Safeguarded Newton for a strictly increasing primitive F with F(1)=0 on
// (lo_limit, hi_limit); deriv is the (positive) integrand. The bracket
// approaches the domain limits geometrically so that near-singular
// endpoints are only evaluated when the target actually lies there.
double invert_monotone(const std::function<double(double)>& value,
                       const std::function<double(double)>& deriv, double target, double lo_limit,
                       double hi_limit, const char* what)
{
    double lo = 1.0, hi = 1.0;
    if (target >= 0.0) {
        bool bracketed = false;
        for (double d = 1.0; 1.0 + d < hi_limit; d *= 4.0) {
            hi = 1.0 + d;
            if (value(hi) >= target) {
                bracketed = true;
                break;
            }
            lo = hi;
        }
        for (double gap = hi_limit - lo; !bracketed;) {
            gap *= 0.25;
            if (gap < 1e-13 * std::max(1.0, std::abs(hi_limit)))
                throw InputError(std::string(what) + ": value outside the coordinate image");
            hi = hi_limit - gap;
            if (value(hi) >= target) break;
            lo = hi;
        }
    } else {
        bool bracketed = false;
        for (double d = 1.0; 1.0 - d > lo_limit; d *= 4.0) {
            lo = 1.0 - d;
            if (value(lo) <= target) {
                bracketed = true;
                break;
            }
            hi = lo;
        }
        for (double gap = hi - lo_limit; !bracketed;) {
            gap *= 0.25;
            if (gap < 1e-13 * std::max(1.0, std::abs(lo_limit)))
                throw InputError(std::string(what) + ": value outside the coordinate image");
            lo = lo_limit + gap;
            if (value(lo) <= target) break;
            hi = lo;
        }
    }

    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 300; ++iter) {
        const double fx = value(x) - target;
        if (fx > 0.0)
            hi = x;
        else
            lo = x;
        const double scale = std::max(1.0, std::abs(x));
        if ((std::abs(fx) <= 1e-12 && hi - lo <= 1e-11 * scale) || hi - lo <= 4e-16 * scale)
            return x;
        const double d = deriv(x);
        double next = d > 0.0 ? x - fx / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

}  // namespace

double l_from_w(double h, int epsdelta, double w)
{
    if (h == 1.0) {
        const double l = w + 1.0;
        require(in_J(epsdelta, l), "w outside the coordinate image");
        return l;
    }
    const double lo_limit = (epsdelta == 0) ? -60.0 : 1e-12;
    return invert_monotone([=](double l) { return w_from_l(h, epsdelta, l); },
                           [=](double l) { return std::pow(trig::tau(epsdelta, l), h - 1.0); }, w,
                           lo_limit, 60.0, "l_from_w");
}

double theta_from_a(double h, int eps, double a)
{
    if (h == 0.0) {
        const double theta = a + 1.0;
        require(in_I(eps == 1 ? 1 : 0, theta, eps == 1), "a outside the coordinate image");
        return theta;
    }
    const double hi_limit = (eps == 1) ? kPi - 1e-12 : 60.0;
    return invert_monotone([=](double t) { return a_from_theta(h, eps, t); },
                           [=](double t) { return std::pow(trig::rho(eps, t), h); }, a, 1e-12,
                           hi_limit, "theta_from_a");
}

}  // namespace genhyp::coords
