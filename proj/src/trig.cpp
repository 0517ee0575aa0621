#include "genhyp/trig.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace genhyp {

namespace {

constexpr double kDegenerateDet = 1e-14;

std::string corner_msg(const char* what, int i, double v)
{
    return std::string(what) + " at corner " + std::to_string(i) + " (value " + std::to_string(v) + ")";
}

// arccosh(1+t) without cancellation for small t >= 0.
double acosh1p(double t)
{
    return std::log1p(t + std::sqrt(t * (2.0 + t)));
}

}  // namespace

TriangleType TriangleType::of(int e0, int e1, int e2)
{
    for (int e : {e0, e1, e2}) {
        if (e != -1 && e != 0 && e != 1)
            throw InputError("vertex type must be -1, 0 or 1, got " + std::to_string(e));
    }
    return TriangleType{{e0, e1, e2}};
}

namespace trig {

double rho(int eps, double x)
{
    switch (eps) {
        case 1: return std::sin(x);
        case 0: return x;
        case -1: return std::sinh(x);
    }
    throw InputError("vertex type must be -1, 0 or 1");
}

double rho_prime(int eps, double x)
{
    switch (eps) {
        case 1: return std::cos(x);
        case 0: return 1.0;
        case -1: return std::cosh(x);
    }
    throw InputError("vertex type must be -1, 0 or 1");
}

double tau(int s, double l)
{
    return 0.5 * std::exp(l) - 0.5 * s * std::exp(-l);
}

double tau_prime(int s, double l)
{
    return 0.5 * std::exp(l) + 0.5 * s * std::exp(-l);
}

double invert_tau_prime(int s, double value)
{
    switch (s) {
        case 1:
            // cosh branch restricted to l > 0
            if (!(value > 1.0))
                throw DomainError("tau' value " + std::to_string(value) +
                                  " has no preimage l > 0 on the cosh branch");
            return acosh1p(value - 1.0);
        case 0:
            if (!(value > 0.0))
                throw DomainError("tau' value " + std::to_string(value) +
                                  " has no preimage on the exp branch");
            return std::log(2.0 * value);
        case -1:
            if (!(value > 0.0))
                throw DomainError("tau' value " + std::to_string(value) +
                                  " has no preimage l > 0 on the sinh branch");
            return std::asinh(value);
    }
    throw InputError("edge sign must be -1, 0 or 1");
}

bool angle_valid(int eps, double theta, bool allow_pi)
{
    if (!std::isfinite(theta) || theta <= 0.0) return false;
    if (eps == 1) return allow_pi ? theta <= std::numbers::pi : theta < std::numbers::pi;
    return true;
}

bool length_valid(int sigma, double l)
{
    if (!std::isfinite(l)) return false;
    return sigma == 0 || l > 0.0;
}

namespace {

void check_angles(const TriangleType& type, const Vec3& theta, bool allow_pi = false)
{
    for (int i = 0; i < 3; ++i)
        if (!angle_valid(type.eps[i], theta[i], allow_pi))
            throw InputError(corner_msg("generalized angle outside its interval", i, theta[i]));
}

void check_lengths(const TriangleType& type, const Vec3& len)
{
    for (int i = 0; i < 3; ++i)
        if (!length_valid(type.edge_sign(i), len[i]))
            throw InputError(corner_msg("edge length outside its J-interval", i, len[i]));
}

}  // namespace

Vec3 lengths_from_angles(const TriangleType& type, const Vec3& theta)
{
    check_angles(type, theta);
    Vec3 len;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double denom = rho(type.eps[j], theta[j]) * rho(type.eps[k], theta[k]);
        const double value =
            (rho_prime(type.eps[i], theta[i]) +
             rho_prime(type.eps[j], theta[j]) * rho_prime(type.eps[k], theta[k])) /
            denom;
        try {
            len[i] = invert_tau_prime(type.edge_sign(i), value);
        } catch (const DomainError&) {
            throw DomainError(corner_msg("no edge opposite corner", i, value) +
                              ": cosine-law value outside the invertible range");
        }
    }
    return len;
}

namespace {

// Right-hand side of the half-angle law: 2 rho^2(theta_i/2).
double half_angle_expression(const TriangleType& type, const Vec3& len, int i)
{
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double num = tau_prime(type.edge_sign(i), len[i]) -
                       0.5 * type.eps[j] * std::exp(len[j] - len[k]) -
                       0.5 * type.eps[k] * std::exp(len[k] - len[j]);
    return num / (tau(type.edge_sign(j), len[j]) * tau(type.edge_sign(k), len[k]));
}

}  // namespace

Vec3 angles_from_lengths(const TriangleType& type, const Vec3& len)
{
    check_lengths(type, len);
    Vec3 theta;
    for (int i = 0; i < 3; ++i) {
        const double q = half_angle_expression(type, len, i);
        double half = 0.5 * q;  // rho^2(theta_i/2)
        if (!(half > 0.0) || !std::isfinite(half))
            throw DomainError(corner_msg("no angle", i, q) +
                              ": half-angle expression not positive (no such triangle)");
        switch (type.eps[i]) {
            case 1: {
                if (half > 1.0 + 1e-12)
                    throw DomainError(corner_msg("no angle", i, q) +
                                      ": half-angle expression exceeds the sin range");
                // theta/2 on (0, pi/2] recovers theta in (0, pi] uniquely
                theta[i] = 2.0 * std::asin(std::sqrt(std::min(half, 1.0)));
                break;
            }
            case 0:
                theta[i] = 2.0 * std::sqrt(half);
                break;
            case -1:
                theta[i] = 2.0 * std::asinh(std::sqrt(half));
                break;
        }
    }
    return theta;
}

Triangle solve_from_angles(const TriangleType& type, const Vec3& theta)
{
    return Triangle{type, theta, lengths_from_angles(type, theta)};
}

Triangle solve_from_lengths(const TriangleType& type, const Vec3& len)
{
    return Triangle{type, angles_from_lengths(type, len), len};
}

namespace {

long double rho_ld(int eps, long double x)
{
    switch (eps) {
        case 1: return sinl(x);
        case 0: return x;
        default: return sinhl(x);
    }
}

long double tau_ld(int s, long double l)
{
    return 0.5L * expl(l) - 0.5L * s * expl(-l);
}

}  // namespace

Triangle solve_sas(const TriangleType& type, double l0, double l1, double included)
{
    if (!angle_valid(type.eps[2], included, /*allow_pi=*/true))
        throw InputError("included angle outside its interval (closed at pi only for type 1)");
    if (!length_valid(type.edge_sign(0), l0) || !length_valid(type.edge_sign(1), l1))
        throw InputError("SAS side outside its J-interval");

    // Invert the half-angle law for the third side. Evaluated in long double
    // so that near-degenerate data (tau' value barely above the cosh branch
    // point) still yields a relatively accurate side.
    const long double rr = rho_ld(type.eps[2], 0.5L * static_cast<long double>(included));
    const long double value = 2.0L * rr * rr * tau_ld(type.edge_sign(0), l0) *
                                  tau_ld(type.edge_sign(1), l1) +
                              0.5L * type.eps[0] * expl(static_cast<long double>(l0) - l1) +
                              0.5L * type.eps[1] * expl(static_cast<long double>(l1) - l0);
    const auto fail = [] [[noreturn]] () {
        throw RealizabilityError(
            "no generalized triangle with these two sides and included angle (third side "
            "would leave its J-interval)");
    };
    double l2 = 0.0;
    switch (type.edge_sign(2)) {
        case 1: {
            const long double t = value - 1.0L;
            if (!(t > 0.0L)) fail();
            l2 = static_cast<double>(log1pl(t + sqrtl(t * (2.0L + t))));
            break;
        }
        case 0:
            if (!(value > 0.0L)) fail();
            l2 = static_cast<double>(logl(2.0L * value));
            break;
        case -1:
            if (!(value > 0.0L)) fail();
            l2 = static_cast<double>(asinhl(value));
            break;
    }
    const Vec3 len{l0, l1, l2};
    Vec3 theta;
    if (type.eps[2] == 1 && included == std::numbers::pi) {
        // tangent configuration: the triangle degenerates onto a geodesic,
        // the remaining angles vanish (up to rounding of the half-angle
        // expression)
        for (int i = 0; i < 2; ++i) {
            const double q = half_angle_expression(type, len, i);
            if (q <= 0.0) {
                if (q < -1e-9)
                    throw DomainError(corner_msg("no angle", i, q) +
                                      ": half-angle expression not positive");
                theta[i] = 0.0;
                continue;
            }
            const double half = 0.5 * q;
            switch (type.eps[i]) {
                case 1: theta[i] = 2.0 * std::asin(std::sqrt(std::min(half, 1.0))); break;
                case 0: theta[i] = 2.0 * std::sqrt(half); break;
                case -1: theta[i] = 2.0 * std::asinh(std::sqrt(half)); break;
            }
        }
    } else {
        theta = angles_from_lengths(type, len);
    }
    theta[2] = included;  // exact, incl. the pi endpoint
    return Triangle{type, theta, len};
}

Eigen::Matrix3d gram_lengths(const TriangleType& type, const Vec3& len)
{
    check_lengths(type, len);
    const double t0 = tau_prime(type.edge_sign(0), len[0]);
    const double t1 = tau_prime(type.edge_sign(1), len[1]);
    const double t2 = tau_prime(type.edge_sign(2), len[2]);
    Eigen::Matrix3d g;
    g << type.eps[0], t2, t1,
         t2, type.eps[1], t0,
         t1, t0, type.eps[2];
    return -g;
}

Eigen::Matrix3d gram_angles(const TriangleType& type, const Vec3& theta)
{
    check_angles(type, theta, /*allow_pi=*/true);
    const double r0 = rho_prime(type.eps[0], theta[0]);
    const double r1 = rho_prime(type.eps[1], theta[1]);
    const double r2 = rho_prime(type.eps[2], theta[2]);
    Eigen::Matrix3d g;
    g << -1.0, r2, r1,
         r2, -1.0, r0,
         r1, r0, -1.0;
    return -g;
}

Eigen::Matrix3d m_matrix(const Triangle& tri)
{
    const double det_l = gram_lengths(tri.type, tri.len).determinant();
    const double det_t = gram_angles(tri.type, tri.theta).determinant();
    if (det_l >= -kDegenerateDet || det_t >= -kDegenerateDet)
        throw DegenerateError("degenerate triangle: Gram determinant not safely negative (det G_l = " +
                              std::to_string(det_l) + ", det G_theta = " + std::to_string(det_t) + ")");
    const double scale = 1.0 / std::sqrt(-det_l);
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i)
        m(i, i) = scale * tau(tri.type.edge_sign(i), tri.len[i]);
    return m;
}

Eigen::Matrix3d dl_dtheta(const Triangle& tri)
{
    return m_matrix(tri) * gram_lengths(tri.type, tri.len);
}

Eigen::Matrix3d dtheta_dl(const Triangle& tri)
{
    return m_matrix(tri) * gram_angles(tri.type, tri.theta);
}

double sine_ratio(const Triangle& tri, int i)
{
    return rho(tri.type.eps[i], tri.theta[i]) / tau(tri.type.edge_sign(i), tri.len[i]);
}

void validate(const Triangle& tri, double tol)
{
    const Vec3 len = lengths_from_angles(tri.type, tri.theta);
    for (int i = 0; i < 3; ++i) {
        const double scale = std::max({1.0, std::abs(len[i]), std::abs(tri.len[i])});
        if (std::abs(len[i] - tri.len[i]) > tol * scale)
            throw ValidationError(corner_msg("cosine-law residual", i, len[i] - tri.len[i]));
    }
    const double r0 = sine_ratio(tri, 0);
    for (int i = 1; i < 3; ++i) {
        if (std::abs(sine_ratio(tri, i) - r0) > tol * std::max(1.0, std::abs(r0)))
            throw ValidationError(corner_msg("sine-law residual", i, sine_ratio(tri, i) - r0));
    }
}

}  // namespace trig
}  // namespace genhyp
