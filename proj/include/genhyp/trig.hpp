#pragma once

#include <array>

#include <Eigen/Dense>

#include "genhyp/error.hpp"

namespace genhyp {

using Vec3 = std::array<double, 3>;

/// Vertex type of a generalized hyperbolic triangle corner:
///  +1 interior vertex (ordinary angle),
///   0 ideal vertex decorated by a horocycle,
///  -1 hyperideal vertex truncated by a perpendicular geodesic.
struct TriangleType {
    std::array<int, 3> eps;

    static TriangleType of(int e0, int e1, int e2);

    /// Sign eps[j]*eps[k] governing the edge opposite corner i
    /// (selects the J-interval and the tau branch of that edge).
    int edge_sign(int i) const
    {
        return eps[(i + 1) % 3] * eps[(i + 2) % 3];
    }

    bool operator==(const TriangleType&) const = default;
};

/// A solved generalized triangle: theta[i] is the generalized angle at
/// corner i, len[i] the generalized length of the opposite edge.
struct Triangle {
    TriangleType type;
    Vec3 theta;
    Vec3 len;
};

namespace trig {

// The function pair behind the uniform laws:
//   rho_1 = sin, rho_0 = id, rho_-1 = sinh;  tau_s(l) = e^l/2 - s e^-l/2.
double rho(int eps, double x);
double rho_prime(int eps, double x);
double tau(int s, double l);
double tau_prime(int s, double l);

/// Invert tau'_s on the interval J_s (s=+1: positive arccosh branch,
/// s=0: log, s=-1: arcsinh). Throws DomainError when the value has no
/// preimage in J_s.
double invert_tau_prime(int s, double value);

/// Angle-interval check: theta in (0,pi) for eps=1 (closed at pi iff
/// allow_pi), theta > 0 otherwise.
bool angle_valid(int eps, double theta, bool allow_pi = false);
/// Length-interval check for an edge of sign sigma: l > 0 for sigma=+-1,
/// any real for sigma=0.
bool length_valid(int sigma, double l);

/// Uniform law (all ten types): edge lengths from the three angles.
Vec3 lengths_from_angles(const TriangleType& type, const Vec3& theta);
/// Uniform half-angle law: angles from the three edge lengths.
Vec3 angles_from_lengths(const TriangleType& type, const Vec3& len);

Triangle solve_from_angles(const TriangleType& type, const Vec3& theta);
Triangle solve_from_lengths(const TriangleType& type, const Vec3& len);

/// SAS: sides len[0], len[1] flank the included angle at corner 2 (the
/// included angle may equal pi when eps[2] = 1). Throws
/// RealizabilityError when no such triangle exists.
Triangle solve_sas(const TriangleType& type, double l0, double l1, double included);

Eigen::Matrix3d gram_lengths(const TriangleType& type, const Vec3& len);
Eigen::Matrix3d gram_angles(const TriangleType& type, const Vec3& theta);

/// Diagonal matrix M = diag(tau(len_i)) / sqrt(-det G_l); throws
/// DegenerateError when either Gram determinant is not safely negative.
Eigen::Matrix3d m_matrix(const Triangle& tri);

/// Derivative cosine law: d(len) = dl_dtheta(tri) * d(theta) and
/// d(theta) = dtheta_dl(tri) * d(len); the two matrices are mutual inverses.
Eigen::Matrix3d dl_dtheta(const Triangle& tri);
Eigen::Matrix3d dtheta_dl(const Triangle& tri);

/// rho(theta_i) / tau(len_i); equal over i = 0,1,2 by the sine law.
double sine_ratio(const Triangle& tri, int i);

/// Consistency check of a candidate triangle against the uniform laws
/// (relative tolerance); throws ValidationError on failure.
void validate(const Triangle& tri, double tol = 1e-10);

}  // namespace trig

namespace appendix {

/// Per-type boxed law sets, implemented formula-by-formula as an
/// independent evaluation path (used as the cross-check oracle for the
/// uniform laws).
Vec3 lengths_from_angles(const TriangleType& type, const Vec3& theta);
Vec3 angles_from_lengths(const TriangleType& type, const Vec3& len);
Triangle solve_from_angles(const TriangleType& type, const Vec3& theta);
Triangle solve_from_lengths(const TriangleType& type, const Vec3& len);

}  // namespace appendix

}  // namespace genhyp
