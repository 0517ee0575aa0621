#pragma once

#include <functional>

#include "genhyp/error.hpp"
#include "genhyp/trig.hpp"

namespace genhyp::coords {

// Interval bookkeeping: I_delta for generalized angles ((0,pi] when
// delta=1, R_{>0} otherwise; the open variant excludes pi), J_sigma for
// edge lengths (R_{>0} for sigma=+-1, R for sigma=0).
bool in_I(int delta, double value, bool open_at_pi = false);
bool in_J(int sigma, double value);

/// Realizability of SAS data for a type (eps,eps,delta) triangle: two
/// sides l1, l2 in J_{eps*delta} with included angle theta of type delta.
/// True iff the triangle exists. Invalid interval inputs raise InputError.
bool d_membership(int eps, int delta, double theta, double l1, double l2);

/// Membership of a radius triple in M_{eps,delta}(phi): the three SAS
/// constructions succeed and the resulting lengths bound a type
/// (eps,eps,eps) triangle. Supported: eps in {0,-1} (any delta) and
/// (eps,delta)=(1,1) with all phi in [pi/2,pi]; other eps=1 cases raise
/// UnsupportedCaseError.
bool m_membership(int eps, int delta, const Vec3& phi, const Vec3& r);

/// Radius reparametrization u(r) = -int_r^inf dt/tau_{eps*delta}(t):
///   eps*delta = +1: u = log tanh(r/2),
///   eps*delta = -1: u = 2 arctan e^r - pi  (in (-pi/2, 0)),
///   eps*delta =  0: u = -2 e^{-r}.
/// Strictly increasing, u < 0; inverses are exact closed forms.
double u_from_r(int epsdelta, double r);
double r_from_u(int epsdelta, double u);

/// Length and angle reparametrizations of the pattern energy:
/// w(l) = int_1^l tau_{eps*delta}^{h-1}, a(theta) = int_1^theta rho_eps^h.
/// Closed forms for h in {0,1}, adaptive quadrature otherwise; inverses
/// by safeguarded monotone root-finding.
double w_from_l(double h, int epsdelta, double l);
double l_from_w(double h, int epsdelta, double w);
double a_from_theta(double h, int eps, double theta);
double theta_from_a(double h, int eps, double a);

/// Adaptive Gauss-Kronrod 7/15 with absolute tolerance; deterministic
/// node placement. Throws QuadratureError when the subdivision cap is
/// reached before the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12);

}  // namespace genhyp::coords
