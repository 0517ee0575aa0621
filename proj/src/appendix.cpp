#include <array>
#include <cmath>
#include <string>

#include "genhyp/trig.hpp"

// The ten boxed law sets, transcribed one formula at a time and kept
// independent of the uniform rho/tau evaluation path in trig.cpp. Each box
// is written for a fixed canonical corner ordering; arbitrary orderings are
// handled by permuting into the canonical frame and back.

namespace genhyp::appendix {

namespace {

using std::acos;
using std::acosh;
using std::asin;
using std::asinh;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;

[[noreturn]] void bad(const std::string& what)
{
    throw DomainError("appendix law: " + what);
}

double checked_acosh(double x, const char* what)
{
    if (!(x > 1.0)) bad(std::string(what) + ": arccosh argument <= 1");
    return acosh(x);
}

double checked_acos(double x, const char* what)
{
    if (!(x >= -1.0 && x <= 1.0)) bad(std::string(what) + ": arccos argument outside [-1,1]");
    return acos(x);
}

double checked_asinh_pos(double x, const char* what)
{
    if (!(x > 0.0)) bad(std::string(what) + ": value not positive");
    return asinh(x);
}

double checked_log(double x, const char* what)
{
    if (!(x > 0.0)) bad(std::string(what) + ": log argument not positive");
    return log(x);
}

double checked_sqrt(double x, const char* what)
{
    if (!(x > 0.0)) bad(std::string(what) + ": square of a positive quantity came out non-positive");
    return sqrt(x);
}

// ---- (1,1,1) ----
Vec3 len_111(const Vec3& t)
{
    Vec3 l;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        l[i] = checked_acosh((cos(t[i]) + cos(t[j]) * cos(t[k])) / (sin(t[j]) * sin(t[k])), "(1,1,1)");
    }
    return l;
}
Vec3 ang_111(const Vec3& l)
{
    Vec3 t;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        t[i] = checked_acos((-cosh(l[i]) + cosh(l[j]) * cosh(l[k])) / (sinh(l[j]) * sinh(l[k])), "(1,1,1)");
    }
    return t;
}

// ---- (1,1,-1) ----
Vec3 len_11m(const Vec3& t)
{
    Vec3 l;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        l[i] = checked_asinh_pos((cos(t[i]) + cos(t[j]) * cosh(t[2])) / (sin(t[j]) * sinh(t[2])), "(1,1,-1)");
    }
    l[2] = checked_acosh((cosh(t[2]) + cos(t[0]) * cos(t[1])) / (sin(t[0]) * sin(t[1])), "(1,1,-1)");
    return l;
}
Vec3 ang_11m(const Vec3& l)
{
    Vec3 t;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        t[i] = checked_acos((-sinh(l[i]) + sinh(l[j]) * cosh(l[2])) / (cosh(l[j]) * sinh(l[2])), "(1,1,-1)");
    }
    t[2] = checked_acosh((cosh(l[2]) + sinh(l[0]) * sinh(l[1])) / (cosh(l[0]) * cosh(l[1])), "(1,1,-1)");
    return t;
}

// ---- (-1,-1,1) ----
Vec3 len_mm1(const Vec3& t)
{
    Vec3 l;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        l[i] = checked_asinh_pos((cosh(t[i]) + cosh(t[j]) * cos(t[2])) / (sinh(t[j]) * sin(t[2])), "(-1,-1,1)");
    }
    l[2] = checked_acosh((cos(t[2]) + cosh(t[0]) * cosh(t[1])) / (sinh(t[0]) * sinh(t[1])), "(-1,-1,1)");
    return l;
}
Vec3 ang_mm1(const Vec3& l)
{
    Vec3 t;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        t[i] = checked_acosh((sinh(l[i]) + sinh(l[j]) * cosh(l[2])) / (cosh(l[j]) * sinh(l[2])), "(-1,-1,1)");
    }
    t[2] = checked_acos((-cosh(l[2]) + sinh(l[0]) * sinh(l[1])) / (cosh(l[0]) * cosh(l[1])), "(-1,-1,1)");
    return t;
}

// ---- (-1,-1,-1) ----
Vec3 len_mmm(const Vec3& t)
{
    Vec3 l;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        l[i] = checked_acosh((cosh(t[i]) + cosh(t[j]) * cosh(t[k])) / (sinh(t[j]) * sinh(t[k])), "(-1,-1,-1)");
    }
    return l;
}
Vec3 ang_mmm(const Vec3& l)
{
    Vec3 t;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        t[i] = checked_acosh((cosh(l[i]) + cosh(l[j]) * cosh(l[k])) / (sinh(l[j]) * sinh(l[k])), "(-1,-1,-1)");
    }
    return t;
}

// ---- (1,1,0) ----
Vec3 len_110(const Vec3& t)
{
    Vec3 l;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        l[i] = checked_log(2.0 * (cos(t[i]) + cos(t[j])) / (t[2] * sin(t[j])), "(1,1,0)");
    }
    l[2] = checked_acosh((1.0 + cos(t[0]) * cos(t[1])) / (sin(t[0]) * sin(t[1])), "(1,1,0)");
    return l;
}
Vec3 ang_110(const Vec3& l)
{
    Vec3 t;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        t[i] = checked_acos((-exp(l[i]) + exp(l[j]) * cosh(l[2])) / (exp(l[j]) * sinh(l[2])), "(1,1,0)");
    }
    t[2] = checked_sqrt(8.0 * (cosh(l[2]) - cosh(l[0] - l[1])) / exp(l[0] + l[1]), "(1,1,0)");
    return t;
}

// ---- (1,-1,0) ----
Vec3 len_1m0(const Vec3& t)
{
    Vec3 l;
    l[0] = checked_log(2.0 * (cos(t[0]) + cosh(t[1])) / (t[2] * sinh(t[1])), "(1,-1,0)");
    l[1] = checked_log(2.0 * (cosh(t[1]) + cos(t[0])) / (t[2] * sin(t[0])), "(1,-1,0)");
    l[2] = checked_asinh_pos((1.0 + cos(t[0]) * cosh(t[1])) / (sin(t[0]) * sinh(t[1])), "(1,-1,0)");
    return l;
}
Vec3 ang_1m0(const Vec3& l)
{
    Vec3 t;
    t[0] = checked_acos((-exp(l[0]) + exp(l[1]) * sinh(l[2])) / (exp(l[1]) * cosh(l[2])), "(1,-1,0)");
    t[1] = checked_acosh((exp(l[1]) + exp(l[0]) * sinh(l[2])) / (exp(l[0]) * cosh(l[2])), "(1,-1,0)");
    t[2] = checked_sqrt(8.0 * (sinh(l[2]) + sinh(l[1] - l[0])) / exp(l[0] + l[1]), "(1,-1,0)");
    return t;
}

// ---- (-1,-1,0) ----
Vec3 len_mm0(const Vec3& t)
{
    Vec3 l;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        l[i] = checked_log(2.0 * (cosh(t[i]) + cosh(t[j])) / (t[2] * sinh(t[j])), "(-1,-1,0)");
    }
    l[2] = checked_acosh((1.0 + cosh(t[0]) * cosh(t[1])) / (sinh(t[0]) * sinh(t[1])), "(-1,-1,0)");
    return l;
}
Vec3 ang_mm0(const Vec3& l)
{
    Vec3 t;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        t[i] = checked_acosh((exp(l[i]) + exp(l[j]) * cosh(l[2])) / (exp(l[j]) * sinh(l[2])), "(-1,-1,0)");
    }
    t[2] = checked_sqrt(8.0 * (cosh(l[2]) + cosh(l[0] - l[1])) / exp(l[0] + l[1]), "(-1,-1,0)");
    return t;
}

// ---- (0,0,1) ----
Vec3 len_001(const Vec3& t)
{
    Vec3 l;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        l[i] = checked_log(2.0 * (1.0 + cos(t[2])) / (t[j] * sin(t[2])), "(0,0,1)");
    }
    l[2] = checked_log(2.0 * (1.0 + cos(t[2])) / (t[0] * t[1]), "(0,0,1)");
    return l;
}
Vec3 ang_001(const Vec3& l)
{
    Vec3 t;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        t[i] = 2.0 * checked_sqrt((exp(l[i]) - exp(l[2] - l[j])) / exp(l[j] + l[2]), "(0,0,1)");
    }
    const double s2 = exp(l[2] - l[0] - l[1]);
    if (s2 > 1.0) bad("(0,0,1): sin^2 of the half angle exceeds 1");
    t[2] = 2.0 * asin(checked_sqrt(s2, "(0,0,1)"));
    return t;
}

// ---- (0,0,-1) ----
Vec3 len_00m(const Vec3& t)
{
    Vec3 l;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        l[i] = checked_log(2.0 * (1.0 + cosh(t[2])) / (t[j] * sinh(t[2])), "(0,0,-1)");
    }
    l[2] = checked_log(2.0 * (1.0 + cosh(t[2])) / (t[0] * t[1]), "(0,0,-1)");
    return l;
}
Vec3 ang_00m(const Vec3& l)
{
    Vec3 t;
    for (int i = 0; i < 2; ++i) {
        const int j = 1 - i;
        t[i] = 2.0 * checked_sqrt((exp(l[i]) + exp(l[2] - l[j])) / exp(l[j] + l[2]), "(0,0,-1)");
    }
    t[2] = 2.0 * asinh(checked_sqrt(exp(l[2] - l[0] - l[1]), "(0,0,-1)"));
    return t;
}

// ---- (0,0,0) ----
Vec3 len_000(const Vec3& t)
{
    Vec3 l;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        l[i] = checked_log(4.0 / (t[j] * t[k]), "(0,0,0)");
    }
    return l;
}
Vec3 ang_000(const Vec3& l)
{
    Vec3 t;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        t[i] = 2.0 * exp(0.5 * (l[i] - l[j] - l[k]));
    }
    return t;
}

struct Box {
    std::array<int, 3> eps;
    Vec3 (*lengths)(const Vec3&);
    Vec3 (*angles)(const Vec3&);
};

constexpr std::array<Box, 10> kBoxes{{
    {{1, 1, 1}, len_111, ang_111},
    {{1, 1, -1}, len_11m, ang_11m},
    {{-1, -1, 1}, len_mm1, ang_mm1},
    {{-1, -1, -1}, len_mmm, ang_mmm},
    {{1, 1, 0}, len_110, ang_110},
    {{1, -1, 0}, len_1m0, ang_1m0},
    {{-1, -1, 0}, len_mm0, ang_mm0},
    {{0, 0, 1}, len_001, ang_001},
    {{0, 0, -1}, len_00m, ang_00m},
    {{0, 0, 0}, len_000, ang_000},
}};

constexpr std::array<std::array<int, 3>, 6> kPerms{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

struct Frame {
    const Box* box;
    std::array<int, 3> perm;  // canonical index i <- input index perm[i]
};

Frame find_frame(const TriangleType& type)
{
    for (const Box& box : kBoxes) {
        for (const auto& p : kPerms) {
            if (box.eps[0] == type.eps[p[0]] && box.eps[1] == type.eps[p[1]] &&
                box.eps[2] == type.eps[p[2]])
                return {&box, p};
        }
    }
    throw InputError("vertex types must each be -1, 0 or 1");
}

Vec3 to_frame(const Vec3& v, const std::array<int, 3>& p)
{
    return Vec3{v[p[0]], v[p[1]], v[p[2]]};
}

Vec3 from_frame(const Vec3& v, const std::array<int, 3>& p)
{
    Vec3 out{};
    for (int i = 0; i < 3; ++i) out[p[i]] = v[i];
    return out;
}

}  // namespace

Vec3 lengths_from_angles(const TriangleType& type, const Vec3& theta)
{
    const Frame f = find_frame(type);
    return from_frame(f.box->lengths(to_frame(theta, f.perm)), f.perm);
}

Vec3 angles_from_lengths(const TriangleType& type, const Vec3& len)
{
    const Frame f = find_frame(type);
    return from_frame(f.box->angles(to_frame(len, f.perm)), f.perm);
}

Triangle solve_from_angles(const TriangleType& type, const Vec3& theta)
{
    return Triangle{type, theta, lengths_from_angles(type, theta)};
}

Triangle solve_from_lengths(const TriangleType& type, const Vec3& len)
{
    return Triangle{type, angles_from_lengths(type, len), len};
}

}  // namespace genhyp::appendix
