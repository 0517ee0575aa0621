#include "genhyp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace genhyp::verify {

namespace {

constexpr double kPi = std::numbers::pi;

// Acceptance margins for sampled triangles: distance from tau' branch
// points, and a cap on the sine-law products entering the determinant
// identities (those are checked in absolute error).
constexpr double kBranchMargin = 5e-3;
constexpr double kScaleCap = 60.0;
constexpr double kLengthCap = 4.0;

double rel_err(double a, double b)
{
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// FNV-1a; std::hash is implementation-defined and would break
// cross-platform reproducibility of seeded sampling.
std::uint64_t fnv1a(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void record(std::map<std::string, double>& worst, const std::string& key, double err)
{
    auto [it, inserted] = worst.emplace(key, err);
    if (!inserted) it->second = std::max(it->second, err);
}

std::pair<double, double> angle_range(int eps)
{
    switch (eps) {
        case 1: return {0.15, kPi - 0.15};
        case 0: return {0.5, 2.2};
        default: return {0.5, 1.8};
    }
}

}  // namespace

const std::vector<TriangleType>& canonical_types()
{
    static const std::vector<TriangleType> types = {
        TriangleType::of(1, 1, 1),   TriangleType::of(1, 1, 0),   TriangleType::of(1, 1, -1),
        TriangleType::of(1, 0, 0),   TriangleType::of(1, -1, 0),  TriangleType::of(1, -1, -1),
        TriangleType::of(0, 0, 0),   TriangleType::of(0, 0, -1),  TriangleType::of(0, -1, -1),
        TriangleType::of(-1, -1, -1)};
    return types;
}

std::vector<TriangleType> parse_types(const std::string& text)
{
    if (text == "all" || text.empty()) return canonical_types();
    std::vector<TriangleType> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        int e[3];
        char c1, c2;
        std::stringstream is(item);
        if (!(is >> e[0] >> c1 >> e[1] >> c2 >> e[2]) || c1 != ',' || c2 != ',')
            throw InputError("cannot parse triangle type '" + item + "' (expected e1,e2,e3)");
        out.push_back(TriangleType::of(e[0], e[1], e[2]));
    }
    if (out.empty()) throw InputError("empty type list");
    return out;
}

std::string type_name(const TriangleType& type)
{
    return "(" + std::to_string(type.eps[0]) + "," + std::to_string(type.eps[1]) + "," +
           std::to_string(type.eps[2]) + ")";
}

Triangle sample_triangle(const TriangleType& type, SplitMix64& rng)
{
    for (int attempt = 0; attempt < 200000; ++attempt) {
        Vec3 theta;
        for (int i = 0; i < 3; ++i) {
            const auto [lo, hi] = angle_range(type.eps[i]);
            theta[i] = rng.uniform(lo, hi);
        }
        // cosine-law values with branch margins
        Vec3 len;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            const double value =
                (trig::rho_prime(type.eps[i], theta[i]) +
                 trig::rho_prime(type.eps[j], theta[j]) * trig::rho_prime(type.eps[k], theta[k])) /
                (trig::rho(type.eps[j], theta[j]) * trig::rho(type.eps[k], theta[k]));
            const int sigma = type.edge_sign(i);
            if (sigma == 1) {
                ok = value >= 1.0 + kBranchMargin;
            } else {
                ok = value >= kBranchMargin;
            }
            if (ok) {
                len[i] = trig::invert_tau_prime(sigma, value);
                ok = std::abs(len[i]) <= kLengthCap;
            }
        }
        if (!ok) continue;
        // keep the determinant identities at a scale where absolute
        // tolerances are meaningful
        for (int i = 0; i < 3 && ok; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            const double s1 = std::abs(trig::tau(type.edge_sign(j), len[j]) *
                                       trig::tau(type.edge_sign(k), len[k]) *
                                       trig::rho(type.eps[i], theta[i]));
            const double s2 = std::abs(trig::rho(type.eps[j], theta[j]) *
                                       trig::rho(type.eps[k], theta[k]) *
                                       trig::tau(type.edge_sign(i), len[i]));
            ok = s1 <= kScaleCap && s2 <= kScaleCap;
        }
        if (!ok) continue;
        return Triangle{type, theta, len};
    }
    throw SizeError("triangle sampling stalled for type " + type_name(type));
}

namespace {

void check_sample(const TriangleType& type, const Triangle& tri, const Options& options,
                  bool with_jacobians, TypeReport& report)
{
    // boxed laws against the uniform laws, both directions
    {
        const Vec3 box_len = appendix::lengths_from_angles(type, tri.theta);
        const Vec3 box_theta = appendix::angles_from_lengths(type, tri.len);
        for (int i = 0; i < 3; ++i) {
            record(report.max_errors, "appendix_lengths", rel_err(box_len[i], tri.len[i]));
            record(report.max_errors, "appendix_angles", rel_err(box_theta[i], tri.theta[i]));
        }
    }
    // round trip through the uniform laws
    {
        const Vec3 back = trig::angles_from_lengths(type, tri.len);
        for (int i = 0; i < 3; ++i)
            record(report.max_errors, "roundtrip", rel_err(back[i], tri.theta[i]));
    }
    // determinant identities, every index choice
    {
        const double det_l = trig::gram_lengths(type, tri.len).determinant();
        const double det_t = trig::gram_angles(type, tri.theta).determinant();
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            const double rhs_l = trig::tau(type.edge_sign(j), tri.len[j]) *
                                 trig::tau(type.edge_sign(k), tri.len[k]) *
                                 trig::rho(type.eps[i], tri.theta[i]);
            const double rhs_t = trig::rho(type.eps[j], tri.theta[j]) *
                                 trig::rho(type.eps[k], tri.theta[k]) *
                                 trig::tau(type.edge_sign(i), tri.len[i]);
            record(report.max_errors, "det_gram_lengths", std::abs(det_l + rhs_l * rhs_l));
            record(report.max_errors, "det_gram_angles", std::abs(det_t + rhs_t * rhs_t));
        }
    }
    // sine-law ratio spread (relative)
    {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double ratio = trig::sine_ratio(tri, i);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        record(report.max_errors, "sine_spread", (hi - lo) / std::max(1.0, std::abs(hi)));
    }
    // third cosine law as a residual
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double rhs = (-type.eps[i] * trig::tau_prime(type.edge_sign(i), tri.len[i]) +
                            trig::tau_prime(type.edge_sign(j), tri.len[j]) *
                                trig::tau_prime(type.edge_sign(k), tri.len[k])) /
                           (trig::tau(type.edge_sign(j), tri.len[j]) *
                            trig::tau(type.edge_sign(k), tri.len[k]));
        record(report.max_errors, "cosine3",
               rel_err(trig::rho_prime(type.eps[i], tri.theta[i]), rhs));
    }
    // tau'^2 - tau^2 = s and rho'^2 + eps rho^2 = 1
    for (int i = 0; i < 3; ++i) {
        const int sigma = type.edge_sign(i);
        const double t = trig::tau(sigma, tri.len[i]);
        const double tp = trig::tau_prime(sigma, tri.len[i]);
        record(report.max_errors, "tau_square_identity", std::abs(tp * tp - t * t - sigma));
        const double r = trig::rho(type.eps[i], tri.theta[i]);
        const double rp = trig::rho_prime(type.eps[i], tri.theta[i]);
        record(report.max_errors, "rho_square_identity", std::abs(rp * rp + type.eps[i] * r * r - 1.0));
    }
    // derivative cosine law
    {
        const Eigen::Matrix3d dl = trig::dl_dtheta(tri);
        const Eigen::Matrix3d dt = trig::dtheta_dl(tri);
        record(report.max_errors, "jacobian_product",
               (dl * dt - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
        if (with_jacobians) {
            const double h = options.fd_step;
            for (int j = 0; j < 3; ++j) {
                Vec3 plus = tri.theta, minus = tri.theta;
                plus[j] += h;
                minus[j] -= h;
                const Vec3 lp = trig::lengths_from_angles(type, plus);
                const Vec3 lm = trig::lengths_from_angles(type, minus);
                for (int i = 0; i < 3; ++i)
                    record(report.max_errors, "jacobian_fd",
                           rel_err((lp[i] - lm[i]) / (2.0 * h), dl(i, j)));

                Vec3 lplus = tri.len, lminus = tri.len;
                lplus[j] += h;
                lminus[j] -= h;
                const Vec3 tp = trig::angles_from_lengths(type, lplus);
                const Vec3 tm = trig::angles_from_lengths(type, lminus);
                for (int i = 0; i < 3; ++i)
                    record(report.max_errors, "jacobian_fd",
                           rel_err((tp[i] - tm[i]) / (2.0 * h), dt(i, j)));
            }
        }
    }
}

}  // namespace

Report run(const std::vector<TriangleType>& types, const Options& options)
{
    if (options.samples < 1) throw InputError("samples must be >= 1");
    Report report;
    report.options = options;
    for (const TriangleType& type : types) {
        SplitMix64 rng(options.seed ^ fnv1a(type_name(type)));
        TypeReport tr;
        tr.type = type;
        tr.samples = options.samples;
        for (int n = 0; n < options.samples; ++n) {
            const Triangle tri = sample_triangle(type, rng);
            check_sample(type, tri, options, n < options.jacobian_samples, tr);
        }
        report.types.push_back(std::move(tr));
    }
    report.max_error = 0.0;
    report.max_fd_error = 0.0;
    for (const TypeReport& tr : report.types) {
        for (const auto& [key, err] : tr.max_errors) {
            if (key == "jacobian_fd")
                report.max_fd_error = std::max(report.max_fd_error, err);
            else
                report.max_error = std::max(report.max_error, err);
        }
    }
    report.pass =
        report.max_error <= options.tolerance && report.max_fd_error <= options.fd_tolerance;
    return report;
}

std::string Report::to_json() const
{
    nlohmann::ordered_json doc;
    doc["command"] = "verify-laws";
    doc["samples"] = options.samples;
    doc["jacobian_samples"] = options.jacobian_samples;
    doc["seed"] = options.seed;
    doc["tolerance"] = options.tolerance;
    doc["fd_tolerance"] = options.fd_tolerance;
    nlohmann::ordered_json types_json = nlohmann::ordered_json::array();
    for (const TypeReport& tr : types) {
        nlohmann::ordered_json t;
        t["type"] = type_name(tr.type);
        t["samples"] = tr.samples;
        nlohmann::ordered_json errs;
        for (const auto& [key, err] : tr.max_errors) errs[key] = err;  // std::map: sorted keys
        t["max_errors"] = std::move(errs);
        bool type_pass = true;
        for (const auto& [key, err] : tr.max_errors)
            type_pass = type_pass &&
                        err <= (key == "jacobian_fd" ? options.fd_tolerance : options.tolerance);
        t["pass"] = type_pass;
        types_json.push_back(std::move(t));
    }
    doc["types"] = std::move(types_json);
    doc["max_error"] = max_error;
    doc["max_fd_error"] = max_fd_error;
    doc["pass"] = pass;
    return doc.dump(1) + "\n";
}

}  // namespace genhyp::verify
