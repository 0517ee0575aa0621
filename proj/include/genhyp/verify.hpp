#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "genhyp/rng.hpp"
#include "genhyp/trig.hpp"

namespace genhyp::verify {

/// The ten triangle types up to permutation, in a fixed order.
const std::vector<TriangleType>& canonical_types();

/// "all", "1,1,-1" or a ';'-separated list of such triples.
std::vector<TriangleType> parse_types(const std::string& text);

std::string type_name(const TriangleType& type);

/// Rejection-sample a valid triangle of the given type. Margins keep the
/// samples away from branch points and keep Gram-scale quantities at desk
/// scale so that the absolute determinant identities are meaningful.
Triangle sample_triangle(const TriangleType& type, SplitMix64& rng);

struct Options {
    int samples = 1000;
    int jacobian_samples = 200;
    std::uint64_t seed = 7;
    double tolerance = 1e-9;
    double fd_step = 1e-6;
    double fd_tolerance = 1e-5;  // finite-difference checks have their own bar
};

struct TypeReport {
    TriangleType type;
    int samples = 0;
    std::map<std::string, double> max_errors;  // identity -> worst error seen
};

struct Report {
    Options options;
    std::vector<TypeReport> types;
    bool pass = false;
    double max_error = 0.0;     // over non-finite-difference identities
    double max_fd_error = 0.0;  // over finite-difference identities

    std::string to_json() const;  // stable key order, deterministic bytes
};

/// Exercise cosine/sine-law agreement (uniform vs boxed per-type laws),
/// Gram determinant identities, the derivative cosine law against central
/// finite differences, and the tau/rho square identities.
Report run(const std::vector<TriangleType>& types, const Options& options);

}  // namespace genhyp::verify
