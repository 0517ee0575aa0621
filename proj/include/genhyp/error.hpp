#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace genhyp {

enum class ErrorCode {
    input,
    parse,
    validation,
    domain,
    degenerate,
    realizability,
    infeasible,
    convergence,
    unsupported,
    size,
    overflow,
    quadrature,
    domain_exit,
};

constexpr const char* error_code_name(ErrorCode code) noexcept
{
    switch (code) {
        case ErrorCode::input: return "input";
        case ErrorCode::parse: return "parse";
        case ErrorCode::validation: return "validation";
        case ErrorCode::domain: return "domain";
        case ErrorCode::degenerate: return "degenerate";
        case ErrorCode::realizability: return "realizability";
        case ErrorCode::infeasible: return "infeasible";
        case ErrorCode::convergence: return "convergence";
        case ErrorCode::unsupported: return "unsupported";
        case ErrorCode::size: return "size";
        case ErrorCode::overflow: return "overflow";
        case ErrorCode::quadrature: return "quadrature";
        case ErrorCode::domain_exit: return "domain-exit";
    }
    return "unknown";
}

/// Base of all library errors. `detail()` optionally carries a JSON payload
/// (e.g. a violating edge cycle, or solver diagnostics).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }
    Error& with_detail(std::string json)
    {
        detail_ = std::move(json);
        return *this;
    }

private:
    ErrorCode code_;
    std::string detail_;
};

#define GENHYP_DEFINE_ERROR(Name, code)                                          \
    struct Name : Error {                                                        \
        explicit Name(const std::string& m) : Error(ErrorCode::code, m) {}       \
    }

GENHYP_DEFINE_ERROR(InputError, input);
GENHYP_DEFINE_ERROR(ParseError, parse);
GENHYP_DEFINE_ERROR(ValidationError, validation);
GENHYP_DEFINE_ERROR(DomainError, domain);
GENHYP_DEFINE_ERROR(DegenerateError, degenerate);
GENHYP_DEFINE_ERROR(RealizabilityError, realizability);
GENHYP_DEFINE_ERROR(InfeasibleError, infeasible);
GENHYP_DEFINE_ERROR(ConvergenceError, convergence);
GENHYP_DEFINE_ERROR(UnsupportedCaseError, unsupported);
GENHYP_DEFINE_ERROR(SizeError, size);
GENHYP_DEFINE_ERROR(OverflowError, overflow);
GENHYP_DEFINE_ERROR(QuadratureError, quadrature);
GENHYP_DEFINE_ERROR(DomainExitError, domain_exit);

#undef GENHYP_DEFINE_ERROR

}  // namespace genhyp
