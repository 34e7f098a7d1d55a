#pragma once

#include <stdexcept>
#include <string>

namespace mislab {

// Machine-readable error codes. Domain errors map to CLI exit code 2,
// budget guards to exit code 3.
enum class errc {
    invalid_spec,
    reducible_matrix,
    non_convergence,
    not_irreducible,
    not_mixing,
    out_of_box,
    zero_tau,
    degenerate_region,
    target_out_of_range,
    degenerate_interval,
    bad_weights,
    empty_states,
    parse_error,
    // budget guards
    box_too_large,
    result_too_large,
    too_large,
    precision_budget_exceeded,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_spec: return "InvalidSpec";
        case errc::reducible_matrix: return "ReducibleMatrix";
        case errc::non_convergence: return "NonConvergence";
        case errc::not_irreducible: return "NotIrreducible";
        case errc::not_mixing: return "NotMixing";
        case errc::out_of_box: return "OutOfBox";
        case errc::zero_tau: return "ZeroTau";
        case errc::degenerate_region: return "DegenerateRegion";
        case errc::target_out_of_range: return "TargetOutOfRange";
        case errc::degenerate_interval: return "DegenerateInterval";
        case errc::bad_weights: return "BadWeights";
        case errc::empty_states: return "EmptyStates";
        case errc::parse_error: return "ParseError";
        case errc::box_too_large: return "BoxTooLarge";
        case errc::result_too_large: return "ResultTooLarge";
        case errc::too_large: return "TooLarge";
        case errc::precision_budget_exceeded: return "PrecisionBudgetExceeded";
    }
    return "Unknown";
}

inline bool is_budget_error(errc c) {
    switch (c) {
        case errc::box_too_large:
        case errc::result_too_large:
        case errc::too_large:
        case errc::precision_budget_exceeded: return true;
        default: return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace mislab
