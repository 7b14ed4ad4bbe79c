#pragma once

#include <stdexcept>
#include <string>

namespace tauberkit {

enum class errc {
    sum_not_one,
    invalid_atom_at_zero,
    empty_support,
    tail_mass_present,
    step_mismatch,
    n_negative,
    x_too_large,
    divergent_region,
    tail_unbounded,
    truncation_unbounded,
    outside_disc,
    h_not_grid_aligned,
    grid_too_coarse,
    empty_grid,
    odd_intervals,
    evaluator_failure,
    nonconvergent,
    schedule_not_converged,
    bad_input,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::sum_not_one:            return "SUM_NOT_ONE";
        case errc::invalid_atom_at_zero:   return "INVALID_ATOM_AT_ZERO";
        case errc::empty_support:          return "EMPTY_SUPPORT";
        case errc::tail_mass_present:      return "TAIL_MASS_PRESENT";
        case errc::step_mismatch:          return "STEP_MISMATCH";
        case errc::n_negative:             return "N_NEGATIVE";
        case errc::x_too_large:            return "X_TOO_LARGE";
        case errc::divergent_region:       return "DIVERGENT_REGION";
        case errc::tail_unbounded:         return "TAIL_UNBOUNDED";
        case errc::truncation_unbounded:   return "TRUNCATION_UNBOUNDED";
        case errc::outside_disc:           return "OUTSIDE_DISC";
        case errc::h_not_grid_aligned:     return "H_NOT_GRID_ALIGNED";
        case errc::grid_too_coarse:        return "GRID_TOO_COARSE";
        case errc::empty_grid:             return "EMPTY_GRID";
        case errc::odd_intervals:          return "ODD_INTERVALS";
        case errc::evaluator_failure:      return "EVALUATOR_FAILURE";
        case errc::nonconvergent:          return "NONCONVERGENT";
        case errc::schedule_not_converged: return "SCHEDULE_NOT_CONVERGED";
        case errc::bad_input:              return "BAD_INPUT";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace tauberkit
