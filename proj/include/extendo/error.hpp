#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace extendo {

/// Outcome classes for rejected inputs. The CLI maps every InputError to exit code 2.
enum class InputErrorCode {
    domain,               // NaN or out-of-range argument
    invalid_curve,        // malformed term structure
    curve_horizon,        // query beyond the last segment
    invalid_contract,     // strikes, dates or fee out of range
    unsupported_setting,  // e.g. erratum reconstructions on time-dependent curves
    parse,                // unreadable input file
};

std::string_view to_string(InputErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    InputError(InputErrorCode code, const std::string& what) : Error(what), code_(code) {}
    InputErrorCode code() const noexcept { return code_; }

private:
    InputErrorCode code_;
};

/// A root search that did not converge. Carries the last bracket it held.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double lo, double hi) : Error(what), lo_(lo), hi_(hi) {}
    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

}  // namespace extendo
