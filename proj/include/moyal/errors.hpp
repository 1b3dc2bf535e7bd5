#pragma once

#include <stdexcept>
#include <string>

namespace moyal {

// Error taxonomy shared by the library and the CLI exit-code contract.
enum class ErrorKind {
    invalid_parameter,   // bad argument / validation failure      (CLI exit 2)
    grid_too_small,      // state does not fit the requested box   (CLI exit 2)
    parse_error,         // malformed input file                   (CLI exit 3)
    support_overflow,    // shifted support leaks past the box     (CLI exit 2)
    non_hermitian_input, // Hermiticity invariant violated         (CLI exit 2)
    unstable_step,       // time step outside the stability bound  (CLI exit 4)
    truncation_range,    // argument beyond the calibrated range   (CLI exit 2)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& what) : Error(ErrorKind::invalid_parameter, what) {}
};
struct GridTooSmall : Error {
    explicit GridTooSmall(const std::string& what) : Error(ErrorKind::grid_too_small, what) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ErrorKind::parse_error, what) {}
};
struct SupportOverflow : Error {
    explicit SupportOverflow(const std::string& what) : Error(ErrorKind::support_overflow, what) {}
};
struct NonHermitianInput : Error {
    explicit NonHermitianInput(const std::string& what) : Error(ErrorKind::non_hermitian_input, what) {}
};
struct UnstableStep : Error {
    UnstableStep(const std::string& what, long step) : Error(ErrorKind::unstable_step, what), step_index(step) {}
    long step_index;
};
struct TruncationRange : Error {
    explicit TruncationRange(const std::string& what) : Error(ErrorKind::truncation_range, what) {}
};

} // namespace moyal
