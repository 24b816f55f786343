#pragma once

#include <stdexcept>
#include <string>

namespace pond {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller handed in values outside an operation's contract.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed input data (CSV rows, scenario series).
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(what + " at line " + std::to_string(line)), line_(line) {}
    explicit ParseError(const std::string& what) : Error(what) {}

    /// 1-based line number, 0 when not tied to a line.
    int line() const noexcept { return line_; }

private:
    int line_ = 0;
};

/// Missing/unknown/unparsable configuration, or inconsistent settings.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File system failures, always carrying the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

/// The solver could not certify its answer.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The storm cannot be stored even when releasing at q_max throughout.
class InfeasiblePlanError : public Error {
public:
    explicit InfeasiblePlanError(double deficit_m3)
        : Error("outflow plan infeasible: at least " + std::to_string(deficit_m3) +
                " m3 must spill even at maximum outflow"),
          deficit_(deficit_m3) {}

    /// Lower bound on the volume that cannot be kept below h_max (m3).
    double deficit() const noexcept { return deficit_; }

private:
    double deficit_;
};

}  // namespace pond
