#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lsii {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A parameter lies outside its admissible box.
class OutOfBounds : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The data cannot support the requested estimate (zero denominator,
/// singular Gram matrix, constant series).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// An optimizer exhausted all restarts. The best point found is attached.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, std::vector<double> best_point, double best_value)
        : Error(what), best_point_(std::move(best_point)), best_value_(best_value) {}

    const std::vector<double>& best_point() const noexcept { return best_point_; }
    double best_value() const noexcept { return best_value_; }

private:
    std::vector<double> best_point_;
    double best_value_;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace lsii
