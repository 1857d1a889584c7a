#pragma once

#include <stdexcept>
#include <string>

namespace legflow {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments or configuration (maps to exit code 1 in the CLI).
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// A stated precondition does not hold (non-immersed curve, non-Legendrian
// input to a flow, degenerate projection, ...).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Strict convexity required but violated; carries where it failed.
class ConvexityError : public Error {
public:
    ConvexityError(const std::string& msg, double where) : Error(msg), where_(where) {}
    double where() const { return where_; }

private:
    double where_;
};

// Flow speed 1/k (or 1/k^2) blew up: genuine breakdown, not a solver bug.
// Carries the time reached and the offending sample.
class SingularityError : public Error {
public:
    SingularityError(const std::string& msg, double t, int sample)
        : Error(msg), time_(t), sample_(sample) {}
    double time() const { return time_; }
    int sample() const { return sample_; }

private:
    double time_;
    int sample_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Malformed file; line() is 1-based.
class ParseError : public IoError {
public:
    ParseError(const std::string& msg, int line) : IoError(msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace legflow
