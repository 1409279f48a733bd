#pragma once

#include <stdexcept>
#include <string>

namespace d2d {

// Bad argument or malformed input file. CLI maps this to exit code 1.
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// A numeric routine could not produce a result it is contracted to produce
// (e.g. no sign change when bracketing a root). CLI maps this to exit code 2.
class SolverFailure : public std::runtime_error {
public:
    explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace d2d
