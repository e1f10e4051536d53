#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xproc {

// Base for all library errors. Callers that only care about "something in
// xproc went wrong" catch this; the CLI maps it to exit status 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class DisconnectedGraph : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    CapExceeded(std::uint64_t states, std::uint64_t cap)
        : Error("level has " + std::to_string(states) + " states, cap is " + std::to_string(cap)),
          states_(states), cap_(cap) {}

    std::uint64_t states() const { return states_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t states_;
    std::uint64_t cap_;
};

class SymmetryViolation : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double max_off_diagonal)
        : Error(what), max_off_diagonal_(max_off_diagonal) {}

    double max_off_diagonal() const { return max_off_diagonal_; }

private:
    double max_off_diagonal_;
};

// A theorem's hypothesis does not hold for the requested parameters, so the
// quantity it controls would be meaningless.
class HypothesisViolation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace xproc
