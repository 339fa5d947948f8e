#pragma once

#include <stdexcept>
#include <string>

namespace vtsa {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Violated precondition on operation inputs (non-membership, degree
// mismatch, invalid partition, ...).
class InputError : public Error {
public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// A configured resource limit (element budget, point cap, order cap) would
// be exceeded; the computation was refused, not attempted.
class CapError : public Error {
public:
  explicit CapError(const std::string& what) : Error(what) {}
};

// Malformed external input (files, expressions); carries a 1-based line
// number when one is known.
class FormatError : public Error {
public:
  FormatError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

}  // namespace vtsa
