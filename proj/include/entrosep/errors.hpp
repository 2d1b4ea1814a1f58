#pragma once

#include <stdexcept>
#include <string>

namespace entrosep {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidFamilyParamsError : public Error {
 public:
  using Error::Error;
};

class BadSubsystemSetError : public Error {
 public:
  using Error::Error;
};

class BadSubsystemIndexError : public Error {
 public:
  using Error::Error;
};

class InvalidDistributionError : public Error {
 public:
  using Error::Error;
};

class DegenerateNormalizationError : public Error {
 public:
  using Error::Error;
};

class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

class UnknownTagError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line) : Error(format(what, line)), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(-1) {}
  long line() const { return line_; }

 private:
  static std::string format(const std::string& what, long line) {
    return "line " + std::to_string(line) + ": " + what;
  }
  long line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace entrosep
