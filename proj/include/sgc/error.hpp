#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad caller input (k out of range, unknown kind, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Something is wrong with the data itself.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A method could not produce a result on otherwise valid data.
class MethodError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public MethodError {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : MethodError(what + " (best residual " + std::to_string(best_residual) + ")"),
        best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

class DefinitenessError : public MethodError {
 public:
  using MethodError::MethodError;
};

}  // namespace sgc
