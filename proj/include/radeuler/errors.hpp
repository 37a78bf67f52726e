#ifndef RADEULER_ERRORS_HPP
#define RADEULER_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace radeuler {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation (negative density, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration. Carries every problem found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::string message)
      : Error(message), messages_{std::move(message)} {}
  explicit ConfigError(std::vector<std::string> messages)
      : Error(join(messages)), messages_(std::move(messages)) {}

  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += "\n";
      out += parts[i];
    }
    return out;
  }
  std::vector<std::string> messages_;
};

/// Quadrature or Newton failure.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Density reached the positivity threshold. Signals under-resolution of the viscous run.
class PositivityError : public NumericalError {
 public:
  PositivityError(std::size_t node, double time, double value)
      : NumericalError("density " + std::to_string(value) + " at node " + std::to_string(node) +
                       " (t = " + std::to_string(time) + ") is not above the positivity threshold"),
        node_(node),
        time_(time),
        value_(value) {}

  std::size_t node() const noexcept { return node_; }
  double time() const noexcept { return time_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t node_;
  double time_;
  double value_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace radeuler

#endif  // RADEULER_ERRORS_HPP
