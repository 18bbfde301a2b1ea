#pragma once

#include <stdexcept>
#include <string>

namespace difflearn {

// Base for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidRange : public Error {
 public:
  using Error::Error;
};

class DomainViolation : public Error {
 public:
  using Error::Error;
};

class TopologyUnconnectable : public Error {
 public:
  using Error::Error;
};

class TruncationExhausted : public Error {
 public:
  using Error::Error;
};

class ZeroMass : public Error {
 public:
  using Error::Error;
};

class IOFailure : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  ConfigInvalid(std::string field, std::string reason, int line = 0)
      : Error(format(field, reason, line)),
        field_(std::move(field)),
        reason_(std::move(reason)),
        line_(line) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& reason() const noexcept { return reason_; }
  // 1-based line of the offending key in the source text, 0 if unknown.
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& reason,
                            int line) {
    std::string out = "config invalid: " + field + ": " + reason;
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    return out;
  }

  std::string field_;
  std::string reason_;
  int line_;
};

}  // namespace difflearn
