#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdcsim {

// Base of every exception the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument did not hold (negative count, bad shape, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// Two points that must be separated in altitude (or space) are not.
class InvalidGeometry : public Error {
public:
  using Error::Error;
};

// The greedy walk hit a node with no legal successor.
class NoPathAvailable : public Error {
public:
  using Error::Error;
};

// A link was queried that the realization holds no LoS/fading state for.
class MissingLinkState : public Error {
public:
  using Error::Error;
};

// Configuration problem. Carries the offending key and the 1-based line
// number in the source document (0 when the value came from elsewhere).
class ConfigError : public Error {
public:
  ConfigError(std::string key, std::size_t line, const std::string& what)
      : Error(format(key, line, what)), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

private:
  static std::string format(const std::string& key, std::size_t line, const std::string& what) {
    std::string msg;
    if (line > 0) msg += "line " + std::to_string(line) + ": ";
    if (!key.empty()) msg += "'" + key + "': ";
    return msg + what;
  }

  std::string key_;
  std::size_t line_;
};

}  // namespace pdcsim
