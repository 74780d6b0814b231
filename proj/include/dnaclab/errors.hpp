#pragma once

#include <stdexcept>
#include <string>

namespace dnaclab
{

// Bad configuration (shape mismatch, invalid gain, malformed scenario file).
class ConfigError : public std::runtime_error
{
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite or otherwise invalid runtime input.
class InputError : public std::runtime_error
{
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Batch training produced non-finite values; recoverable by discarding the pass.
class TrainingError : public std::runtime_error
{
public:
  explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Simulation left the valid flight envelope or produced non-finite state.
class CrashFault : public std::runtime_error
{
public:
  CrashFault(const std::string& msg, double t) : std::runtime_error(msg), time_s(t) {}
  double time_s;
};

}  // namespace dnaclab
