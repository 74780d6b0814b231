#pragma once

#include <string>

namespace dnaclab::log
{

enum class Level
{
  Quiet = 0,
  Error = 1,
  Warn = 2,
  Info = 3,
  Debug = 4
};

// Verbosity comes from the DNACLAB_LOG environment variable
// (quiet|error|warn|info|debug), default warn. Can be overridden at runtime.
Level level();
void set_level(Level lvl);

void error(const std::string& msg);
void warn(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace dnaclab::log
