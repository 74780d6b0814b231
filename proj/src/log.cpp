#include "dnaclab/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace dnaclab::log
{

namespace
{

Level parse_env()
{
  const char* v = std::getenv("DNACLAB_LOG");
  if (!v)
    return Level::Warn;
  if (!std::strcmp(v, "quiet"))
    return Level::Quiet;
  if (!std::strcmp(v, "error"))
    return Level::Error;
  if (!std::strcmp(v, "warn"))
    return Level::Warn;
  if (!std::strcmp(v, "info"))
    return Level::Info;
  if (!std::strcmp(v, "debug"))
    return Level::Debug;
  return Level::Warn;
}

Level& current()
{
  static Level lvl = parse_env();
  return lvl;
}

void emit(const char* tag, const std::string& msg)
{
  std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
}

}  // namespace

Level level() { return current(); }
void set_level(Level lvl) { current() = lvl; }

void error(const std::string& msg)
{
  if (current() >= Level::Error)
    emit("error", msg);
}

void warn(const std::string& msg)
{
  if (current() >= Level::Warn)
    emit("warn", msg);
}

void info(const std::string& msg)
{
  if (current() >= Level::Info)
    emit("info", msg);
}

void debug(const std::string& msg)
{
  if (current() >= Level::Debug)
    emit("debug", msg);
}

}  // namespace dnaclab::log
