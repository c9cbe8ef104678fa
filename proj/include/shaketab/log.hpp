#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace shaketab::log {

enum class Level { quiet = 0, info = 1, debug = 2 };

/// Parsed once from SHAKETAB_LOG (quiet|info|debug); defaults to info.
inline Level level() {
  static const Level lvl = [] {
    const char* env = std::getenv("SHAKETAB_LOG");
    if (env == nullptr) return Level::info;
    if (std::strcmp(env, "quiet") == 0) return Level::quiet;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    return Level::info;
  }();
  return lvl;
}

inline void info(const std::string& msg) {
  if (level() >= Level::info) std::fprintf(stderr, "[shaketab] %s\n", msg.c_str());
}

inline void debug(const std::string& msg) {
  if (level() >= Level::debug) std::fprintf(stderr, "[shaketab:debug] %s\n", msg.c_str());
}

}  // namespace shaketab::log
