#ifndef IMCAUG_UTIL_LOG_HPP
#define IMCAUG_UTIL_LOG_HPP

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace imcaug::log {

enum class Level { Quiet = 0, Info = 1, Debug = 2 };

// Controlled by IMCAUG_LOG=info|debug; anything else is quiet.
inline Level level() {
  static Level lvl = [] {
    const char* env = std::getenv("IMCAUG_LOG");
    if (env == nullptr) return Level::Quiet;
    if (std::strcmp(env, "debug") == 0) return Level::Debug;
    if (std::strcmp(env, "info") == 0) return Level::Info;
    return Level::Quiet;
  }();
  return lvl;
}

template <typename... Args>
void info(const char* fmt, Args... args) {
  if (level() >= Level::Info) {
    std::fprintf(stderr, "[imcaug] ");
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
  }
}

template <typename... Args>
void debug(const char* fmt, Args... args) {
  if (level() >= Level::Debug) {
    std::fprintf(stderr, "[imcaug:debug] ");
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
  }
}

}  // namespace imcaug::log

#endif
