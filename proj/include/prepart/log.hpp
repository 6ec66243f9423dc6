#pragma once

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace prepart {

// Diagnostic verbosity from the PREPART_LOG environment variable:
// 0 or unset = silent, 1 = progress notes, 2 = per-decision detail.
// Everything goes to stderr so machine-readable stdout stays clean.
inline int log_level() {
  static const int level = [] {
    const char* raw = std::getenv("PREPART_LOG");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || v < 0) return 0;
    return static_cast<int>(v > 2 ? 2 : v);
  }();
  return level;
}

inline void log_info(std::string_view msg) {
  if (log_level() >= 1) std::cerr << "[prepart] " << msg << '\n';
}

inline void log_debug(std::string_view msg) {
  if (log_level() >= 2) std::cerr << "[prepart:debug] " << msg << '\n';
}

}  // namespace prepart
