#pragma once

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>

namespace wardowski {

/// Verbosity from the WARDOWSKI_LOG environment variable:
/// unset/empty = quiet, "info"/"1" = info, "debug" = everything.
inline int log_level() {
    static const int level = [] {
        const char* v = std::getenv("WARDOWSKI_LOG");
        if (!v) return 0;
        const std::string s(v);
        if (s == "debug") return 2;
        if (s == "info" || s == "1") return 1;
        return 0;
    }();
    return level;
}

inline std::mutex& log_mutex() {
    static std::mutex m;
    return m;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= 1) {
        std::lock_guard<std::mutex> g(log_mutex());
        std::fprintf(stderr, "[wardowski] %s\n", msg.c_str());
    }
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= 2) {
        std::lock_guard<std::mutex> g(log_mutex());
        std::fprintf(stderr, "[wardowski:debug] %s\n", msg.c_str());
    }
}

} // namespace wardowski
