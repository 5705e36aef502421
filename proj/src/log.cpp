#include "calabi/log.hpp"

#include <cstdlib>
#include <iostream>

namespace calabi {

LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("CALABI_LOG");
        if (!env) return LogLevel::Info;
        std::string v(env);
        if (v == "quiet") return LogLevel::Quiet;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Info;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << msg << '\n';
}

} // namespace calabi
