#pragma once
#include <string>

namespace calabi {

// Verbosity from the CALABI_LOG environment variable: quiet | info | debug.
enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

} // namespace calabi
