#pragma once

#include <chrono>
#include <string>

namespace wargame::util {

// UTC timestamp with milliseconds, e.g. "2026-03-01T12:00:00.123Z".
std::string iso8601(std::chrono::system_clock::time_point t);
inline std::string iso8601_now() { return iso8601(std::chrono::system_clock::now()); }

}  // namespace wargame::util
