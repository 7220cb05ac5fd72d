#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wargame::util {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string replace_all(std::string s, std::string_view from, std::string_view to);
bool starts_with_icase(std::string_view s, std::string_view prefix);
std::size_t word_count(std::string_view s);
// Formats with fixed decimals, e.g. format_fixed(0.5, 2) == "0.50".
std::string format_fixed(double value, int decimals);

}  // namespace wargame::util
