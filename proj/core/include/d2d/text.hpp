#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace d2d {

// Shortest decimal form that parses back to the identical double. All file
// formats in this library use these two functions so that save/load cycles
// are bit-exact.
std::string format_double(double x);
double parse_double(std::string_view token, const std::string& context);

std::int64_t parse_int(std::string_view token, const std::string& context);
std::uint64_t parse_uint(std::string_view token, const std::string& context);

}  // namespace d2d
