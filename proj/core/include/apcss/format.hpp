#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace apcss {

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);

/// Parses the whole of `text` as a double; throws InvalidArgument naming
/// `field` on failure.
double parse_double(std::string_view text, std::string_view field);

/// Parses the whole of `text` as an unsigned 64-bit integer.
std::uint64_t parse_uint(std::string_view text, std::string_view field);

}  // namespace apcss
