#include "apcss/format.hpp"

#include <charconv>
#include <cmath>

#include "apcss/errors.hpp"

namespace apcss {

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

double parse_double(std::string_view text, std::string_view field) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("field '" + std::string(field) + "': cannot parse '" +
                          std::string(text) + "' as a number");
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, std::string_view field) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("field '" + std::string(field) + "': cannot parse '" +
                          std::string(text) + "' as a non-negative integer");
  }
  return value;
}

}  // namespace apcss
