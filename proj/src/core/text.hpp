#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uso::text {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

// Shortest representation that parses back to the same double.
std::string shortest(double v);

// Fixed-point with `decimals` digits, rounding half away from zero on the
// decimal expansion of the shortest round-trip form (0.5355 -> "0.536").
std::string fixed_half_up(double v, int decimals);

}  // namespace uso::text
