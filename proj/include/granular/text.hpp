#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace granular::text {

/// Shortest decimal representation that parses back to the same double.
std::string shortest(double value);

/// Parses a full string as a double (surrounding whitespace allowed). Throws ValidationError.
double parse_double(std::string_view s);

/// Splits "0,0.5,1" into doubles. Throws ValidationError on any bad field.
std::vector<double> parse_list(std::string_view s);

std::string_view trim(std::string_view s) noexcept;

}  // namespace granular::text
