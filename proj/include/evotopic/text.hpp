#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace evotopic::text {

/// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string fold_case(std::string_view s);

std::string_view trim(std::string_view s);

/// Trim, collapse inner whitespace runs to one space, fold case.
std::string canonical_label(std::string_view s);

/// Case-insensitive (ASCII) substring test. `needle_folded` must already be folded.
bool contains_folded(std::string_view haystack, std::string_view needle_folded);

std::vector<std::string> split(std::string_view s, char sep);

/// Split on a multi-character separator.
std::vector<std::string> split(std::string_view s, std::string_view sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

}  // namespace evotopic::text
