#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scoutnav::io {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict parse of a whole field; throws InvalidInput on trailing garbage.
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view line, char delimiter);

/// Splits into lines, dropping a trailing '\r' on each and the final empty line.
std::vector<std::string_view> lines(std::string_view text);

std::string read_file(const std::filesystem::path& path);

/// Writes atomically enough for the artifact readers: to a sibling temp file,
/// then renamed over the target.  Creates parent directories.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace scoutnav::io
