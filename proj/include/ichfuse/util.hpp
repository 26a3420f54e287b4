#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ichfuse::util {

// Shortest representation that parses back to the identical double.
std::string format_double(double v);

// Strict, locale-independent parse of a full token. Throws DataError on junk.
double parse_double(std::string_view token, const std::string& context);

std::vector<std::string> split_csv_line(const std::string& line);
std::string trim(std::string_view s);

std::string read_file(const std::string& path);

// Writes via <path>.tmp then renames, so a failed run leaves no partial file.
void atomic_write_file(const std::string& path, const std::string& content);

uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);
std::string file_checksum(const std::string& path);

}  // namespace ichfuse::util
