#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wfront::io {

// Shortest decimal form that round-trips a double exactly.
std::string fmt_double(double v);

// Splits one CSV line on commas; no quoting (the toolkit's formats never
// quote fields). Trims surrounding whitespace from each field.
std::vector<std::string> split_csv(const std::string& line);

double parse_double(const std::string& s, const std::string& context);
long parse_long(const std::string& s, const std::string& context);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
bool file_exists(const std::string& path);
void ensure_dir(const std::string& path);

// FNV-1a over the file bytes, hex-encoded. Used for pipeline stage resumption.
std::string file_hash(const std::string& path);
std::string bytes_hash(const std::string& bytes);

}  // namespace wfront::io
