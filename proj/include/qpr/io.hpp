#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qpr {

std::string base64_encode(std::span<const unsigned char> bytes);
std::vector<unsigned char> base64_decode(const std::string& text);

// little-endian doubles <-> base64 (checkpoint parameter arrays)
std::string doubles_to_base64(std::span<const double> values);
std::vector<double> base64_to_doubles(const std::string& text);

std::string sha256_hex(const std::string& data);

// %.12g / %.17g formatting used by CSV writers
std::string fmt_g12(double v);
std::string fmt_g17(double v);

std::string read_text_file(const std::string& path);
// writes to path + ".tmp" then renames, so partial output never lands
void write_text_file_atomic(const std::string& path, const std::string& content);

}  // namespace qpr
