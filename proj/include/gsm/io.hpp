#pragma once

#include <string>

namespace gsm {

// Both throw ModelError naming the path on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gsm
