#pragma once

#include <string>

namespace optmon {

// Reads a whole file; throws optmon::Error if it cannot be opened.
std::string read_file(const std::string &path);

void write_file(const std::string &path, const std::string &contents);

}  // namespace optmon
