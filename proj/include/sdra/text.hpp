#pragma once

#include <filesystem>
#include <string>

namespace sdra {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// Throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace sdra
