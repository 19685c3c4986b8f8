#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace arminer::io {

// Throws DataError naming the path when the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace arminer::io
