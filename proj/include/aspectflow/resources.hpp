#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace aspectflow {

// Default copies of the files under data/, compiled into the library.
namespace embedded {
std::string_view connectives();
std::string_view pos_lexicon();
std::string_view aspect_stoplist();
}  // namespace embedded

// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes through a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace aspectflow
