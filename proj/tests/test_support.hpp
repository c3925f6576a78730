#pragma once

#include <filesystem>
#include <string>

#ifndef ASPECTFLOW_SOURCE_DIR
#error "ASPECTFLOW_SOURCE_DIR must be defined by the build"
#endif

namespace aspectflow::test {

inline std::filesystem::path source_dir() { return ASPECTFLOW_SOURCE_DIR; }
inline std::filesystem::path data_path(const std::string& rel) { return source_dir() / "data" / rel; }
inline std::filesystem::path fixture_path(const std::string& rel) { return source_dir() / "tests" / "fixtures" / rel; }

}  // namespace aspectflow::test
