#pragma once

#include <string>

namespace mlrgg {

// Whole-file read; throws IoError when the file cannot be opened or read.
std::string read_file(const std::string& path);

// Writes via a sibling temp file and rename, so the destination is never
// observed half-written. Throws IoError on any filesystem failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mlrgg
