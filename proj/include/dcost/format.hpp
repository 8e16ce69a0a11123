#pragma once

#include <string>

namespace dcost {

/// Shortest decimal string that parses back to exactly x (at most 17 significant digits).
std::string format_double(double x);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace dcost
