#include "dcost/format.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "dcost/errors.hpp"

namespace dcost {

std::string format_double(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    if (!out) throw ConfigError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    throw ConfigError("cannot move '" + tmp.string() + "' to '" + path + "': " + ec.message());
  }
}

}  // namespace dcost
