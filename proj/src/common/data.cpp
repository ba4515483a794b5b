#include "picdesc/data.hpp"

#include <cstdlib>
#include <fstream>

#include "picdesc/errors.hpp"

namespace picdesc {

std::filesystem::path data_root() {
  if (const char* env = std::getenv("PICDESC_DATA"); env && *env) return env;
  return PICDESC_DEFAULT_DATA;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const Json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Json read_json(const std::filesystem::path& relative) { return read_json_file(data_root() / relative); }

}  // namespace picdesc
