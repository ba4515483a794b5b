#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace picdesc {

using Json = nlohmann::json;

// Dataset root: $PICDESC_DATA if set, else the data/ directory of the source tree.
std::filesystem::path data_root();

// Parses <root>/<relative>; wraps IO and syntax failures in DataError.
Json read_json(const std::filesystem::path& relative);
Json read_json_file(const std::filesystem::path& path);

}  // namespace picdesc
