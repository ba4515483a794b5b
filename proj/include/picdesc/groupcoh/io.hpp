#pragma once

#include <memory>
#include <string>

#include "picdesc/data.hpp"
#include "picdesc/groupcoh/module.hpp"

namespace picdesc::groupcoh {

// groups/<name>.json: {"name", "modulus", "generators": [{"name", "matrix": [[a,b],[c,d]]}]}
std::shared_ptr<const FiniteMatrixGroup> group_from_json(const Json& j);
std::shared_ptr<const FiniteMatrixGroup> load_group(const std::string& name);

// modules/<name>.json: {"name", "group", "orders", "labels", "actions": {gen: rows}} or "trivial": true.
GModule module_from_json(const Json& j);
GModule load_module(const std::string& name);

IntMatrix matrix_from_json(const Json& rows);

}  // namespace picdesc::groupcoh
