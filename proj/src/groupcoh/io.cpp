#include "picdesc/groupcoh/io.hpp"

#include "picdesc/errors.hpp"

namespace picdesc::groupcoh {

IntMatrix matrix_from_json(const Json& rows) {
  if (!rows.is_array()) throw DataError("matrix must be a list of rows");
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DataError("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j].get<long>();
  }
  return m;
}

std::shared_ptr<const FiniteMatrixGroup> group_from_json(const Json& j) {
  try {
    std::vector<std::pair<std::string, Mat2>> gens;
    for (const auto& g : j.at("generators")) {
      const auto& m = g.at("matrix");
      gens.push_back({g.at("name").get<std::string>(),
                      Mat2{m.at(0).at(0).get<long>(), m.at(0).at(1).get<long>(), m.at(1).at(0).get<long>(),
                           m.at(1).at(1).get<long>()}});
    }
    auto grp = std::make_shared<FiniteMatrixGroup>(j.at("modulus").get<long>(), gens, j.at("name").get<std::string>());
    if (j.contains("order") && grp->order() != j["order"].get<std::size_t>())
      throw DataError("group " + grp->name() + " has order " + std::to_string(grp->order()) + ", declared " +
                      j["order"].dump());
    return grp;
  } catch (const Json::exception& e) {
    throw DataError(std::string("group dataset: ") + e.what());
  }
}

std::shared_ptr<const FiniteMatrixGroup> load_group(const std::string& name) {
  return group_from_json(read_json("groups/" + name + ".json"));
}

GModule module_from_json(const Json& j) {
  try {
    auto grp = load_group(j.at("group").get<std::string>());
    std::vector<Int> orders;
    for (const auto& o : j.at("orders")) orders.push_back(o.get<long>());
    std::string name = j.at("name").get<std::string>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    std::vector<IntMatrix> acts;
    if (j.value("trivial", false)) {
      acts.assign(grp->generators().size(), IntMatrix::identity(orders.size()));
    } else {
      const auto& a = j.at("actions");
      for (const auto& g : grp->generator_names()) {
        if (!a.contains(g)) throw DataError("module " + name + " has no action for generator " + g);
        acts.push_back(matrix_from_json(a[g]));
      }
    }
    return GModule(grp, orders, labels, acts, name);
  } catch (const Json::exception& e) {
    throw DataError(std::string("module dataset: ") + e.what());
  }
}

GModule load_module(const std::string& name) { return module_from_json(read_json("modules/" + name + ".json")); }

}  // namespace picdesc::groupcoh
