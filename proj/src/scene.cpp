#include "cf/scene.hpp"

#include <fstream>
#include <sstream>

namespace cf {

const OpenSet& Scene::set(const std::string& name) const {
  auto it = sets.find(name);
  if (it == sets.end()) throw UnknownName("set", name);
  return it->second;
}

const GroupExpression& Scene::expr(const std::string& name) const {
  auto it = exprs.find(name);
  if (it == exprs.end()) throw UnknownName("expression", name);
  return it->second;
}

const ConstructibleFunction& Scene::func(const std::string& name) const {
  auto it = funcs.find(name);
  if (it == funcs.end()) throw UnknownName("function", name);
  return it->second;
}

namespace {

std::string name_of(const Json& entry) {
  if (!entry.is_object() || !entry.contains("name") || !entry.at("name").is_string()) {
    throw FormatError("scene entry without a string \"name\": " + entry.dump());
  }
  return entry.at("name").get<std::string>();
}

template <typename Map, typename Value>
void insert_unique(Map& map, const std::string& name, Value&& value, const char* kind) {
  if (!map.emplace(name, std::forward<Value>(value)).second) {
    throw FormatError(std::string("duplicate ") + kind + " name '" + name + "'");
  }
}

}  // namespace

Scene load_scene(const Json& j) {
  if (!j.is_object() || !j.contains("arrangement")) throw FormatError("scene needs an arrangement");
  Scene scene{arrangement_from_json(j.at("arrangement")), {}, {}, {}};
  const ArrangementPtr& arr = scene.arrangement;

  try {
    for (const Json& entry : j.value("sets", Json::array())) {
      insert_unique(scene.sets, name_of(entry), make_open_set(cell_set_from_json(arr, entry)), "set");
    }
    for (const Json& entry : j.value("exprs", Json::array())) {
      std::vector<Term> terms;
      for (const Json& t : entry.at("terms")) {
        const Json& set = t.at("set");
        OpenSet s = set.is_string() ? scene.set(set.get<std::string>())
                                    : make_open_set(cell_set_from_json(arr, set));
        terms.push_back(Term{t.at("coeff").get<std::int64_t>(), std::move(s)});
      }
      insert_unique(scene.exprs, name_of(entry), make_expression(arr, terms), "expression");
    }
    for (const Json& entry : j.value("funcs", Json::array())) {
      insert_unique(scene.funcs, name_of(entry), function_from_json(arr, entry), "function");
    }
  } catch (const Json::exception& e) {
    throw FormatError(e.what());
  }
  return scene;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Scene load_scene_file(const std::filesystem::path& path) { return load_scene(read_json_file(path)); }

}  // namespace cf
