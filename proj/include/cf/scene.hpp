#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "cf/serialize.hpp"

namespace cf {

class UnknownName : public Error {
 public:
  UnknownName(const std::string& kind, const std::string& name)
      : Error("unknown " + kind + " '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Arrangement plus named open sets, expressions and functions, all sharing
/// the arrangement.
struct Scene {
  ArrangementPtr arrangement;
  std::map<std::string, OpenSet> sets;
  std::map<std::string, GroupExpression> exprs;
  std::map<std::string, ConstructibleFunction> funcs;

  const OpenSet& set(const std::string& name) const;
  const GroupExpression& expr(const std::string& name) const;
  const ConstructibleFunction& func(const std::string& name) const;
};

/// {"arrangement":..., "sets":[...], "exprs":[...], "funcs":[...]}. Terms may
/// name a set from "sets" or give one inline. Throws FormatError, NotOpen or
/// UnknownName.
Scene load_scene(const Json& j);
Scene load_scene_file(const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);

}  // namespace cf
