#pragma once

// JSON wire formats. Rationals travel as "p/q" strings, integers as numbers,
// cell sets as sorted index lists.

#include "json.hpp"

#include "cf/engine.hpp"
#include "cf/functions.hpp"

namespace cf {

using Json = nlohmann::json;

class FormatError : public Error {
 public:
  using Error::Error;
};

Json arrangement_to_json(const CellArrangement& arr);
ArrangementPtr arrangement_from_json(const Json& j);

Json set_to_json(const CellSet& s);
/// Inline set: {"cells":[...]} or, on interval arrangements, {"interval":["a","b"]}.
CellSet cell_set_from_json(const ArrangementPtr& arr, const Json& j);

Json expression_to_json(const GroupExpression& e);
Json function_to_json(const ConstructibleFunction& f);
ConstructibleFunction function_from_json(const ArrangementPtr& arr, const Json& j);

/// {"arrangement":..., "initial":expr, "steps":[...], "final":expr, "status":...}
Json trace_to_json(const RewriteTrace& t);
RewriteTrace trace_from_json(const Json& j);

/// Expression whose sets are all inline.
GroupExpression expression_from_json(const ArrangementPtr& arr, const Json& j);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace cf
