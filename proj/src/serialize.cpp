#include "cf/serialize.hpp"

#include <map>
#include <string>

namespace cf {

namespace {

Rational rational_field(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw FormatError("expected a rational string, got " + j.dump());
}

template <typename Fn>
auto wrap_json_errors(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw FormatError(e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  } catch (const std::out_of_range& e) {
    throw FormatError(e.what());
  }
}

Json term_list_to_json(const std::vector<Term>& terms) {
  Json out = Json::array();
  for (const Term& t : terms) out.push_back({{"coeff", t.coeff}, {"set", set_to_json(t.set.cells())}});
  return out;
}

std::vector<Term> term_list_from_json(const ArrangementPtr& arr, const Json& j) {
  std::vector<Term> out;
  for (const Json& t : j) {
    out.push_back(Term{t.at("coeff").get<std::int64_t>(),
                       make_open_set(cell_set_from_json(arr, t.at("set")))});
  }
  return out;
}

}  // namespace

Json arrangement_to_json(const CellArrangement& arr) {
  Json out;
  if (arr.ambient() == Ambient::kGrid) {
    out = {{"type", "grid"}, {"rows", arr.rows()}, {"cols", arr.cols()}};
  } else {
    Json points = Json::array();
    for (const Rational& b : arr.breakpoints()) points.push_back(format_rational(b));
    out = {{"type", "interval"}, {"ambient", to_string(arr.ambient())}, {"breakpoints", points}};
  }
  Json weights = Json::object();
  for (CellId c = 0; c < arr.size(); ++c) {
    if (arr.weight(c) != Rational(1)) weights[std::to_string(c)] = format_rational(arr.weight(c));
  }
  if (!weights.empty()) out["weights"] = weights;
  return out;
}

ArrangementPtr arrangement_from_json(const Json& j) {
  return wrap_json_errors([&] {
    const std::string type = j.at("type").get<std::string>();
    ArrangementPtr arr;
    if (type == "grid") {
      const auto rows = j.at("rows").get<std::int64_t>();
      const auto cols = j.at("cols").get<std::int64_t>();
      if (rows <= 0 || cols <= 0) throw FormatError("grid dimensions must be positive");
      arr = build_grid_arrangement(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    } else if (type == "interval") {
      const std::string ambient = j.at("ambient").get<std::string>();
      Ambient tag;
      if (ambient == "segment") {
        tag = Ambient::kSegment;
      } else if (ambient == "circle") {
        tag = Ambient::kCircle;
      } else {
        throw FormatError("unknown ambient '" + ambient + "'");
      }
      std::vector<Rational> breakpoints;
      for (const Json& b : j.at("breakpoints")) breakpoints.push_back(rational_field(b));
      arr = build_interval_arrangement(std::move(breakpoints), tag);
    } else {
      throw FormatError("unknown arrangement type '" + type + "'");
    }
    if (auto it = j.find("weights"); it != j.end()) {
      std::map<CellId, Rational> weights;
      for (const auto& [key, value] : it->items()) {
        weights[std::stoul(key)] = rational_field(value);
      }
      arr = with_weights(arr, weights);
    }
    return arr;
  });
}

Json set_to_json(const CellSet& s) { return {{"cells", s.cells()}}; }

CellSet cell_set_from_json(const ArrangementPtr& arr, const Json& j) {
  return wrap_json_errors([&] {
    if (auto it = j.find("interval"); it != j.end()) {
      if (!it->is_array() || it->size() != 2) throw FormatError("interval needs two endpoints");
      return CellSet(arr, arr->open_interval(rational_field((*it)[0]), rational_field((*it)[1])));
    }
    const auto cells = j.at("cells").get<std::vector<CellId>>();
    return CellSet(arr, cells);
  });
}

Json expression_to_json(const GroupExpression& e) { return {{"terms", term_list_to_json(e.terms())}}; }

GroupExpression expression_from_json(const ArrangementPtr& arr, const Json& j) {
  return wrap_json_errors(
      [&] { return make_expression(arr, term_list_from_json(arr, j.at("terms"))); });
}

Json function_to_json(const ConstructibleFunction& f) {
  Json values = Json::object();
  for (CellId c = 0; c < f.values().size(); ++c) values[std::to_string(c)] = f(c);
  return {{"values", values}};
}

ConstructibleFunction function_from_json(const ArrangementPtr& arr, const Json& j) {
  return wrap_json_errors([&] {
    std::vector<std::int64_t> values(arr->size(), 0);
    for (const auto& [key, value] : j.at("values").items()) {
      const auto cell = std::stoul(key);
      if (cell >= values.size()) throw FormatError("function value for unknown cell " + key);
      values[cell] = value.get<std::int64_t>();
    }
    return ConstructibleFunction(arr, std::move(values));
  });
}

Json trace_to_json(const RewriteTrace& t) {
  Json steps = Json::array();
  for (const StepRecord& s : t.steps) {
    steps.push_back({{"pair", {set_to_json(s.heavy.cells()), set_to_json(s.light.cells())}},
                     {"produced", term_list_to_json(s.produced)},
                     {"cancellations", s.cancellations},
                     {"weight", format_rational(s.stats_after.weight)},
                     {"max_coeff", s.stats_after.max_coeff}});
  }
  return {{"arrangement", arrangement_to_json(*t.initial.arrangement())},
          {"initial", expression_to_json(t.initial)},
          {"steps", steps},
          {"final", expression_to_json(t.final_expr)},
          {"status", to_string(t.status)}};
}

RewriteTrace trace_from_json(const Json& j) {
  return wrap_json_errors([&] {
    ArrangementPtr arr = arrangement_from_json(j.at("arrangement"));
    RewriteTrace t{expression_from_json(arr, j.at("initial")), {},
                   expression_from_json(arr, j.at("final")), parse_status(j.at("status"))};
    for (const Json& s : j.at("steps")) {
      const Json& pair = s.at("pair");
      if (!pair.is_array() || pair.size() != 2) throw FormatError("step pair needs two sets");
      ExprStats after;
      after.weight = rational_field(s.at("weight"));
      after.max_coeff = s.at("max_coeff").get<std::int64_t>();
      t.steps.push_back(StepRecord{make_open_set(cell_set_from_json(arr, pair[0])),
                                   make_open_set(cell_set_from_json(arr, pair[1])),
                                   term_list_from_json(arr, s.at("produced")),
                                   s.at("cancellations").get<std::size_t>(), after});
    }
    return t;
  });
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cf
