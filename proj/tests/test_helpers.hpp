#pragma once

#include <vector>

#include "cf/engine.hpp"
#include "cf/functions.hpp"
#include "cf/geometry.hpp"

namespace cf::test {

inline ArrangementPtr segment(std::vector<std::int64_t> points) {
  std::vector<Rational> breakpoints(points.begin(), points.end());
  return build_interval_arrangement(std::move(breakpoints), Ambient::kSegment);
}

/// Open interval (a, b) between two breakpoints.
inline OpenSet iv(const ArrangementPtr& arr, std::int64_t a, std::int64_t b) {
  return make_open_set(CellSet(arr, arr->open_interval(Rational(a), Rational(b))));
}

/// Open rectangle covering squares rows r0..r1, cols c0..c1 of a grid.
inline OpenSet open_rect(const ArrangementPtr& arr, std::size_t r0, std::size_t r1, std::size_t c0,
                         std::size_t c1) {
  CellBits bits(arr->size());
  for (std::size_t r = r0; r <= r1; ++r) {
    for (std::size_t c = c0; c <= c1; ++c) bits.set(arr->face_cell(r, c));
  }
  // Interior edges and vertices shared by squares of the rectangle.
  for (CellId cell = 0; cell < arr->size(); ++cell) {
    if (bits.test(cell) || arr->dimension(cell) == 2) continue;
    CellSet star = open_star(arr, cell).cells();
    bool inside = true;
    for (CellId d : star.cells()) {
      if (arr->dimension(d) == 2 && !bits.test(d)) inside = false;
    }
    std::size_t squares = 0;
    for (CellId d : star.cells()) squares += arr->dimension(d) == 2;
    if (inside && squares == (arr->dimension(cell) == 1 ? 2u : 4u)) bits.set(cell);
  }
  return make_open_set(CellSet(arr, std::move(bits)));
}

/// Per-cell value of an expression computed from membership alone.
inline std::vector<std::int64_t> pointwise(const GroupExpression& e) {
  std::vector<std::int64_t> values(e.arrangement()->size(), 0);
  for (CellId c = 0; c < values.size(); ++c) {
    for (const Term& t : e.terms()) values[c] += t.set.contains(c) ? t.coeff : 0;
  }
  return values;
}

inline GroupExpression expr(const ArrangementPtr& arr, std::vector<Term> terms) {
  return make_expression(arr, terms);
}

}  // namespace cf::test
