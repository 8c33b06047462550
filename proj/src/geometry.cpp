#include "cf/geometry.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace cf {

NotOpen::NotOpen(std::size_t cell, std::size_t missing_coface)
    : Error("cell " + std::to_string(cell) + " is a member but its coface " +
            std::to_string(missing_coface) + " is not"),
      cell_(cell),
      missing_coface_(missing_coface) {}

std::string to_string(Ambient ambient) {
  switch (ambient) {
    case Ambient::kSegment: return "segment";
    case Ambient::kCircle: return "circle";
    case Ambient::kGrid: return "grid";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// CellArrangement

void CellArrangement::add_cell(int dim) {
  dims_.push_back(dim);
  weights_.emplace_back(1);
  faces_.emplace_back();
  cofaces_.emplace_back();
}

void CellArrangement::link(CellId face, CellId coface) {
  auto& f = faces_[coface];
  if (std::find(f.begin(), f.end(), face) != f.end()) return;
  f.push_back(face);
  cofaces_[face].push_back(coface);
}

void CellArrangement::check_structure() const {
  for (CellId d = 0; d < size(); ++d) {
    for (CellId c : faces_[d]) {
      if (c == d || dims_[c] >= dims_[d]) {
        throw InvariantViolation("face relation does not respect dimension");
      }
    }
    if (weights_[d] <= Rational(0)) throw InvariantViolation("non-positive cell weight");
  }
}

std::string CellArrangement::label(CellId c) const {
  if (c >= size()) throw std::out_of_range("cell index out of range");
  if (ambient_ == Ambient::kGrid) {
    const std::size_t nv = (rows_ + 1) * (cols_ + 1);
    const std::size_t nh = (rows_ + 1) * cols_;
    const std::size_t nvert = rows_ * (cols_ + 1);
    auto rc = [](std::size_t i, std::size_t width) {
      return "(" + std::to_string(i / width) + "," + std::to_string(i % width) + ")";
    };
    if (c < nv) return "vertex" + rc(c, cols_ + 1);
    if (c < nv + nh) return "hedge" + rc(c - nv, cols_);
    if (c < nv + nh + nvert) return "vedge" + rc(c - nv - nh, cols_ + 1);
    return "square" + rc(c - nv - nh - nvert, cols_);
  }
  const std::size_t i = c / 2;
  if (c % 2 == 0) return "point " + format_rational(breakpoints_[i]);
  const std::size_t j = (i + 1) % breakpoints_.size();
  return "interval(" + format_rational(breakpoints_[i]) + "," + format_rational(breakpoints_[j]) +
         ")";
}

std::vector<std::pair<CellId, CellId>> CellArrangement::face_pairs() const {
  std::vector<std::pair<CellId, CellId>> out;
  for (CellId d = 0; d < size(); ++d) {
    for (CellId c : faces_[d]) out.emplace_back(c, d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CellId CellArrangement::point_cell(std::size_t breakpoint) const {
  if (ambient_ == Ambient::kGrid || breakpoint >= breakpoints_.size()) {
    throw std::out_of_range("no such breakpoint");
  }
  return 2 * breakpoint;
}

CellId CellArrangement::interval_cell(std::size_t breakpoint) const {
  const CellId c = 2 * breakpoint + 1;
  if (ambient_ == Ambient::kGrid || c >= size()) throw std::out_of_range("no such interval");
  return c;
}

CellBits CellArrangement::open_interval(const Rational& a, const Rational& b) const {
  if (ambient_ == Ambient::kGrid) {
    throw std::invalid_argument("interval shorthand needs an interval arrangement");
  }
  auto locate = [&](const Rational& x) {
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
    if (it == breakpoints_.end() || *it != x) {
      throw std::invalid_argument("interval endpoint " + format_rational(x) +
                                  " is not a breakpoint");
    }
    return static_cast<std::size_t>(it - breakpoints_.begin());
  };
  const std::size_t ia = locate(a);
  const std::size_t ib = locate(b);
  CellBits bits(size());
  if (ia < ib) {
    for (CellId c = 2 * ia + 1; c < 2 * ib; ++c) bits.set(c);
    return bits;
  }
  if (ambient_ == Ambient::kSegment) {
    throw std::invalid_argument("segment interval needs a < b");
  }
  // Wrap around the circle; a == b gives the circle minus one point.
  for (CellId c = 2 * ia + 1; c < size(); ++c) bits.set(c);
  for (CellId c = 0; c < 2 * ib; ++c) bits.set(c);
  return bits;
}

CellId CellArrangement::vertex_cell(std::size_t r, std::size_t c) const {
  if (ambient_ != Ambient::kGrid || r > rows_ || c > cols_) {
    throw std::out_of_range("no such vertex");
  }
  return r * (cols_ + 1) + c;
}

CellId CellArrangement::face_cell(std::size_t r, std::size_t c) const {
  if (ambient_ != Ambient::kGrid || r >= rows_ || c >= cols_) {
    throw std::out_of_range("no such square");
  }
  return size() - rows_ * cols_ + r * cols_ + c;
}

bool CellArrangement::structurally_equal(const CellArrangement& other) const {
  return ambient_ == other.ambient_ && dims_ == other.dims_ && weights_ == other.weights_ &&
         faces_ == other.faces_ && breakpoints_ == other.breakpoints_ && rows_ == other.rows_ &&
         cols_ == other.cols_;
}

ArrangementPtr build_interval_arrangement(std::vector<Rational> breakpoints, Ambient ambient) {
  if (ambient == Ambient::kGrid) {
    throw std::invalid_argument("interval arrangement needs segment or circle ambient");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i - 1] >= breakpoints[i]) {
      throw std::invalid_argument("breakpoints must be sorted and distinct");
    }
  }
  const std::size_t n = breakpoints.size();
  if (ambient == Ambient::kSegment && n < 2) {
    throw std::invalid_argument("a segment needs at least two breakpoints");
  }
  if (ambient == Ambient::kCircle && n < 1) {
    throw std::invalid_argument("a circle needs at least one breakpoint");
  }

  std::shared_ptr<CellArrangement> arr(new CellArrangement());
  arr->ambient_ = ambient;
  arr->breakpoints_ = std::move(breakpoints);
  const std::size_t intervals = ambient == Ambient::kSegment ? n - 1 : n;
  for (std::size_t i = 0; i < n; ++i) {
    arr->add_cell(0);
    if (i < intervals) arr->add_cell(1);
  }
  for (std::size_t i = 0; i < intervals; ++i) {
    const CellId interval = 2 * i + 1;
    arr->link(2 * i, interval);
    arr->link(2 * ((i + 1) % n), interval);
  }
  arr->check_structure();
  return arr;
}

ArrangementPtr build_grid_arrangement(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("grid dimensions must be positive");

  std::shared_ptr<CellArrangement> arr(new CellArrangement());
  arr->ambient_ = Ambient::kGrid;
  arr->rows_ = rows;
  arr->cols_ = cols;

  const std::size_t nv = (rows + 1) * (cols + 1);
  const std::size_t nh = (rows + 1) * cols;
  const std::size_t nvert = rows * (cols + 1);
  auto vertex = [&](std::size_t r, std::size_t c) { return r * (cols + 1) + c; };
  auto hedge = [&](std::size_t r, std::size_t c) { return nv + r * cols + c; };
  auto vedge = [&](std::size_t r, std::size_t c) { return nv + nh + r * (cols + 1) + c; };
  auto square = [&](std::size_t r, std::size_t c) { return nv + nh + nvert + r * cols + c; };

  for (std::size_t i = 0; i < nv; ++i) arr->add_cell(0);
  for (std::size_t i = 0; i < nh + nvert; ++i) arr->add_cell(1);
  for (std::size_t i = 0; i < rows * cols; ++i) arr->add_cell(2);

  for (std::size_t r = 0; r <= rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      arr->link(vertex(r, c), hedge(r, c));
      arr->link(vertex(r, c + 1), hedge(r, c));
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c <= cols; ++c) {
      arr->link(vertex(r, c), vedge(r, c));
      arr->link(vertex(r + 1, c), vedge(r, c));
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      arr->link(hedge(r, c), square(r, c));
      arr->link(hedge(r + 1, c), square(r, c));
      arr->link(vedge(r, c), square(r, c));
      arr->link(vedge(r, c + 1), square(r, c));
    }
  }
  arr->check_structure();
  return arr;
}

ArrangementPtr with_weights(const ArrangementPtr& arr, const std::map<CellId, Rational>& weights) {
  std::shared_ptr<CellArrangement> copy(new CellArrangement(*arr));
  for (const auto& [cell, w] : weights) {
    if (cell >= copy->size()) throw std::out_of_range("weight for unknown cell");
    if (w <= Rational(0)) throw std::invalid_argument("cell weights must be positive");
    copy->weights_[cell] = w;
  }
  return copy;
}

bool same_arrangement(const ArrangementPtr& a, const ArrangementPtr& b) {
  return a == b || (a && b && a->structurally_equal(*b));
}

void require_same_arrangement(const ArrangementPtr& a, const ArrangementPtr& b) {
  if (!same_arrangement(a, b)) throw ArrangementMismatch();
}

// ---------------------------------------------------------------------------
// CellSet

CellSet::CellSet(ArrangementPtr arr) : arr_(std::move(arr)), bits_(arr_->size()) {}

CellSet::CellSet(ArrangementPtr arr, CellBits bits) : arr_(std::move(arr)), bits_(std::move(bits)) {
  if (bits_.size() != arr_->size()) throw std::invalid_argument("cell bitset size mismatch");
}

CellSet::CellSet(ArrangementPtr arr, std::span<const CellId> members)
    : arr_(std::move(arr)), bits_(arr_->size()) {
  for (CellId c : members) {
    if (c >= bits_.size()) {
      throw std::out_of_range("cell index " + std::to_string(c) + " out of range");
    }
    bits_.set(c);
  }
}

CellSet CellSet::full(ArrangementPtr arr) {
  CellBits bits(arr->size());
  bits.set();
  return CellSet(std::move(arr), std::move(bits));
}

CellSet CellSet::single(ArrangementPtr arr, CellId c) {
  const CellId one[] = {c};
  return CellSet(std::move(arr), one);
}

std::vector<CellId> CellSet::cells() const {
  std::vector<CellId> out;
  out.reserve(bits_.count());
  for (auto c = bits_.find_first(); c != CellBits::npos; c = bits_.find_next(c)) out.push_back(c);
  return out;
}

std::optional<CellId> CellSet::first() const {
  auto c = bits_.find_first();
  if (c == CellBits::npos) return std::nullopt;
  return c;
}

// ---------------------------------------------------------------------------
// Open sets

std::optional<std::pair<CellId, CellId>> find_openness_violation(const CellSet& s) {
  const auto& arr = *s.arrangement();
  const auto& bits = s.bits();
  for (auto c = bits.find_first(); c != CellBits::npos; c = bits.find_next(c)) {
    for (CellId d : arr.cofaces(c)) {
      if (!bits.test(d)) return std::make_pair(static_cast<CellId>(c), d);
    }
  }
  return std::nullopt;
}

bool is_open(const CellSet& s) { return !find_openness_violation(s).has_value(); }

OpenSet make_open_set(const CellSet& members) {
  if (auto bad = find_openness_violation(members)) throw NotOpen(bad->first, bad->second);
  return OpenSet(members);
}

OpenSet make_open_set(const ArrangementPtr& arr, std::span<const CellId> members) {
  return make_open_set(CellSet(arr, members));
}

OpenSet up_closure(const CellSet& s) {
  const auto& arr = *s.arrangement();
  CellBits bits = s.bits();
  std::vector<CellId> stack = s.cells();
  while (!stack.empty()) {
    CellId c = stack.back();
    stack.pop_back();
    for (CellId d : arr.cofaces(c)) {
      if (!bits.test(d)) {
        bits.set(d);
        stack.push_back(d);
      }
    }
  }
  return make_open_set(CellSet(s.arrangement(), std::move(bits)));
}

OpenSet open_star(const ArrangementPtr& arr, CellId c) {
  return up_closure(CellSet::single(arr, c));
}

OpenSet unite(const OpenSet& a, const OpenSet& b) {
  require_same_arrangement(a.arrangement(), b.arrangement());
  return make_open_set(CellSet(a.arrangement(), a.bits() | b.bits()));
}

OpenSet intersect(const OpenSet& a, const OpenSet& b) {
  require_same_arrangement(a.arrangement(), b.arrangement());
  return make_open_set(CellSet(a.arrangement(), a.bits() & b.bits()));
}

CellSet cell_difference(const CellSet& a, const CellSet& b) {
  require_same_arrangement(a.arrangement(), b.arrangement());
  return CellSet(a.arrangement(), a.bits() - b.bits());
}

bool is_subset(const OpenSet& a, const OpenSet& b) { return a.bits().is_subset_of(b.bits()); }

bool overlaps(const OpenSet& a, const OpenSet& b) {
  require_same_arrangement(a.arrangement(), b.arrangement());
  return a.bits().intersects(b.bits()) && !a.bits().is_subset_of(b.bits()) &&
         !b.bits().is_subset_of(a.bits());
}

std::vector<OpenSet> connected_components(const OpenSet& s) {
  const auto& arr = *s.arrangement();
  CellBits unseen = s.bits();
  std::vector<OpenSet> out;
  std::vector<CellId> stack;
  for (auto start = unseen.find_first(); start != CellBits::npos; start = unseen.find_first()) {
    CellBits component(arr.size());
    unseen.reset(start);
    component.set(start);
    stack.push_back(start);
    while (!stack.empty()) {
      CellId c = stack.back();
      stack.pop_back();
      auto visit = [&](CellId n) {
        if (unseen.test(n)) {
          unseen.reset(n);
          component.set(n);
          stack.push_back(n);
        }
      };
      for (CellId n : arr.faces(c)) visit(n);
      for (CellId n : arr.cofaces(c)) visit(n);
    }
    out.push_back(make_open_set(CellSet(s.arrangement(), std::move(component))));
  }
  return out;
}

bool is_connected(const OpenSet& s) { return connected_components(s).size() == 1; }

Rational measure(const CellSet& s) {
  Rational total(0);
  const auto& arr = *s.arrangement();
  const auto& bits = s.bits();
  for (auto c = bits.find_first(); c != CellBits::npos; c = bits.find_next(c)) {
    total += arr.weight(c);
  }
  return total;
}

CellSet closure(const CellSet& s) {
  const auto& arr = *s.arrangement();
  CellBits bits = s.bits();
  std::vector<CellId> stack = s.cells();
  while (!stack.empty()) {
    CellId c = stack.back();
    stack.pop_back();
    for (CellId f : arr.faces(c)) {
      if (!bits.test(f)) {
        bits.set(f);
        stack.push_back(f);
      }
    }
  }
  return CellSet(s.arrangement(), std::move(bits));
}

bool is_closed(const CellSet& s) { return closure(s) == s; }

CellSet boundary(const OpenSet& s) { return cell_difference(closure(s.cells()), s.cells()); }

std::optional<CellId> witness_boundary_cell(const OpenSet& a, const OpenSet& b) {
  require_same_arrangement(a.arrangement(), b.arrangement());
  CellBits hits = a.bits() & boundary(b).bits();
  auto c = hits.find_first();
  if (c == CellBits::npos) return std::nullopt;
  return c;
}

}  // namespace cf
