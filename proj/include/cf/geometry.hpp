#pragma once

// Finite cell arrangements and their open sets.
//
// An arrangement partitions the ambient space into finitely many open cells
// (points, open intervals, open edges, open squares). A set of cells is open
// in the induced topology exactly when it is up-closed in the face poset: if
// it contains a cell, it contains every cell having that cell as a face.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "cf/errors.hpp"
#include "cf/rational.hpp"

namespace cf {

using CellId = std::size_t;
using CellBits = boost::dynamic_bitset<std::uint64_t>;

enum class Ambient { kSegment, kCircle, kGrid };

std::string to_string(Ambient ambient);

class CellArrangement;
using ArrangementPtr = std::shared_ptr<const CellArrangement>;

class CellArrangement {
 public:
  std::size_t size() const { return dims_.size(); }
  Ambient ambient() const { return ambient_; }

  int dimension(CellId c) const { return dims_.at(c); }
  const Rational& weight(CellId c) const { return weights_.at(c); }
  std::string label(CellId c) const;

  /// Immediate faces (codimension one).
  const std::vector<CellId>& faces(CellId c) const { return faces_.at(c); }
  /// Immediate cofaces (codimension one).
  const std::vector<CellId>& cofaces(CellId c) const { return cofaces_.at(c); }
  /// All (face, coface) incidence pairs, sorted.
  std::vector<std::pair<CellId, CellId>> face_pairs() const;

  // Interval backends only.
  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  CellId point_cell(std::size_t breakpoint) const;
  CellId interval_cell(std::size_t breakpoint) const;
  /// Cells strictly between breakpoints `a` and `b`; on a circle with a > b
  /// the run wraps through the last breakpoint.
  CellBits open_interval(const Rational& a, const Rational& b) const;

  // Grid backend only.
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  CellId vertex_cell(std::size_t r, std::size_t c) const;
  CellId face_cell(std::size_t r, std::size_t c) const;

  bool structurally_equal(const CellArrangement& other) const;

 private:
  friend ArrangementPtr build_interval_arrangement(std::vector<Rational>, Ambient);
  friend ArrangementPtr build_grid_arrangement(std::size_t, std::size_t);
  friend ArrangementPtr with_weights(const ArrangementPtr&, const std::map<CellId, Rational>&);

  CellArrangement() = default;
  void add_cell(int dim);
  void link(CellId face, CellId coface);
  void check_structure() const;

  Ambient ambient_ = Ambient::kSegment;
  std::vector<int> dims_;
  std::vector<Rational> weights_;
  std::vector<std::vector<CellId>> faces_;
  std::vector<std::vector<CellId>> cofaces_;
  std::vector<Rational> breakpoints_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
};

/// Points and open intervals of a subdivided segment or circle. Cell 2i is
/// breakpoint i and cell 2i+1 the open interval following it. A segment
/// needs at least two breakpoints (its endpoints), a circle at least one.
ArrangementPtr build_interval_arrangement(std::vector<Rational> breakpoints, Ambient ambient);

/// Vertices, open edges and open squares of a rows x cols grid, indexed in
/// that order (vertices, horizontal edges, vertical edges, squares).
ArrangementPtr build_grid_arrangement(std::size_t rows, std::size_t cols);

/// Copy of `arr` with the listed cell weights replaced. Weights must be > 0.
ArrangementPtr with_weights(const ArrangementPtr& arr, const std::map<CellId, Rational>& weights);

bool same_arrangement(const ArrangementPtr& a, const ArrangementPtr& b);

class CellSet {
 public:
  explicit CellSet(ArrangementPtr arr);
  CellSet(ArrangementPtr arr, CellBits bits);
  CellSet(ArrangementPtr arr, std::span<const CellId> members);

  static CellSet full(ArrangementPtr arr);
  static CellSet single(ArrangementPtr arr, CellId c);

  const ArrangementPtr& arrangement() const { return arr_; }
  const CellBits& bits() const { return bits_; }

  bool contains(CellId c) const { return c < bits_.size() && bits_.test(c); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  std::vector<CellId> cells() const;
  std::optional<CellId> first() const;

  friend bool operator==(const CellSet& a, const CellSet& b) { return a.bits_ == b.bits_; }

 private:
  ArrangementPtr arr_;
  CellBits bits_;
};

/// An up-closed cell set.
class OpenSet {
 public:
  /// Empty open set.
  explicit OpenSet(ArrangementPtr arr) : base_(std::move(arr)) {}

  const CellSet& cells() const { return base_; }
  const ArrangementPtr& arrangement() const { return base_.arrangement(); }
  const CellBits& bits() const { return base_.bits(); }
  bool empty() const { return base_.empty(); }
  std::size_t size() const { return base_.size(); }
  bool contains(CellId c) const { return base_.contains(c); }

  friend bool operator==(const OpenSet& a, const OpenSet& b) { return a.base_ == b.base_; }

 private:
  friend OpenSet make_open_set(const CellSet& members);
  explicit OpenSet(CellSet base) : base_(std::move(base)) {}

  CellSet base_;
};

/// First violation of up-closure, as (member, missing coface).
std::optional<std::pair<CellId, CellId>> find_openness_violation(const CellSet& s);
bool is_open(const CellSet& s);

/// Throws NotOpen when `members` is not up-closed.
OpenSet make_open_set(const CellSet& members);
OpenSet make_open_set(const ArrangementPtr& arr, std::span<const CellId> members);

/// Smallest open set containing `s`.
OpenSet up_closure(const CellSet& s);
/// Open star of a cell: the cell and every cell having it as a face.
OpenSet open_star(const ArrangementPtr& arr, CellId c);

OpenSet unite(const OpenSet& a, const OpenSet& b);
OpenSet intersect(const OpenSet& a, const OpenSet& b);
CellSet cell_difference(const CellSet& a, const CellSet& b);

bool is_subset(const OpenSet& a, const OpenSet& b);
bool overlaps(const OpenSet& a, const OpenSet& b);

/// Components of the face-incidence graph restricted to `s`, ordered by
/// lowest member cell.
std::vector<OpenSet> connected_components(const OpenSet& s);
bool is_connected(const OpenSet& s);

Rational measure(const CellSet& s);
inline Rational measure(const OpenSet& s) { return measure(s.cells()); }

CellSet closure(const CellSet& s);
bool is_closed(const CellSet& s);
CellSet boundary(const OpenSet& s);

/// Lowest-index cell of a ∩ ∂b, if any.
std::optional<CellId> witness_boundary_cell(const OpenSet& a, const OpenSet& b);

void require_same_arrangement(const ArrangementPtr& a, const ArrangementPtr& b);

}  // namespace cf
