#pragma once

#include "toriclg/rational.hpp"
#include "toriclg/sparse_matrix.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace toriclg {

/// Incremental row echelon form over Q.
///
/// Vectors are offered one at a time; each offer receives an input id
/// (0, 1, 2, ... in call order). Independent vectors are kept, reduced
/// against the earlier pivots, so the pivot choice is "earliest input first,
/// then smallest column". With tracking enabled, any vector in the span can
/// be written as a combination of the accepted inputs.
class Echelon {
 public:
  explicit Echelon(std::size_t dimension, bool track_combinations = true);

  /// Returns true when v was independent of all previously accepted vectors.
  bool insert(SparseVector v);

  /// Coefficients (keyed by input id) expressing v through accepted inputs,
  /// or nullopt when v is outside the span. Requires tracking.
  std::optional<SparseVector> express(SparseVector v) const;

  bool contains(SparseVector v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::size_t inputs() const { return inputs_; }
  const std::vector<std::size_t>& accepted_ids() const { return accepted_; }

  /// Fully reduced rows (pivot 1, zero in every other pivot column), sorted by pivot.
  std::vector<std::pair<std::size_t, SparseVector>> reduced_rows() const;

 private:
  struct Row {
    std::size_t pivot;
    SparseVector vector;
    SparseVector combination;
  };

  std::size_t dimension_;
  bool track_;
  std::size_t inputs_ = 0;
  std::vector<Row> rows_;
  std::vector<std::size_t> accepted_;
};

std::size_t rank(const RationalMatrix& a);

/// Determinant of a dense square matrix by exact elimination.
Rational determinant(std::vector<std::vector<Rational>> square);

/// Basis of {x : A x = 0}; one vector per non-pivot column of the reduced
/// row echelon form, scaled so the first nonzero entry is 1.
std::vector<SparseVector> kernel_basis(const RationalMatrix& a);

/// Solver for B b = a with B fixed. Pivot columns are chosen greedily in
/// column order and free coordinates are zero, so the solution depends
/// linearly on a and vanishes when a does.
class Lifter {
 public:
  explicit Lifter(const RationalMatrix& b);

  std::optional<SparseVector> try_lift(const SparseVector& a) const;
  /// Throws NoSolutionError when a is not in the image.
  SparseVector lift(const SparseVector& a) const;

  std::size_t rank() const { return columns_.rank(); }

 private:
  Echelon columns_;
};

SparseVector lift(const RationalMatrix& b, const SparseVector& a);

/// Cohomology of  . --d_in--> V --d_out--> .  at V.
class CohomologySlot {
 public:
  std::size_t dim() const { return representatives_.size(); }
  std::size_t space_dimension() const { return space_dimension_; }
  std::size_t kernel_dimension() const { return kernel_dimension_; }
  std::size_t image_rank() const { return image_rank_; }
  const std::vector<SparseVector>& representatives() const { return representatives_; }

  /// Coordinates of a cocycle in the representative basis modulo the image.
  /// Throws NoSolutionError for vectors outside ker(d_out).
  SparseVector reduce(const SparseVector& cocycle) const;
  bool is_cocycle(const SparseVector& v) const;

 private:
  friend CohomologySlot cohomology_at(const RationalMatrix&, const RationalMatrix&);

  std::size_t space_dimension_ = 0;
  std::size_t kernel_dimension_ = 0;
  std::size_t image_rank_ = 0;
  std::vector<SparseVector> representatives_;
  std::vector<std::size_t> representative_ids_;
  std::size_t image_inputs_ = 0;
  std::shared_ptr<const Echelon> basis_;
};

/// Throws CompositionError when d_out * d_in != 0 and InternalError on
/// mismatched shapes.
CohomologySlot cohomology_at(const RationalMatrix& d_in, const RationalMatrix& d_out);

}  // namespace toriclg
