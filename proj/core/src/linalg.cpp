#include "toriclg/linalg.hpp"

#include "toriclg/errors.hpp"

#include <algorithm>

namespace toriclg {

Echelon::Echelon(std::size_t dimension, bool track_combinations)
    : dimension_(dimension), track_(track_combinations) {}

bool Echelon::insert(SparseVector v) {
  if (v.max_index_plus_one() > dimension_) throw InternalError("Echelon::insert dimension mismatch");
  const std::size_t id = inputs_++;
  SparseVector combination;
  if (track_) combination = SparseVector::unit(id);
  for (const Row& row : rows_) {
    Rational c = v.get(row.pivot);
    if (c == 0) continue;
    v.axpy(-c, row.vector);
    if (track_) combination.axpy(-c, row.combination);
  }
  if (v.empty()) return false;
  const std::size_t pivot = v.leading();
  const Rational inverse = 1 / v.get(pivot);
  v.scale(inverse);
  if (track_) combination.scale(inverse);
  rows_.push_back(Row{pivot, std::move(v), std::move(combination)});
  accepted_.push_back(id);
  return true;
}

std::optional<SparseVector> Echelon::express(SparseVector v) const {
  if (!track_) throw InternalError("Echelon::express requires tracking");
  SparseVector coefficients;
  for (const Row& row : rows_) {
    Rational c = v.get(row.pivot);
    if (c == 0) continue;
    v.axpy(-c, row.vector);
    coefficients.axpy(c, row.combination);
  }
  if (!v.empty()) return std::nullopt;
  return coefficients;
}

bool Echelon::contains(SparseVector v) const {
  for (const Row& row : rows_) {
    Rational c = v.get(row.pivot);
    if (c != 0) v.axpy(-c, row.vector);
  }
  return v.empty();
}

std::vector<std::pair<std::size_t, SparseVector>> Echelon::reduced_rows() const {
  std::vector<std::pair<std::size_t, SparseVector>> rows;
  rows.reserve(rows_.size());
  for (const Row& row : rows_) rows.emplace_back(row.pivot, row.vector);
  // Each row is already clean at the pivots of earlier rows; clearing from
  // the back keeps that property while zeroing the later pivots.
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational c = rows[j].second.get(rows[i].first);
      if (c != 0) rows[j].second.axpy(-c, rows[i].second);
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return rows;
}

std::size_t rank(const RationalMatrix& a) {
  Echelon e(a.cols(), false);
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!a.row(r).empty()) e.insert(a.row(r));
  return e.rank();
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c].size() != n) throw InternalError("determinant: matrix is not square");
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational factor = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

std::vector<SparseVector> kernel_basis(const RationalMatrix& a) {
  Echelon e(a.cols(), false);
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!a.row(r).empty()) e.insert(a.row(r));
  const auto rows = e.reduced_rows();
  std::vector<bool> is_pivot(a.cols(), false);
  for (const auto& [pivot, row] : rows) is_pivot[pivot] = true;

  std::vector<SparseVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    SparseVector v;
    v.set(free, 1);
    for (const auto& [pivot, row] : rows) {
      Rational c = row.get(free);
      if (c != 0) v.set(pivot, -c);
    }
    v.scale(1 / v.entries().front().second);
    basis.push_back(std::move(v));
  }
  return basis;
}

Lifter::Lifter(const RationalMatrix& b) : columns_(b.rows(), true) {
  const RationalMatrix t = b.transposed();
  for (std::size_t c = 0; c < t.rows(); ++c) columns_.insert(t.row(c));
}

std::optional<SparseVector> Lifter::try_lift(const SparseVector& a) const {
  return columns_.express(a);
}

SparseVector Lifter::lift(const SparseVector& a) const {
  auto b = try_lift(a);
  if (!b) throw NoSolutionError("lift: target vector is not in the image");
  return std::move(*b);
}

SparseVector lift(const RationalMatrix& b, const SparseVector& a) { return Lifter(b).lift(a); }

SparseVector CohomologySlot::reduce(const SparseVector& cocycle) const {
  auto coefficients = basis_->express(cocycle);
  if (!coefficients) throw NoSolutionError("CohomologySlot::reduce: vector is not a cocycle");
  SparseVector out;
  for (const auto& [id, c] : coefficients->entries()) {
    if (id < image_inputs_) continue;
    auto it = std::lower_bound(representative_ids_.begin(), representative_ids_.end(), id);
    if (it == representative_ids_.end() || *it != id)
      throw InternalError("CohomologySlot::reduce: unexpected basis id");
    out.push_back(static_cast<std::size_t>(it - representative_ids_.begin()), c);
  }
  return out;
}

bool CohomologySlot::is_cocycle(const SparseVector& v) const { return basis_->contains(v); }

CohomologySlot cohomology_at(const RationalMatrix& d_in, const RationalMatrix& d_out) {
  if (d_in.rows() != d_out.cols())
    throw InternalError("cohomology_at: d_in target and d_out source dimensions differ");
  const std::size_t n = d_in.rows();
  if (!(d_out * d_in).is_zero()) throw CompositionError("cohomology_at: d_out * d_in != 0");

  auto basis = std::make_shared<Echelon>(n, true);
  const RationalMatrix columns = d_in.transposed();
  for (std::size_t c = 0; c < columns.rows(); ++c) basis->insert(columns.row(c));

  CohomologySlot slot;
  slot.space_dimension_ = n;
  slot.image_rank_ = basis->rank();
  slot.image_inputs_ = basis->inputs();
  const auto kernel = kernel_basis(d_out);
  slot.kernel_dimension_ = kernel.size();
  for (const auto& v : kernel) {
    const std::size_t id = basis->inputs();
    if (basis->insert(v)) {
      slot.representatives_.push_back(v);
      slot.representative_ids_.push_back(id);
    }
  }
  if (slot.representatives_.size() + slot.image_rank_ != slot.kernel_dimension_)
    throw InternalError("cohomology_at: image is not contained in the kernel");
  slot.basis_ = std::move(basis);
  return slot;
}

}  // namespace toriclg
