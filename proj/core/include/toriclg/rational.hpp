#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace toriclg {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// True when the rational has denominator one.
bool is_integral(const Rational& value);

/// Sparse vector of exact rationals: (index, value) pairs sorted by index,
/// never holding an explicit zero.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVector() = default;

  static SparseVector unit(std::size_t index);
  static SparseVector from_dense(std::span<const Rational> dense);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nonzeros() const { return entries_.size(); }

  Rational get(std::size_t index) const;
  void set(std::size_t index, Rational value);
  void add(std::size_t index, const Rational& value);

  /// this += factor * other
  void axpy(const Rational& factor, const SparseVector& other);
  void scale(const Rational& factor);

  /// Smallest stored index. Requires a nonempty vector.
  std::size_t leading() const { return entries_.front().first; }
  std::size_t max_index_plus_one() const {
    return entries_.empty() ? 0 : entries_.back().first + 1;
  }

  std::vector<Rational> to_dense(std::size_t dimension) const;

  /// Appends an entry whose index exceeds every stored index.
  void push_back(std::size_t index, Rational value);

  bool operator==(const SparseVector&) const = default;

  SparseVector operator-() const;
  friend SparseVector operator+(SparseVector lhs, const SparseVector& rhs) {
    lhs.axpy(1, rhs);
    return lhs;
  }
  friend SparseVector operator-(SparseVector lhs, const SparseVector& rhs) {
    lhs.axpy(-1, rhs);
    return lhs;
  }

 private:
  std::vector<Entry> entries_;
};

Rational dot(const SparseVector& a, const SparseVector& b);

}  // namespace toriclg
