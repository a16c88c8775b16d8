#include "toriclg/rational.hpp"

#include <algorithm>

namespace toriclg {

std::string to_string(const Rational& value) { return value.str(); }
std::string to_string(const Integer& value) { return value.str(); }

bool is_integral(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

SparseVector SparseVector::unit(std::size_t index) {
  SparseVector v;
  v.entries_.emplace_back(index, Rational(1));
  return v;
}

SparseVector SparseVector::from_dense(std::span<const Rational> dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) v.entries_.emplace_back(i, dense[i]);
  return v;
}

namespace {

auto find_entry(const std::vector<SparseVector::Entry>& entries, std::size_t index) {
  return std::lower_bound(entries.begin(), entries.end(), index,
                          [](const SparseVector::Entry& e, std::size_t i) { return e.first < i; });
}

auto find_entry(std::vector<SparseVector::Entry>& entries, std::size_t index) {
  return std::lower_bound(entries.begin(), entries.end(), index,
                          [](const SparseVector::Entry& e, std::size_t i) { return e.first < i; });
}

}  // namespace

Rational SparseVector::get(std::size_t index) const {
  auto it = find_entry(entries_, index);
  if (it != entries_.end() && it->first == index) return it->second;
  return Rational(0);
}

void SparseVector::set(std::size_t index, Rational value) {
  auto it = find_entry(entries_, index);
  if (it != entries_.end() && it->first == index) {
    if (value == 0)
      entries_.erase(it);
    else
      it->second = std::move(value);
  } else if (value != 0) {
    entries_.insert(it, Entry{index, std::move(value)});
  }
}

void SparseVector::add(std::size_t index, const Rational& value) {
  if (value == 0) return;
  auto it = find_entry(entries_, index);
  if (it != entries_.end() && it->first == index) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  } else {
    entries_.insert(it, Entry{index, value});
  }
}

void SparseVector::axpy(const Rational& factor, const SparseVector& other) {
  if (factor == 0 || other.empty()) return;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a));
      ++a;
    } else if (a == entries_.end() || b->first < a->first) {
      merged.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational sum = a->second + factor * b->second;
      if (sum != 0) merged.emplace_back(a->first, std::move(sum));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

void SparseVector::scale(const Rational& factor) {
  if (factor == 0) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= factor;
}

std::vector<Rational> SparseVector::to_dense(std::size_t dimension) const {
  std::vector<Rational> dense(dimension);
  for (const auto& [i, v] : entries_)
    if (i < dimension) dense[i] = v;
  return dense;
}

void SparseVector::push_back(std::size_t index, Rational value) {
  if (value != 0) entries_.emplace_back(index, std::move(value));
}

SparseVector SparseVector::operator-() const {
  SparseVector v = *this;
  for (auto& e : v.entries_) e.second = -e.second;
  return v;
}

Rational dot(const SparseVector& a, const SparseVector& b) {
  Rational sum = 0;
  auto x = a.entries().begin();
  auto y = b.entries().begin();
  while (x != a.entries().end() && y != b.entries().end()) {
    if (x->first < y->first) {
      ++x;
    } else if (y->first < x->first) {
      ++y;
    } else {
      sum += x->second * y->second;
      ++x;
      ++y;
    }
  }
  return sum;
}

}  // namespace toriclg
