#include "toriclg/stanley_reisner.hpp"

#include "toriclg/errors.hpp"

#include <mutex>
#include <sstream>

namespace toriclg {

Monomial::Monomial(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.size() > kMaxRays) throw ValidationError("at most 64 variables are supported");
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > 0) support_ |= RayMask{1} << i;
    total_ += exponents_[i];
  }
}

Monomial Monomial::variable(std::size_t variables, std::size_t i) {
  std::vector<unsigned> e(variables, 0);
  e.at(i) = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.variables() != variables()) throw InternalError("monomial variable count mismatch");
  std::vector<unsigned> e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return Monomial(std::move(e));
}

std::string Monomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << 'z' << i + 1;
    if (exponents_[i] > 1) out << '^' << exponents_[i];
  }
  return first ? "1" : out.str();
}

SRPolynomial::SRPolynomial(const Monomial& m, Rational c) { add(m, c); }

Rational SRPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SRPolynomial::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

SRPolynomial& SRPolynomial::operator+=(const SRPolynomial& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

SRPolynomial& SRPolynomial::operator-=(const SRPolynomial& other) {
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

SRPolynomial& SRPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, value] : terms_) value *= c;
  return *this;
}

std::string SRPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational magnitude = c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (c < 0) magnitude = -c;
    first = false;
    const bool is_one = m.polynomial_degree() == 0;
    if (magnitude != 1 || is_one) {
      out << toriclg::to_string(magnitude);
      if (!is_one) out << '*';
    }
    if (!is_one) out << m.to_string();
  }
  return out.str();
}

// ---------------------------------------------------------------------------

struct FaceRing::Cache {
  std::mutex mutex;
  std::map<std::size_t, std::shared_ptr<const std::vector<Monomial>>> bases;
  std::map<std::size_t, std::shared_ptr<const std::map<Monomial, std::size_t>>> indices;
};

FaceRing::FaceRing(std::size_t variables, std::vector<RayMask> facets)
    : variables_(variables), facets_(std::move(facets)), cache_(std::make_shared<Cache>()) {
  if (variables_ > kMaxRays) throw ValidationError("at most 64 variables are supported");
  if (facets_.empty()) facets_.push_back(0);
}

FaceRing FaceRing::global(const Fan& fan) {
  std::vector<RayMask> facets;
  for (const Cone& c : fan.max_cones()) facets.push_back(c.mask());
  return FaceRing(fan.ray_count(), std::move(facets));
}

FaceRing FaceRing::local(const Fan& fan, const Cone& sigma) {
  return FaceRing(fan.ray_count(), {sigma.mask()});
}

bool FaceRing::allows(RayMask support) const {
  for (RayMask f : facets_)
    if ((support & ~f) == 0) return true;
  return false;
}

namespace {

void enumerate(const FaceRing& ring, std::size_t position, std::size_t remaining,
               std::vector<unsigned>& exponents, RayMask support, std::vector<Monomial>& out) {
  const std::size_t d = exponents.size();
  if (remaining == 0) {
    out.emplace_back(exponents);
    return;
  }
  if (position == d) return;
  // Larger exponents of earlier variables come first.
  for (std::size_t e = remaining; e >= 1; --e) {
    const RayMask next = support | (RayMask{1} << position);
    if (!ring.allows(next)) break;
    exponents[position] = static_cast<unsigned>(e);
    enumerate(ring, position + 1, remaining - e, exponents, next, out);
    exponents[position] = 0;
  }
  enumerate(ring, position + 1, remaining, exponents, support, out);
}

}  // namespace

const std::vector<Monomial>& FaceRing::basis(std::size_t j) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->bases.find(j); it != cache_->bases.end()) return *it->second;
  }
  auto monomials = std::make_shared<std::vector<Monomial>>();
  std::vector<unsigned> exponents(variables_, 0);
  enumerate(*this, 0, j, exponents, 0, *monomials);
  auto index = std::make_shared<std::map<Monomial, std::size_t>>();
  for (std::size_t i = 0; i < monomials->size(); ++i) index->emplace((*monomials)[i], i);

  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->bases.emplace(j, std::move(monomials));
  if (inserted) cache_->indices.emplace(j, std::move(index));
  return *it->second;
}

std::optional<std::size_t> FaceRing::index_of(const Monomial& m) const {
  if (m.variables() != variables_ || !allows(m.support())) return std::nullopt;
  const std::size_t j = m.polynomial_degree();
  basis(j);
  std::shared_ptr<const std::map<Monomial, std::size_t>> index;
  {
    std::lock_guard lock(cache_->mutex);
    index = cache_->indices.at(j);
  }
  auto it = index->find(m);
  if (it == index->end()) return std::nullopt;
  return it->second;
}

SRPolynomial FaceRing::normalize(const SRPolynomial& p) const {
  SRPolynomial out;
  for (const auto& [m, c] : p.terms())
    if (allows(m.support())) out.add(m, c);
  return out;
}

SRPolynomial FaceRing::multiply(const SRPolynomial& p, const SRPolynomial& q) const {
  SRPolynomial out;
  for (const auto& [a, ca] : p.terms()) {
    if (!allows(a.support())) continue;
    for (const auto& [b, cb] : q.terms()) {
      if (!allows(a.support() | b.support())) continue;
      out.add(a * b, ca * cb);
    }
  }
  return out;
}

SparseVector FaceRing::to_vector(const SRPolynomial& p, std::size_t j) const {
  std::vector<std::pair<std::size_t, Rational>> entries;
  for (const auto& [m, c] : p.terms()) {
    if (m.polynomial_degree() != j)
      throw ValidationError("polynomial has a term of degree " + std::to_string(m.degree()) +
                            ", expected " + std::to_string(2 * j));
    auto index = index_of(m);
    if (!index) throw ValidationError("monomial " + m.to_string() + " is zero in this ring");
    entries.emplace_back(*index, c);
  }
  SparseVector v;
  for (const auto& [i, c] : entries) v.add(i, c);
  return v;
}

SRPolynomial FaceRing::from_vector(const SparseVector& v, std::size_t j) const {
  const auto& b = basis(j);
  SRPolynomial p;
  for (const auto& [i, c] : v.entries()) p.add(b.at(i), c);
  return p;
}

// ---------------------------------------------------------------------------

std::vector<Monomial> sr_basis(const Fan& fan, std::size_t m) {
  if (m % 2 != 0) throw ValidationError("Stanley-Reisner degrees are even");
  return FaceRing::global(fan).basis(m / 2);
}

SRPolynomial restrict(const SRPolynomial& p, const Cone& sigma) {
  SRPolynomial out;
  for (const auto& [m, c] : p.terms())
    if ((m.support() & ~sigma.mask()) == 0) out.add(m, c);
  return out;
}

SRPolynomial multiply(const Fan& fan, const SRPolynomial& p, const SRPolynomial& q) {
  return FaceRing::global(fan).multiply(p, q);
}

std::vector<std::size_t> hilbert_series(const Fan& fan, std::size_t m_max) {
  const FaceRing ring = FaceRing::global(fan);
  std::vector<std::size_t> dims;
  for (std::size_t j = 0; 2 * j <= m_max; ++j) dims.push_back(ring.dimension(j));
  return dims;
}

}  // namespace toriclg
