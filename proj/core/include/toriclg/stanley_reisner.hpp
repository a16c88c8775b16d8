#pragma once

#include "toriclg/fan.hpp"
#include "toriclg/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace toriclg {

/// Monomial in the ray variables z_1..z_d, stored as a dense exponent vector.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exponents);
  static Monomial one(std::size_t variables) { return Monomial(std::vector<unsigned>(variables, 0)); }
  static Monomial variable(std::size_t variables, std::size_t i);

  const std::vector<unsigned>& exponents() const { return exponents_; }
  std::size_t variables() const { return exponents_.size(); }
  unsigned exponent(std::size_t i) const { return exponents_[i]; }
  RayMask support() const { return support_; }
  /// Sum of exponents.
  std::size_t polynomial_degree() const { return total_; }
  /// Cohomological degree, deg z_i = 2.
  std::size_t degree() const { return 2 * total_; }

  Monomial operator*(const Monomial& other) const;

  /// "1", "z1", "z1^2*z3".
  std::string to_string() const;

  bool operator==(const Monomial& other) const { return exponents_ == other.exponents_; }
  /// Lexicographic order on exponent vectors, larger first: z1^2 < z1*z2 < z2^2.
  bool operator<(const Monomial& other) const { return exponents_ > other.exponents_; }

 private:
  std::vector<unsigned> exponents_;
  RayMask support_ = 0;
  std::size_t total_ = 0;
};

/// Finite Q-linear combination of monomials; no stored zero coefficients.
class SRPolynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  SRPolynomial() = default;
  SRPolynomial(const Monomial& m, Rational c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;
  void add(const Monomial& m, const Rational& c);

  SRPolynomial& operator+=(const SRPolynomial& other);
  SRPolynomial& operator-=(const SRPolynomial& other);
  SRPolynomial& operator*=(const Rational& c);
  friend SRPolynomial operator+(SRPolynomial a, const SRPolynomial& b) { return a += b; }
  friend SRPolynomial operator-(SRPolynomial a, const SRPolynomial& b) { return a -= b; }
  friend SRPolynomial operator*(Rational c, SRPolynomial a) { return a *= c; }

  /// "0", "z1 - 2*z2^2 + 1" in Monomial order.
  std::string to_string() const;

  bool operator==(const SRPolynomial&) const = default;

 private:
  Terms terms_;
};

/// Graded face ring: monomials whose support lies in one of the facets.
/// The global ring R(Sigma) uses the maximal cones; the ring of Y_sigma
/// uses the single facet sigma. Variables are always indexed 0..d-1.
class FaceRing {
 public:
  FaceRing(std::size_t variables, std::vector<RayMask> facets);
  static FaceRing global(const Fan& fan);
  static FaceRing local(const Fan& fan, const Cone& sigma);

  std::size_t variables() const { return variables_; }
  const std::vector<RayMask>& facets() const { return facets_; }
  bool allows(RayMask support) const;

  /// Basis of the polynomial-degree j part in Monomial order. Cached.
  const std::vector<Monomial>& basis(std::size_t j) const;
  std::size_t dimension(std::size_t j) const { return basis(j).size(); }
  std::optional<std::size_t> index_of(const Monomial& m) const;

  /// Drops monomials whose support is not allowed.
  SRPolynomial normalize(const SRPolynomial& p) const;
  SRPolynomial multiply(const SRPolynomial& p, const SRPolynomial& q) const;

  /// Coordinates of the degree-j part of p in basis(j); terms of other
  /// degrees must be absent. Throws ValidationError on disallowed monomials.
  SparseVector to_vector(const SRPolynomial& p, std::size_t j) const;
  SRPolynomial from_vector(const SparseVector& v, std::size_t j) const;

 private:
  struct Cache;
  std::size_t variables_;
  std::vector<RayMask> facets_;
  std::shared_ptr<Cache> cache_;
};

/// Monomials of cohomological degree m (m even) spanning R(Sigma)_m.
std::vector<Monomial> sr_basis(const Fan& fan, std::size_t m);

/// Kills monomials whose support is not contained in sigma.
SRPolynomial restrict(const SRPolynomial& p, const Cone& sigma);

/// Product in R(Sigma).
SRPolynomial multiply(const Fan& fan, const SRPolynomial& p, const SRPolynomial& q);

/// dim R(Sigma)_m for m = 0, 2, ..., m_max.
std::vector<std::size_t> hilbert_series(const Fan& fan, std::size_t m_max);

}  // namespace toriclg
