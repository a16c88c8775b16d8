#pragma once

#include "toriclg/exterior.hpp"
#include "toriclg/fan.hpp"
#include "toriclg/linalg.hpp"
#include "toriclg/stanley_reisner.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace toriclg {

/// One (j, k) summand R_j (x) Lambda^k of a fixed total degree t = 2j + k.
struct GradedBlock {
  std::size_t k;
  std::size_t j;
  std::size_t offset;
  std::size_t monomials;
  std::size_t forms;
  std::size_t size() const { return monomials * forms; }
};

struct FormTerm {
  Monomial monomial;
  ExteriorMask form;
  Rational coefficient;
};

/// L = (R (x) Lambda, d_L) with d_L(g (x) a) = sum_i f_i g (x) d/dxi_i a and
/// f_i = sum_j xi_i(rho_j) z_j. Elements of total degree t are vectors over
/// the blocks of layout(t): k ascending, then monomial, then exterior index.
/// Matrices and cohomology slots are computed lazily and cached; the object
/// is safe to share between threads.
class TwistedComplex {
 public:
  /// xi: rows are the xi_i in coordinates of M (default identity); must be
  /// unimodular. d_L^2 = 0 is verified for t < verify_through (default 2n+2).
  explicit TwistedComplex(Fan fan, std::optional<std::vector<LatticeVector>> xi = std::nullopt,
                          std::optional<std::size_t> verify_through = std::nullopt);

  const Fan& fan() const;
  std::size_t rank() const;
  const std::vector<LatticeVector>& xi() const;
  const std::vector<SRPolynomial>& linear_forms() const;
  const FaceRing& ring() const;
  const ExteriorAlgebra& exterior() const;

  const std::vector<GradedBlock>& layout(std::size_t t) const;
  std::size_t dimension(std::size_t t) const;
  std::optional<std::size_t> index_of(std::size_t t, const Monomial& m, ExteriorMask form) const;

  std::vector<FormTerm> terms(std::size_t t, const SparseVector& v) const;
  SparseVector to_vector(std::size_t t, const std::vector<FormTerm>& terms) const;

  /// d_L from degree t to degree t + 1.
  const RationalMatrix& differential(std::size_t t) const;
  const CohomologySlot& cohomology(std::size_t t) const;

  /// Product in R (x) Lambda of x (degree t1) and y (degree t2).
  SparseVector multiply(std::size_t t1, const SparseVector& x, std::size_t t2,
                        const SparseVector& y) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

struct LGCohomology {
  std::size_t t_max;
  std::vector<std::size_t> dims;
  std::vector<CohomologySlot> slots;
};

/// Cohomology of L in total degrees 0..t_max (default 2n + 2).
LGCohomology lg_cohomology(const TwistedComplex& tc, std::optional<std::size_t> t_max = std::nullopt);

/// Basis classes in degrees 0..t_max with all pairwise products; products
/// land in degrees up to 2 t_max.
class CohomologyRing {
 public:
  std::size_t t_max() const { return t_max_; }
  /// dim H^t for t = 0..2 t_max.
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// Coordinates in H^{t1+t2} of e_a * e_b with e_a in H^{t1}, e_b in H^{t2}.
  const SparseVector& product(std::size_t t1, std::size_t a, std::size_t t2, std::size_t b) const;
  /// Bilinear extension to coordinate vectors.
  SparseVector multiply(std::size_t t1, const SparseVector& x, std::size_t t2,
                        const SparseVector& y) const;
  /// Empty when associativity, graded commutativity and the unit law hold
  /// on every triple within range; otherwise a description of the failure.
  std::optional<std::string> check_axioms() const;

 private:
  friend CohomologyRing ring_structure(const TwistedComplex&, std::optional<std::size_t>);
  std::size_t t_max_ = 0;
  std::vector<std::size_t> dims_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, SparseVector> products_;
};

CohomologyRing ring_structure(const TwistedComplex& tc, std::optional<std::size_t> t_max = std::nullopt);

/// R(Sigma) / <f_1, ..., f_n> with a standard-monomial basis per polynomial
/// degree j and its structure constants.
class QuotientRing {
 public:
  std::size_t max_degree() const { return dims_.size() - 1; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Monomial>& basis(std::size_t j) const { return basis_[j]; }
  /// Coordinates in basis(j) of the class of a vector of R_j.
  SparseVector normal_form(std::size_t j, const SparseVector& v) const;
  /// Coordinates in basis(ja + jb) of q_a q_b, for ja + jb <= max_degree().
  SparseVector product(std::size_t ja, std::size_t a, std::size_t jb, std::size_t b) const;

 private:
  friend struct QuotientBuilder;
  struct Degree {
    std::vector<std::pair<std::size_t, SparseVector>> ideal_rows;
    std::vector<std::optional<std::size_t>> quotient_index;  // per R_j column
  };
  FaceRing ring_{0, {}};
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<Degree> degrees_;
};

struct LsopResult {
  bool regular = false;
  /// Coefficients of hilbert(R) * (1 - t^2)^n for polynomial degrees 0..m_max/2.
  std::vector<long long> expected_dims;
  std::vector<std::size_t> quotient_dims;
  QuotientRing quotient;
};

/// Regular-sequence test of f_1..f_n via Hilbert series up to cohomological
/// degree m_max >= 2n.
LsopResult lsop_check(const TwistedComplex& tc, std::size_t m_max);

/// Compares the quotient presentation with the L-cohomology ring through the
/// map q -> [q (x) 1]: bijective per degree and multiplicative. Empty on success.
std::optional<std::string> compare_quotient_with_ring(const TwistedComplex& tc,
                                                      const QuotientRing& quotient,
                                                      const CohomologyRing& ring);

struct ThetaPresentation {
  Cone sigma_m;
  /// Rays outside sigma_M, ascending.
  std::vector<std::size_t> extra_rays;
  /// a[i][e]: rho_{extra_rays[e]} = sum_i a[i][e] rho_{sigma_M.rays()[i]}.
  std::vector<std::vector<Integer>> a;
  /// theta~_i = theta_i + sum_l a_il theta_l, as display strings.
  std::vector<std::string> theta_tilde;
  /// Coefficient of d/dtheta~_i in {f, -}: z_i + sum_l a_il z_l.
  std::vector<SRPolynomial> coefficients;
  /// Dual basis of the rays of sigma_M used on the d_L side.
  std::vector<LatticeVector> xi;
  std::size_t verified_through = 0;
  bool matches = false;
  /// First degree whose matrices differ, if any.
  std::optional<std::size_t> mismatch_degree;
};

/// Builds the Theta presentation for sigma_M and compares its differential
/// with d_L for the dual basis matrix by matrix in degrees 0..t_max.
ThetaPresentation theta_identification(const Fan& fan, const Cone& sigma_m,
                                       std::optional<std::size_t> t_max = std::nullopt);

}  // namespace toriclg
