#pragma once

#include "toriclg/exterior.hpp"
#include "toriclg/fan.hpp"
#include "toriclg/linalg.hpp"
#include "toriclg/stanley_reisner.hpp"
#include "toriclg/twisted_complex.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace toriclg {

/// Bit i set <=> vertex i (0-based position in the cover) belongs to the simplex.
using SimplexMask = std::uint32_t;

/// Presheaves on the cover simplex.
///   Functions:   tau -> O(Y_{sigma_tau})
///   Forms:       tau -> O(Y_{sigma_tau}) (x) Lambda^k
///   Annihilator: tau -> W^k = Lambda^k of the annihilator of sigma_tau in M_C
enum class Presheaf { Functions, Forms, Annihilator };

std::string to_string(Presheaf tag);

/// Slot of a Cech cochain space: Cech degree p, exterior degree k, z-degree m.
struct CechSlot {
  Presheaf tag;
  std::size_t p;
  std::size_t k;
  std::size_t m;
};

/// The full (s-1)-simplex on an ordered cover of the fan by maximal cones.
/// Components of a cochain in slot (tag, p, k, m) are stored in the order of
/// simplices(p); inside a component, Functions use the local monomial basis,
/// Forms use monomial-major (monomial, exterior index) order and Annihilator
/// uses annihilator_basis. Caches are internal and thread-safe.
class CoverSimplex {
 public:
  /// cover: 0-based indices into fan.max_cones(), in vertex order; default is
  /// every maximal cone in input order. Every maximal cone must be present.
  explicit CoverSimplex(const Fan& fan, std::optional<std::vector<std::size_t>> cover = std::nullopt,
                        std::size_t max_size = 8);

  const Fan& fan() const;
  std::size_t size() const;
  const std::vector<Cone>& cover() const;
  const std::vector<std::size_t>& cover_indices() const;

  /// p-simplices (p + 1 vertices) in lexicographic order of their vertex lists.
  const std::vector<SimplexMask>& simplices(std::size_t p) const;
  std::size_t simplex_position(SimplexMask tau) const;
  /// sigma_tau.
  const Cone& cone(SimplexMask tau) const;
  const FaceRing& local_ring(SimplexMask tau) const;

  /// Ambient Lambda^k coordinates of a basis of W^k_{sigma}.
  const std::vector<SparseVector>& annihilator_basis(const Cone& sigma, std::size_t k) const;

  std::size_t local_dimension(const CechSlot& slot, SimplexMask tau) const;
  std::size_t dimension(const CechSlot& slot) const;
  std::size_t offset(const CechSlot& slot, SimplexMask tau) const;

  /// Matrix of delta: C^p -> C^{p+1}.
  const RationalMatrix& delta(const CechSlot& slot) const;

  /// Restriction of a component from tau to a larger simplex tau2 (sigma_tau2 <= sigma_tau).
  SparseVector restrict_component(const CechSlot& slot, SimplexMask tau, SimplexMask tau2,
                                  const SparseVector& component) const;

  const ExteriorAlgebra& exterior() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

struct CechCochain {
  CechSlot slot;
  SparseVector values;
};

RationalMatrix cech_delta(const CoverSimplex& cs, Presheaf tag, std::size_t p, std::size_t k,
                          std::size_t m);

CechCochain apply_delta(const CoverSimplex& cs, const CechCochain& c);

/// Component of a cochain at tau in local coordinates.
SparseVector component(const CoverSimplex& cs, const CechCochain& c, SimplexMask tau);

/// Functions cochain from one polynomial per simplex in simplices(p). Each
/// polynomial must be homogeneous of z-degree m and live on Y_{sigma_tau}.
CechCochain functions_cochain(const CoverSimplex& cs, std::size_t p, std::size_t m,
                              const std::vector<SRPolynomial>& components);
std::vector<SRPolynomial> functions_components(const CoverSimplex& cs, const CechCochain& c);

struct ExactnessEntry {
  Presheaf tag;
  std::size_t k;
  std::size_t m;
  std::size_t global_dimension;    // dim R_m (x) Lambda^k
  std::size_t restriction_rank;    // rank of r
  std::vector<std::size_t> dims;   // dim C^p
  std::vector<std::size_t> ranks;  // rank delta_p
  bool exact;
};

struct ExactnessReport {
  std::vector<ExactnessEntry> entries;
  bool exact;
};

/// Checks 0 -> R_m -> C^0 -> C^1 -> ... for m = 0..m_max (z-degree), with
/// tag Functions and, when with_forms is set, tag Forms at every k.
ExactnessReport verify_exactness(const CoverSimplex& cs, std::size_t m_max, bool with_forms = false);

/// Global function from a closed Functions 0-cochain by the alternating sum
/// over all simplices; throws ValidationError when the input is not closed.
SRPolynomial glue_sections(const CoverSimplex& cs, const CechCochain& g);
/// Same for one (not necessarily homogeneous) polynomial per cover cone.
SRPolynomial glue_sections(const CoverSimplex& cs, const std::vector<SRPolynomial>& sections);

/// h with delta h = g for a closed Functions cochain of Cech degree p >= 1,
/// built stratum by stratum from the constant-coefficient lift.
CechCochain split_cocycle(const CoverSimplex& cs, const CechCochain& g);
/// Reference solution of delta h = g by a single linear solve.
CechCochain split_cocycle_generic(const CoverSimplex& cs, const CechCochain& g);

/// Cup product: front face of alpha times back face of beta, sharing the
/// middle vertex. Forms multiply by wedge; Annihilator classes are wedged
/// in the ambient exterior algebra.
CechCochain cup(const CoverSimplex& cs, const CechCochain& alpha, const CechCochain& beta);

/// Total complex of a double complex, one space per total degree.
class TotalComplex {
 public:
  struct Block {
    CechSlot slot;
    std::size_t offset;
    std::size_t size;
  };

  const std::vector<Block>& blocks(std::size_t t) const { return blocks_.at(t); }
  std::size_t dimension(std::size_t t) const;
  /// D from degree t to t + 1.
  const RationalMatrix& differential(std::size_t t) const { return differentials_.at(t); }
  const CohomologySlot& cohomology(std::size_t t) const { return slots_.at(t); }
  std::size_t t_max() const { return slots_.size() - 1; }
  std::vector<std::size_t> dims() const;
  std::optional<std::size_t> block_offset(std::size_t t, const CechSlot& slot) const;

 private:
  friend TotalComplex l_total_complex(const CoverSimplex&, std::size_t, bool);
  friend TotalComplex w_total_complex(const CoverSimplex&, std::size_t);
  std::vector<std::vector<Block>> blocks_;
  std::vector<RationalMatrix> differentials_;
  std::vector<CohomologySlot> slots_;
};

/// (L, delta, d_L) with blocks (p, j, k), total degree p + 2j + k, and
/// D = delta + (-1)^p d_L; with alternative_sign, D' = d_L + (-1)^k delta.
TotalComplex l_total_complex(const CoverSimplex& cs, std::size_t t_max, bool alternative_sign = false);
/// (W, delta, 0) with total degree p + k.
TotalComplex w_total_complex(const CoverSimplex& cs, std::size_t t_max);

std::vector<std::size_t> w_total_cohomology(const CoverSimplex& cs, std::size_t t_max);

/// Product on the W total complex with the sign (-1)^{k_x q_y}.
SparseVector w_total_cup(const CoverSimplex& cs, const TotalComplex& w, std::size_t t1,
                         const SparseVector& x, std::size_t t2, const SparseVector& y);

struct QuasiIsoReport {
  std::size_t t_max;
  std::vector<std::size_t> lg_dims;     // L(Y_Sigma)
  std::vector<std::size_t> l_total_dims;
  std::vector<std::size_t> w_total_dims;
  bool k_commutes = false;              // D_L K = K D_W
  bool r_commutes = false;              // D_L r = r d_L
  std::vector<std::size_t> k_induced_ranks;
  std::vector<std::size_t> r_induced_ranks;
  bool agree = false;
};

/// Compares the three pipelines and checks that K: W -> L and the
/// augmentation r: L(Y_Sigma) -> L induce isomorphisms in degrees 0..t_max.
QuasiIsoReport verify_quasi_iso_k(const CoverSimplex& cs, std::size_t t_max);

}  // namespace toriclg
