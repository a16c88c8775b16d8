#pragma once

#include "toriclg/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

namespace toriclg {

/// Bit i set <=> ray i (0-based) belongs to the set.
using RayMask = std::uint64_t;
using LatticeVector = std::vector<std::int64_t>;

inline constexpr std::size_t kMaxRays = 64;

/// A cone of a smooth fan, identified with its sorted set of ray indices.
class Cone {
 public:
  Cone() = default;
  explicit Cone(std::vector<std::size_t> rays);
  static Cone from_mask(RayMask mask);

  const std::vector<std::size_t>& rays() const { return rays_; }
  std::size_t dim() const { return rays_.size(); }
  RayMask mask() const { return mask_; }
  bool contains(std::size_t ray) const { return (mask_ >> ray) & 1U; }
  bool is_face_of(const Cone& other) const { return (mask_ & ~other.mask_) == 0; }
  Cone intersect(const Cone& other) const { return from_mask(mask_ & other.mask_); }

  /// "{1,3}" with 1-based ray numbers; the zero cone prints as "{}".
  std::string to_string() const;

  bool operator==(const Cone& other) const { return mask_ == other.mask_; }
  auto operator<=>(const Cone& other) const { return rays_ <=> other.rays_; }

 private:
  std::vector<std::size_t> rays_;
  RayMask mask_ = 0;
};

struct PolyhedronInput {
  std::vector<LatticeVector> vertices;
  std::vector<LatticeVector> recession_rays;
};

class Fan {
 public:
  /// Validates every fan invariant; throws ValidationError naming the
  /// offending ray or cone. An empty cone list means the zero fan.
  Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<Cone> max_cones,
      std::optional<PolyhedronInput> polyhedron = std::nullopt);

  std::size_t rank() const { return rank_; }
  std::size_t ray_count() const { return rays_.size(); }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(std::size_t i) const { return rays_[i]; }
  const std::vector<Cone>& max_cones() const { return max_cones_; }
  /// Face closure of the maximal cones, sorted lexicographically.
  const std::vector<Cone>& all_cones() const { return all_cones_; }
  const std::optional<PolyhedronInput>& polyhedron() const { return polyhedron_; }

  bool is_cone(RayMask mask) const { return faces_.contains(mask); }
  std::vector<Cone> cones_of_dimension(std::size_t k) const;
  std::optional<std::size_t> max_cone_index(const Cone& cone) const;

  /// Pairs (i, j), i < j, of maximal cones sharing a common facet.
  std::vector<std::pair<std::size_t, std::size_t>> adjacent_max_cones() const;

  /// The fan made of one cone and its faces, with the cone's rays renumbered 0..k-1.
  Fan single_cone_fan(const Cone& cone) const;

  /// Pairing of an integer covector with ray i.
  Rational pair(std::span<const Rational> covector, std::size_t ray) const;

 private:
  std::size_t rank_;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> max_cones_;
  std::vector<Cone> all_cones_;
  std::unordered_set<RayMask> faces_;
  std::optional<PolyhedronInput> polyhedron_;
};

/// Parses the JSON fan format:
///   {"rank": n, "rays": [[..],..], "max_cones": [[1-based ids],..],
///    "polyhedron": {"vertices": [..], "recession_rays": [..]}}
/// Throws ParseError for malformed input and ValidationError for invalid fans.
Fan parse_fan(std::string_view text);
std::string fan_to_json(const Fan& fan);

/// Minimal ray sets lying in no cone; sorted lexicographically (0-based ids).
std::vector<std::vector<std::size_t>> primitive_collections(const Fan& fan);

/// Intersection of the cover cones indexed by the vertex set of tau.
Cone cone_of_simplex(const std::vector<Cone>& cover, std::span<const std::size_t> tau);

/// Coordinates a with target = sum_i a_i * ray(cone.rays()[i]); throws
/// NoSolutionError when target is outside the span.
std::vector<Rational> coordinates_in_cone(const Fan& fan, const Cone& cone,
                                          const LatticeVector& target);

/// Rows xi_i of the basis of M dual to the rays of an n-dimensional cone:
/// xi_i(ray(cone.rays()[j])) = delta_ij.
std::vector<LatticeVector> dual_basis(const Fan& fan, const Cone& cone);

/// Per maximal cone sigma a covector m_sigma with phi(v) = <m_sigma, v> on sigma.
struct PLCertificate {
  std::vector<std::vector<Rational>> slopes;  // indexed like Fan::max_cones()
  std::vector<Integer> values;                // phi(ray_i)

  const Integer& phi(std::size_t ray) const { return values[ray]; }
};

struct SemiprojectiveFailure {
  enum class Reason { NotFullDimensional, SupportNotConvex, NoStrictlyConvexPhi };
  Reason reason;
  std::vector<Cone> witnesses;
  std::string detail;
};

std::string_view to_string(SemiprojectiveFailure::Reason reason);

using SemiprojectivityResult = std::variant<PLCertificate, SemiprojectiveFailure>;

/// Uses the polyhedron when given (or stored in the fan), otherwise
/// searches for a strictly convex piecewise linear function.
SemiprojectivityResult check_semiprojective(const Fan& fan,
                                            std::optional<PolyhedronInput> polyhedron = std::nullopt);

/// Integrality, continuity across shared rays and strictness (margin >= 1)
/// across every wall. Returns the first violation found.
std::optional<SemiprojectiveFailure> verify_certificate(const Fan& fan, const PLCertificate& cert);

/// ray_l = sum_i a_i ray_i over the rays of sigma_m, and the exponent
/// m = phi(ray_l) - sum_i a_i phi(ray_i) of  z_l * prod z_i^{-a_i} = t^m.
struct DegenerationRelation {
  Cone sigma_m;
  std::size_t ray;
  std::vector<Integer> coefficients;  // aligned with sigma_m.rays()
  Integer exponent;
};

DegenerationRelation degeneration_exponent(const Fan& fan, const PLCertificate& phi,
                                           const Cone& sigma_m, std::size_t ray);

}  // namespace toriclg
