#include "toriclg/fan.hpp"

#include "toriclg/errors.hpp"
#include "toriclg/linalg.hpp"
#include "toriclg/lp.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

namespace toriclg {

namespace {

RationalMatrix columns_matrix(const Fan& fan, const std::vector<std::size_t>& rays) {
  RationalMatrix m(fan.rank(), rays.size());
  for (std::size_t c = 0; c < rays.size(); ++c)
    for (std::size_t r = 0; r < fan.rank(); ++r)
      if (fan.ray(rays[c])[r] != 0) m.set(r, c, fan.ray(rays[c])[r]);
  return m;
}

SparseVector to_sparse(const LatticeVector& v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i) s.push_back(i, Rational(v[i]));
  return s;
}

Integer gcd_of_maximal_minors(const std::vector<LatticeVector>& vectors, std::size_t n) {
  const std::size_t k = vectors.size();
  if (k == 0) return 1;
  Integer g = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::vector<Rational>> minor(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < n; ++c)
        if (pick[c]) minor[i].push_back(Rational(vectors[i][c]));
    const Rational det = determinant(std::move(minor));
    g = boost::multiprecision::gcd(g, Integer(boost::multiprecision::abs(numerator(det))));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

Rational pairing(const std::vector<Rational>& covector, const LatticeVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += covector[i] * v[i];
  return s;
}

}  // namespace

Cone::Cone(std::vector<std::size_t> rays) : rays_(std::move(rays)) {
  std::sort(rays_.begin(), rays_.end());
  rays_.erase(std::unique(rays_.begin(), rays_.end()), rays_.end());
  for (std::size_t r : rays_) {
    if (r >= kMaxRays) throw ValidationError("ray index exceeds the supported 64 rays");
    mask_ |= RayMask{1} << r;
  }
}

Cone Cone::from_mask(RayMask mask) {
  std::vector<std::size_t> rays;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) rays.push_back(i);
  return Cone(std::move(rays));
}

std::string Cone::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < rays_.size(); ++i) out << (i ? "," : "") << rays_[i] + 1;
  out << '}';
  return out.str();
}

Fan::Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<Cone> max_cones,
         std::optional<PolyhedronInput> polyhedron)
    : rank_(rank), rays_(std::move(rays)), max_cones_(std::move(max_cones)),
      polyhedron_(std::move(polyhedron)) {
  if (rank_ == 0) throw ValidationError("rank must be positive");
  if (rays_.size() > kMaxRays) throw ValidationError("at most 64 rays are supported");

  for (std::size_t i = 0; i < rays_.size(); ++i) {
    const auto& v = rays_[i];
    if (v.size() != rank_)
      throw ValidationError("ray " + std::to_string(i + 1) + " has the wrong length");
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x);
    if (g == 0) throw ValidationError("ray " + std::to_string(i + 1) + " is zero");
    if (g != 1) throw ValidationError("ray " + std::to_string(i + 1) + " is not primitive (gcd " +
                                      std::to_string(g) + ")");
    for (std::size_t j = 0; j < i; ++j)
      if (rays_[j] == v)
        throw ValidationError("rays " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                              " coincide");
  }

  if (max_cones_.empty()) max_cones_.emplace_back();
  for (std::size_t i = 0; i < max_cones_.size(); ++i) {
    const Cone& c = max_cones_[i];
    for (std::size_t r : c.rays())
      if (r >= rays_.size())
        throw ValidationError("cone " + c.to_string() + " references a missing ray");
    for (std::size_t j = 0; j < max_cones_.size(); ++j) {
      if (i == j) continue;
      if (c == max_cones_[j] && j < i)
        throw ValidationError("cone " + c.to_string() + " is listed twice");
      if (c != max_cones_[j] && c.is_face_of(max_cones_[j]))
        throw ValidationError("cone " + c.to_string() + " is a face of cone " +
                              max_cones_[j].to_string() + "; list maximal cones only");
    }
    if (c.dim() > rank_)
      throw ValidationError("cone " + c.to_string() + " has more rays than the rank");
    std::vector<LatticeVector> generators;
    for (std::size_t r : c.rays()) generators.push_back(rays_[r]);
    const Integer g = gcd_of_maximal_minors(generators, rank_);
    if (g == 0)
      throw ValidationError("cone " + c.to_string() + " is not smooth (rays are linearly dependent)");
    if (g != 1) {
      const std::string what = c.dim() == rank_ ? "determinant " : "gcd of maximal minors ";
      throw ValidationError("cone " + c.to_string() + " is not smooth (" + what + g.str() + ")");
    }
  }

  RayMask used = 0;
  for (const Cone& c : max_cones_) used |= c.mask();
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (!((used >> i) & 1U))
      throw ValidationError("ray " + std::to_string(i + 1) + " lies in no cone");

  // Fan condition: for simplicial cones A, B the intersection is the face
  // spanned by A n B iff no nonnegative relation sum l_a r_a = sum m_b r_b
  // puts weight on a ray outside A n B.
  for (std::size_t i = 0; i < max_cones_.size(); ++i) {
    for (std::size_t j = i + 1; j < max_cones_.size(); ++j) {
      const Cone& a = max_cones_[i];
      const Cone& b = max_cones_[j];
      const std::size_t na = a.dim(), nb = b.dim();
      std::vector<std::vector<Rational>> rows(rank_ + 1, std::vector<Rational>(na + nb));
      for (std::size_t c = 0; c < na; ++c) {
        for (std::size_t r = 0; r < rank_; ++r) rows[r][c] = rays_[a.rays()[c]][r];
        if (!b.contains(a.rays()[c])) rows[rank_][c] = 1;
      }
      for (std::size_t c = 0; c < nb; ++c) {
        for (std::size_t r = 0; r < rank_; ++r) rows[r][na + c] = -rays_[b.rays()[c]][r];
        if (!a.contains(b.rays()[c])) rows[rank_][na + c] = 1;
      }
      std::vector<Rational> rhs(rank_ + 1);
      rhs[rank_] = 1;
      if (find_nonnegative_solution(rows, rhs, na + nb))
        throw ValidationError("cones " + a.to_string() + " and " + b.to_string() +
                              " do not meet in a common face (fan condition)");
    }
  }

  std::set<Cone> closure;
  for (const Cone& c : max_cones_) {
    const RayMask m = c.mask();
    // Enumerate all submasks of m, including m and 0.
    for (RayMask sub = m;; sub = (sub - 1) & m) {
      if (faces_.insert(sub).second) closure.insert(Cone::from_mask(sub));
      if (sub == 0) break;
    }
  }
  all_cones_.assign(closure.begin(), closure.end());

  if (polyhedron_) {
    const auto& p = *polyhedron_;
    if (p.vertices.empty()) throw ValidationError("polyhedron has no vertices");
    for (const auto& v : p.vertices)
      if (v.size() != rank_) throw ValidationError("polyhedron vertex has the wrong length");
    for (const auto& v : p.recession_rays)
      if (v.size() != rank_) throw ValidationError("polyhedron recession ray has the wrong length");
    RationalMatrix directions(p.vertices.size() - 1 + p.recession_rays.size(), rank_);
    std::size_t row = 0;
    for (std::size_t i = 1; i < p.vertices.size(); ++i, ++row)
      for (std::size_t c = 0; c < rank_; ++c)
        directions.set(row, c, Rational(p.vertices[i][c] - p.vertices[0][c]));
    for (const auto& r : p.recession_rays) {
      for (std::size_t c = 0; c < rank_; ++c) directions.set(row, c, Rational(r[c]));
      ++row;
    }
    if (toriclg::rank(directions) != rank_)
      throw ValidationError("polyhedron is not full-dimensional");
  }
}

std::vector<Cone> Fan::cones_of_dimension(std::size_t k) const {
  std::vector<Cone> out;
  for (const Cone& c : all_cones_)
    if (c.dim() == k) out.push_back(c);
  return out;
}

std::optional<std::size_t> Fan::max_cone_index(const Cone& cone) const {
  for (std::size_t i = 0; i < max_cones_.size(); ++i)
    if (max_cones_[i] == cone) return i;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> Fan::adjacent_max_cones() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < max_cones_.size(); ++i)
    for (std::size_t j = i + 1; j < max_cones_.size(); ++j) {
      const auto shared = std::popcount(max_cones_[i].mask() & max_cones_[j].mask());
      if (max_cones_[i].dim() == rank_ && max_cones_[j].dim() == rank_ &&
          static_cast<std::size_t>(shared) + 1 == rank_)
        out.emplace_back(i, j);
    }
  return out;
}

Fan Fan::single_cone_fan(const Cone& cone) const {
  std::vector<LatticeVector> rays;
  std::vector<std::size_t> ids;
  for (std::size_t r : cone.rays()) {
    ids.push_back(rays.size());
    rays.push_back(rays_[r]);
  }
  return Fan(rank_, std::move(rays), {Cone(ids)});
}

Rational Fan::pair(std::span<const Rational> covector, std::size_t ray) const {
  Rational s = 0;
  for (std::size_t i = 0; i < rank_; ++i) s += covector[i] * rays_[ray][i];
  return s;
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

LatticeVector read_vector(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
  LatticeVector v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError(std::string(what) + " must contain integers");
    v.push_back(x.get<std::int64_t>());
  }
  return v;
}

std::vector<LatticeVector> read_vectors(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<LatticeVector> out;
  for (const auto& x : j) out.push_back(read_vector(x, what));
  return out;
}

}  // namespace

Fan parse_fan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("fan file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("fan file must be a JSON object");
  for (const char* key : {"rank", "rays", "max_cones"})
    if (!doc.contains(key)) throw ParseError(std::string("fan file lacks \"") + key + "\"");
  if (!doc["rank"].is_number_integer() || doc["rank"].get<std::int64_t>() < 1)
    throw ParseError("\"rank\" must be a positive integer");
  const auto rank = static_cast<std::size_t>(doc["rank"].get<std::int64_t>());

  auto rays = read_vectors(doc["rays"], "\"rays\"");
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i].size() != rank)
      throw ParseError("ray " + std::to_string(i + 1) + " has " + std::to_string(rays[i].size()) +
                       " entries, expected " + std::to_string(rank));

  std::vector<Cone> cones;
  for (const auto& ids : read_vectors(doc["max_cones"], "\"max_cones\"")) {
    std::vector<std::size_t> zero_based;
    for (auto id : ids) {
      if (id < 1 || static_cast<std::size_t>(id) > rays.size())
        throw ParseError("cone references ray " + std::to_string(id) + " which does not exist");
      zero_based.push_back(static_cast<std::size_t>(id - 1));
    }
    if (std::set<std::size_t>(zero_based.begin(), zero_based.end()).size() != zero_based.size())
      throw ParseError("cone lists a ray twice");
    cones.emplace_back(std::move(zero_based));
  }
  // "[[]]" and "[]" both denote the zero fan.
  if (cones.size() == 1 && cones.front().dim() == 0) cones.clear();

  std::optional<PolyhedronInput> polyhedron;
  if (doc.contains("polyhedron") && !doc["polyhedron"].is_null()) {
    const auto& p = doc["polyhedron"];
    if (!p.is_object() || !p.contains("vertices"))
      throw ParseError("\"polyhedron\" must be an object with \"vertices\"");
    PolyhedronInput input;
    input.vertices = read_vectors(p["vertices"], "polyhedron vertices");
    if (p.contains("recession_rays"))
      input.recession_rays = read_vectors(p["recession_rays"], "polyhedron recession rays");
    polyhedron = std::move(input);
  }
  return Fan(rank, std::move(rays), std::move(cones), std::move(polyhedron));
}

std::string fan_to_json(const Fan& fan) {
  json doc;
  doc["rank"] = fan.rank();
  doc["rays"] = fan.rays();
  json cones = json::array();
  for (const Cone& c : fan.max_cones()) {
    json ids = json::array();
    for (std::size_t r : c.rays()) ids.push_back(r + 1);
    cones.push_back(ids);
  }
  doc["max_cones"] = cones;
  if (fan.polyhedron()) {
    doc["polyhedron"]["vertices"] = fan.polyhedron()->vertices;
    doc["polyhedron"]["recession_rays"] = fan.polyhedron()->recession_rays;
  }
  return doc.dump();
}

// ---------------------------------------------------------------------------

std::vector<std::vector<std::size_t>> primitive_collections(const Fan& fan) {
  std::set<RayMask> found;
  for (const Cone& face : fan.all_cones()) {
    for (std::size_t r = 0; r < fan.ray_count(); ++r) {
      if (face.contains(r)) continue;
      const RayMask candidate = face.mask() | (RayMask{1} << r);
      if (fan.is_cone(candidate)) continue;
      bool minimal = true;
      for (RayMask rest = candidate; rest != 0; rest &= rest - 1) {
        const RayMask bit = rest & (~rest + 1);
        if (!fan.is_cone(candidate & ~bit)) {
          minimal = false;
          break;
        }
      }
      if (minimal) found.insert(candidate);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (RayMask m : found) out.push_back(Cone::from_mask(m).rays());
  std::sort(out.begin(), out.end());
  return out;
}

Cone cone_of_simplex(const std::vector<Cone>& cover, std::span<const std::size_t> tau) {
  if (tau.empty()) throw ValidationError("cone_of_simplex: empty simplex");
  RayMask m = ~RayMask{0};
  for (std::size_t i : tau) {
    if (i >= cover.size()) throw ValidationError("cone_of_simplex: vertex outside the cover");
    m &= cover[i].mask();
  }
  return Cone::from_mask(m);
}

std::vector<Rational> coordinates_in_cone(const Fan& fan, const Cone& cone,
                                          const LatticeVector& target) {
  const Lifter lifter(columns_matrix(fan, cone.rays()));
  const SparseVector a = lifter.lift(to_sparse(target));
  return a.to_dense(cone.dim());
}

std::vector<LatticeVector> dual_basis(const Fan& fan, const Cone& cone) {
  const std::size_t n = fan.rank();
  if (cone.dim() != n)
    throw ValidationError("dual basis needs an n-dimensional cone, got " + cone.to_string());
  const Lifter lifter(columns_matrix(fan, cone.rays()).transposed());
  std::vector<LatticeVector> xi;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = lifter.lift(SparseVector::unit(i)).to_dense(n);
    LatticeVector v;
    for (const Rational& x : row) {
      if (!is_integral(x)) throw InternalError("dual basis of a smooth cone is not integral");
      v.push_back(static_cast<std::int64_t>(numerator(x)));
    }
    xi.push_back(std::move(v));
  }
  return xi;
}

// ---------------------------------------------------------------------------

std::string_view to_string(SemiprojectiveFailure::Reason reason) {
  switch (reason) {
    case SemiprojectiveFailure::Reason::NotFullDimensional: return "not-full-dimensional";
    case SemiprojectiveFailure::Reason::SupportNotConvex: return "support-not-convex";
    case SemiprojectiveFailure::Reason::NoStrictlyConvexPhi: return "no-strictly-convex-phi";
  }
  return "unknown";
}

namespace {

using Reason = SemiprojectiveFailure::Reason;

std::vector<Rational> slope_from_values(const Fan& fan, const Cone& sigma,
                                        const std::vector<Integer>& values) {
  // <m, ray_i> = phi(ray_i) for the rays of sigma.
  const Lifter lifter(columns_matrix(fan, sigma.rays()).transposed());
  SparseVector rhs;
  for (std::size_t i = 0; i < sigma.dim(); ++i)
    rhs.push_back(i, Rational(values[sigma.rays()[i]]));
  return lifter.lift(rhs).to_dense(fan.rank());
}

PLCertificate certificate_from_values(const Fan& fan, std::vector<Integer> values) {
  PLCertificate cert;
  for (const Cone& sigma : fan.max_cones()) cert.slopes.push_back(slope_from_values(fan, sigma, values));
  cert.values = std::move(values);
  return cert;
}

std::optional<SemiprojectiveFailure> check_support(const Fan& fan) {
  const std::size_t n = fan.rank();
  std::vector<Cone> thin;
  for (const Cone& c : fan.max_cones())
    if (c.dim() != n) thin.push_back(c);
  if (!thin.empty())
    return SemiprojectiveFailure{Reason::NotFullDimensional, thin,
                                 "maximal cones of dimension below the rank"};

  for (const Cone& sigma : fan.max_cones()) {
    for (std::size_t omitted : sigma.rays()) {
      const RayMask facet = sigma.mask() & ~(RayMask{1} << omitted);
      std::size_t owners = 0;
      for (const Cone& other : fan.max_cones())
        if ((facet & ~other.mask()) == 0) ++owners;
      if (owners != 1) continue;

      // Boundary facet: its hyperplane must support every ray of the fan.
      const Cone f = Cone::from_mask(facet);
      const auto normal_basis = kernel_basis(columns_matrix(fan, f.rays()).transposed());
      if (normal_basis.size() != 1) throw InternalError("facet normal is not unique");
      const auto normal = normal_basis.front().to_dense(n);
      const int side = pairing(normal, fan.ray(omitted)) > 0 ? 1 : -1;
      for (std::size_t r = 0; r < fan.ray_count(); ++r) {
        const Rational s = pairing(normal, fan.ray(r));
        if ((side > 0 && s < 0) || (side < 0 && s > 0))
          return SemiprojectiveFailure{
              Reason::SupportNotConvex, {sigma, f},
              "boundary facet " + f.to_string() + " of cone " + sigma.to_string() +
                  " separates ray " + std::to_string(r + 1)};
      }
    }
  }
  return std::nullopt;
}

SemiprojectivityResult certificate_from_polyhedron(const Fan& fan, const PolyhedronInput& p) {
  for (const auto& r : p.recession_rays)
    for (std::size_t i = 0; i < fan.ray_count(); ++i) {
      Integer s = 0;
      for (std::size_t c = 0; c < fan.rank(); ++c) s += Integer(r[c]) * fan.ray(i)[c];
      if (s < 0)
        return SemiprojectiveFailure{Reason::NoStrictlyConvexPhi, {Cone({i})},
                                     "polyhedron is unbounded below along ray " +
                                         std::to_string(i + 1)};
    }
  std::vector<Integer> values;
  for (std::size_t i = 0; i < fan.ray_count(); ++i) {
    std::optional<Integer> lowest;
    for (const auto& v : p.vertices) {
      Integer s = 0;
      for (std::size_t c = 0; c < fan.rank(); ++c) s += Integer(v[c]) * fan.ray(i)[c];
      if (!lowest || s < *lowest) lowest = s;
    }
    values.push_back(-*lowest);
  }
  PLCertificate cert = certificate_from_values(fan, std::move(values));
  if (auto failure = verify_certificate(fan, cert)) {
    failure->detail = "polyhedron does not induce a strictly convex function: " + failure->detail;
    return *failure;
  }
  return cert;
}

SemiprojectivityResult search_certificate(const Fan& fan) {
  const std::size_t d = fan.ray_count();
  std::vector<std::vector<Rational>> ge, eq;
  std::vector<Rational> ge_rhs, eq_rhs;
  for (const auto& [i, j] : fan.adjacent_max_cones()) {
    for (const auto& [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
      const Cone& sigma = fan.max_cones()[a];
      const Cone& other = fan.max_cones()[b];
      const std::size_t across = Cone::from_mask(other.mask() & ~sigma.mask()).rays().front();
      const auto coords = coordinates_in_cone(fan, sigma, fan.ray(across));
      std::vector<Rational> row(d);
      row[across] = 1;
      for (std::size_t k = 0; k < sigma.dim(); ++k) row[sigma.rays()[k]] -= coords[k];
      ge.push_back(std::move(row));
      ge_rhs.emplace_back(1);
    }
  }
  // phi is unique up to a global linear function; pin it to zero on the first cone.
  for (std::size_t r : fan.max_cones().front().rays()) {
    std::vector<Rational> row(d);
    row[r] = 1;
    eq.push_back(std::move(row));
    eq_rhs.emplace_back(0);
  }
  auto solution = find_feasible_point(ge, ge_rhs, eq, eq_rhs, d);
  if (!solution)
    return SemiprojectiveFailure{Reason::NoStrictlyConvexPhi, fan.max_cones(),
                                 "wall-crossing inequalities are infeasible"};
  Integer scale = 1;
  for (const Rational& x : *solution) {
    const Integer den = denominator(x);
    scale = scale / boost::multiprecision::gcd(scale, den) * den;
  }
  std::vector<Integer> values;
  for (const Rational& x : *solution) values.push_back(numerator(Rational(x * scale)));
  PLCertificate cert = certificate_from_values(fan, std::move(values));
  if (auto failure = verify_certificate(fan, cert))
    throw InternalError("certificate search produced an invalid certificate: " + failure->detail);
  return cert;
}

}  // namespace

std::optional<SemiprojectiveFailure> verify_certificate(const Fan& fan, const PLCertificate& cert) {
  const auto& cones = fan.max_cones();
  if (cert.slopes.size() != cones.size() || cert.values.size() != fan.ray_count())
    return SemiprojectiveFailure{Reason::NoStrictlyConvexPhi, {}, "certificate has the wrong shape"};
  for (std::size_t s = 0; s < cones.size(); ++s) {
    for (std::size_t r = 0; r < fan.ray_count(); ++r)
      if (!is_integral(pairing(cert.slopes[s], fan.ray(r))))
        return SemiprojectiveFailure{Reason::NoStrictlyConvexPhi, {cones[s]},
                                     "slope of cone " + cones[s].to_string() + " is not integral"};
    for (std::size_t r : cones[s].rays())
      if (pairing(cert.slopes[s], fan.ray(r)) != Rational(cert.values[r]))
        return SemiprojectiveFailure{Reason::NoStrictlyConvexPhi, {cones[s]},
                                     "slope of cone " + cones[s].to_string() +
                                         " disagrees with phi on ray " + std::to_string(r + 1)};
  }
  for (const auto& [i, j] : fan.adjacent_max_cones()) {
    const Cone wall = cones[i].intersect(cones[j]);
    for (std::size_t r : wall.rays())
      if (pairing(cert.slopes[i], fan.ray(r)) != pairing(cert.slopes[j], fan.ray(r)))
        return SemiprojectiveFailure{Reason::NoStrictlyConvexPhi, {cones[i], cones[j]},
                                     "phi is discontinuous across " + wall.to_string()};
    for (const auto& [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
      for (std::size_t r : cones[b].rays()) {
        if (cones[a].contains(r)) continue;
        const Rational margin =
            pairing(cert.slopes[b], fan.ray(r)) - pairing(cert.slopes[a], fan.ray(r));
        if (margin < 1)
          return SemiprojectiveFailure{
              Reason::NoStrictlyConvexPhi, {cones[a], cones[b]},
              "phi is not strictly convex across " + wall.to_string() + " (margin " +
                  to_string(margin) + " at ray " + std::to_string(r + 1) + ")"};
      }
    }
  }
  return std::nullopt;
}

SemiprojectivityResult check_semiprojective(const Fan& fan, std::optional<PolyhedronInput> polyhedron) {
  if (auto failure = check_support(fan)) return *failure;
  if (!polyhedron) polyhedron = fan.polyhedron();
  if (polyhedron) return certificate_from_polyhedron(fan, *polyhedron);
  return search_certificate(fan);
}

DegenerationRelation degeneration_exponent(const Fan& fan, const PLCertificate& phi,
                                           const Cone& sigma_m, std::size_t ray) {
  if (sigma_m.dim() != fan.rank() || !fan.is_cone(sigma_m.mask()))
    throw ValidationError("sigma_M " + sigma_m.to_string() + " is not an n-dimensional cone");
  if (ray >= fan.ray_count()) throw ValidationError("ray index out of range");
  if (sigma_m.contains(ray))
    throw ValidationError("ray " + std::to_string(ray + 1) + " belongs to sigma_M; relation is degenerate");

  DegenerationRelation rel{sigma_m, ray, {}, 0};
  Integer m = phi.phi(ray);
  const auto coords = coordinates_in_cone(fan, sigma_m, fan.ray(ray));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!is_integral(coords[i]))
      throw InternalError("non-integral coordinates in a smooth cone");
    const Integer a = numerator(coords[i]);
    m -= a * phi.phi(sigma_m.rays()[i]);
    rel.coefficients.push_back(a);
  }
  if (m <= 0)
    throw ValidationError("certificate is not strictly convex at ray " + std::to_string(ray + 1) +
                          " (exponent " + m.str() + ")");
  rel.exponent = m;
  return rel;
}

}  // namespace toriclg
