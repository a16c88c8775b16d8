#include "toriclg/cech.hpp"

#include "toriclg/errors.hpp"
#include "toriclg/parallel.hpp"

#include "cache.hpp"

#include <bit>
#include <mutex>
#include <tuple>
#include <unordered_map>

namespace toriclg {

using detail::cached;

std::string to_string(Presheaf tag) {
  switch (tag) {
    case Presheaf::Functions: return "O";
    case Presheaf::Forms: return "O(x)Lambda";
    case Presheaf::Annihilator: return "W";
  }
  return "?";
}

namespace {

using SlotKey = std::tuple<int, std::size_t, std::size_t, std::size_t>;

SlotKey key_of(const CechSlot& s) { return {static_cast<int>(s.tag), s.p, s.k, s.m}; }

std::vector<std::size_t> vertices_of(SimplexMask tau) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; tau >> i; ++i)
    if ((tau >> i) & 1U) v.push_back(i);
  return v;
}

/// simplices[p] = (p+1)-subsets of {0..s-1}, lexicographic on sorted vertex lists.
std::vector<std::vector<SimplexMask>> enumerate_simplices(std::size_t s) {
  std::vector<std::vector<SimplexMask>> out(s);
  auto fill = [&](auto&& self, std::size_t left, std::size_t start, SimplexMask acc,
                  std::vector<SimplexMask>& into) -> void {
    if (left == 0) {
      into.push_back(acc);
      return;
    }
    for (std::size_t i = start; i + left <= s; ++i)
      self(self, left - 1, i + 1, acc | (SimplexMask{1} << i), into);
  };
  for (std::size_t p = 0; p < s; ++p) fill(fill, p + 1, 0, 0, out[p]);
  return out;
}

struct AnnihilatorSpace {
  std::vector<SparseVector> basis;
  std::shared_ptr<Echelon> echelon;
};

struct SlotLayout {
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
};

}  // namespace

struct CoverSimplex::State {
  Fan fan;
  std::vector<Cone> cover;
  std::vector<std::size_t> indices;
  std::vector<std::vector<SimplexMask>> simplices;
  std::unordered_map<SimplexMask, std::size_t> positions;
  std::vector<Cone> cones;  // indexed by simplex mask
  ExteriorAlgebra exterior;

  std::mutex mutex;
  std::map<RayMask, std::shared_ptr<const FaceRing>> rings;
  std::map<std::pair<RayMask, std::size_t>, std::shared_ptr<const AnnihilatorSpace>> annihilators;
  std::map<SlotKey, std::shared_ptr<const SlotLayout>> layouts;
  std::map<SlotKey, std::shared_ptr<const RationalMatrix>> deltas;

  explicit State(const Fan& f) : fan(f), exterior(f.rank()) {}

  const AnnihilatorSpace& annihilator(const Cone& sigma, std::size_t k) {
    return cached(mutex, annihilators, std::pair{sigma.mask(), k}, [&] {
      const std::size_t n = fan.rank();
      RationalMatrix rays(sigma.dim(), n);
      for (std::size_t r = 0; r < sigma.dim(); ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (fan.ray(sigma.rays()[r])[c] != 0) rays.set(r, c, fan.ray(sigma.rays()[r])[c]);
      const auto ann = kernel_basis(rays);

      auto space = std::make_shared<AnnihilatorSpace>();
      space->echelon = std::make_shared<Echelon>(exterior.dimension(k), true);
      if (k > ann.size()) return std::shared_ptr<const AnnihilatorSpace>(space);
      // Wedge each k-subset of the annihilator basis in the ambient algebra.
      ExteriorAlgebra choose(ann.size());
      for (ExteriorMask subset : choose.basis(k)) {
        std::map<ExteriorMask, Rational> acc{{0, 1}};
        for (std::size_t a = 0; a < ann.size(); ++a) {
          if (!((subset >> a) & 1U)) continue;
          std::map<ExteriorMask, Rational> next;
          for (const auto& [s, c] : acc) {
            for (const auto& [i, x] : ann[a].entries()) {
              const auto w = wedge(s, ExteriorMask{1} << i);
              if (w) next[w->second] += c * x * w->first;
            }
          }
          acc = std::move(next);
        }
        SparseVector v;
        for (const auto& [s, c] : acc)
          if (c != 0) v.add(exterior.index_of(s), c);
        space->echelon->insert(v);
        space->basis.push_back(std::move(v));
      }
      if (space->echelon->rank() != space->basis.size())
        throw InternalError("annihilator wedges are dependent");
      return std::shared_ptr<const AnnihilatorSpace>(space);
    });
  }
};

CoverSimplex::CoverSimplex(const Fan& fan, std::optional<std::vector<std::size_t>> cover,
                           std::size_t max_size)
    : state_(std::make_shared<State>(fan)) {
  auto& st = *state_;
  if (cover) {
    st.indices = std::move(*cover);
  } else {
    for (std::size_t i = 0; i < fan.max_cones().size(); ++i) st.indices.push_back(i);
  }
  if (st.indices.empty()) throw ValidationError("cover is empty");
  if (st.indices.size() > max_size)
    throw ValidationError("cover has " + std::to_string(st.indices.size()) +
                          " cones; the limit is " + std::to_string(max_size));
  if (st.indices.size() > 30) throw ValidationError("covers with more than 30 cones are unsupported");
  std::vector<bool> present(fan.max_cones().size(), false);
  for (std::size_t i : st.indices) {
    if (i >= fan.max_cones().size())
      throw ValidationError("cover index " + std::to_string(i + 1) + " is not a maximal cone");
    if (present[i]) throw ValidationError("cover lists maximal cone " + std::to_string(i + 1) + " twice");
    present[i] = true;
    st.cover.push_back(fan.max_cones()[i]);
  }
  for (std::size_t i = 0; i < present.size(); ++i)
    if (!present[i])
      throw ValidationError("cover misses maximal cone " + fan.max_cones()[i].to_string() +
                            "; it does not cover the fan");

  const std::size_t s = st.cover.size();
  st.simplices = enumerate_simplices(s);
  st.cones.resize(std::size_t{1} << s);
  for (const auto& level : st.simplices) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      st.positions.emplace(level[i], i);
      const auto verts = vertices_of(level[i]);
      st.cones[level[i]] = cone_of_simplex(st.cover, verts);
    }
  }
}

const Fan& CoverSimplex::fan() const { return state_->fan; }
std::size_t CoverSimplex::size() const { return state_->cover.size(); }
const std::vector<Cone>& CoverSimplex::cover() const { return state_->cover; }
const std::vector<std::size_t>& CoverSimplex::cover_indices() const { return state_->indices; }
const ExteriorAlgebra& CoverSimplex::exterior() const { return state_->exterior; }

const std::vector<SimplexMask>& CoverSimplex::simplices(std::size_t p) const {
  static const std::vector<SimplexMask> none;
  return p < state_->simplices.size() ? state_->simplices[p] : none;
}

std::size_t CoverSimplex::simplex_position(SimplexMask tau) const { return state_->positions.at(tau); }

const Cone& CoverSimplex::cone(SimplexMask tau) const {
  if (tau == 0 || tau >= state_->cones.size()) throw InternalError("not a simplex of the cover");
  return state_->cones[tau];
}

const FaceRing& CoverSimplex::local_ring(SimplexMask tau) const {
  const Cone& sigma = cone(tau);
  return cached(state_->mutex, state_->rings, sigma.mask(), [&] {
    return std::make_shared<const FaceRing>(FaceRing::local(state_->fan, sigma));
  });
}

const std::vector<SparseVector>& CoverSimplex::annihilator_basis(const Cone& sigma,
                                                                 std::size_t k) const {
  return state_->annihilator(sigma, k).basis;
}

std::size_t CoverSimplex::local_dimension(const CechSlot& slot, SimplexMask tau) const {
  switch (slot.tag) {
    case Presheaf::Functions:
      return slot.k == 0 ? local_ring(tau).dimension(slot.m) : 0;
    case Presheaf::Forms:
      return local_ring(tau).dimension(slot.m) * exterior().dimension(slot.k);
    case Presheaf::Annihilator:
      return slot.m == 0 && slot.k <= fan().rank() ? annihilator_basis(cone(tau), slot.k).size() : 0;
  }
  return 0;
}

namespace {

const SlotLayout& layout_of(const CoverSimplex& cs, std::mutex& mutex,
                            std::map<SlotKey, std::shared_ptr<const SlotLayout>>& layouts,
                            const CechSlot& slot) {
  return cached(mutex, layouts, key_of(slot), [&] {
    auto layout = std::make_shared<SlotLayout>();
    for (SimplexMask tau : cs.simplices(slot.p)) {
      layout->offsets.push_back(layout->total);
      layout->total += cs.local_dimension(slot, tau);
    }
    return std::shared_ptr<const SlotLayout>(layout);
  });
}

}  // namespace

std::size_t CoverSimplex::dimension(const CechSlot& slot) const {
  return layout_of(*this, state_->mutex, state_->layouts, slot).total;
}

std::size_t CoverSimplex::offset(const CechSlot& slot, SimplexMask tau) const {
  return layout_of(*this, state_->mutex, state_->layouts, slot).offsets.at(simplex_position(tau));
}

SparseVector CoverSimplex::restrict_component(const CechSlot& slot, SimplexMask tau,
                                              SimplexMask tau2, const SparseVector& component) const {
  const Cone& target = cone(tau2);
  SparseVector out;
  switch (slot.tag) {
    case Presheaf::Functions:
    case Presheaf::Forms: {
      const std::size_t forms = slot.tag == Presheaf::Forms ? exterior().dimension(slot.k) : 1;
      const auto& source_basis = local_ring(tau).basis(slot.m);
      const FaceRing& target_ring = local_ring(tau2);
      for (const auto& [i, c] : component.entries()) {
        const Monomial& mono = source_basis.at(i / forms);
        if ((mono.support() & ~target.mask()) != 0) continue;
        const auto j = target_ring.index_of(mono);
        if (!j) throw InternalError("restricted monomial missing from the target basis");
        out.add(*j * forms + i % forms, c);
      }
      return out;
    }
    case Presheaf::Annihilator: {
      const auto& source = annihilator_basis(cone(tau), slot.k);
      SparseVector ambient;
      for (const auto& [i, c] : component.entries()) ambient.axpy(c, source.at(i));
      auto coords = state_->annihilator(target, slot.k).echelon->express(ambient);
      if (!coords) throw InternalError("annihilator restriction is not an inclusion");
      return *coords;
    }
  }
  return out;
}

const RationalMatrix& CoverSimplex::delta(const CechSlot& slot) const {
  return cached(state_->mutex, state_->deltas, key_of(slot), [&] {
    const CechSlot next{slot.tag, slot.p + 1, slot.k, slot.m};
    auto d = std::make_shared<RationalMatrix>(dimension(next), dimension(slot));
    for (SimplexMask tau2 : simplices(slot.p + 1)) {
      const auto verts = vertices_of(tau2);
      const std::size_t row0 = offset(next, tau2);
      for (std::size_t kk = 0; kk < verts.size(); ++kk) {
        const SimplexMask tau = tau2 & ~(SimplexMask{1} << verts[kk]);
        const int sign = kk % 2 ? -1 : 1;
        const std::size_t col0 = offset(slot, tau);
        for (std::size_t i = 0; i < local_dimension(slot, tau); ++i)
          for (const SparseVector v = restrict_component(slot, tau, tau2, SparseVector::unit(i)); const auto& [r, c] : v.entries())
            d->add(row0 + r, col0 + i, c * sign);
      }
    }
    return std::shared_ptr<const RationalMatrix>(d);
  });
}

RationalMatrix cech_delta(const CoverSimplex& cs, Presheaf tag, std::size_t p, std::size_t k,
                          std::size_t m) {
  return cs.delta(CechSlot{tag, p, k, m});
}

CechCochain apply_delta(const CoverSimplex& cs, const CechCochain& c) {
  const CechSlot next{c.slot.tag, c.slot.p + 1, c.slot.k, c.slot.m};
  return CechCochain{next, cs.delta(c.slot).apply(c.values)};
}

SparseVector component(const CoverSimplex& cs, const CechCochain& c, SimplexMask tau) {
  const std::size_t begin = cs.offset(c.slot, tau);
  const std::size_t end = begin + cs.local_dimension(c.slot, tau);
  SparseVector out;
  for (const auto& [i, x] : c.values.entries())
    if (i >= begin && i < end) out.push_back(i - begin, x);
  return out;
}

CechCochain functions_cochain(const CoverSimplex& cs, std::size_t p, std::size_t m,
                              const std::vector<SRPolynomial>& components) {
  const CechSlot slot{Presheaf::Functions, p, 0, m};
  const auto& taus = cs.simplices(p);
  if (components.size() != taus.size())
    throw ValidationError("expected " + std::to_string(taus.size()) + " components");
  SparseVector values;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const std::size_t base = cs.offset(slot, taus[i]);
    for (const SparseVector v = cs.local_ring(taus[i]).to_vector(components[i], m); const auto& [j, c] : v.entries())
      values.push_back(base + j, c);
  }
  return CechCochain{slot, std::move(values)};
}

std::vector<SRPolynomial> functions_components(const CoverSimplex& cs, const CechCochain& c) {
  if (c.slot.tag != Presheaf::Functions) throw ValidationError("expected a Functions cochain");
  std::vector<SRPolynomial> out;
  for (SimplexMask tau : cs.simplices(c.slot.p))
    out.push_back(cs.local_ring(tau).from_vector(component(cs, c, tau), c.slot.m));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// r: R_m (x) Lambda^k -> C^0, monomial-major like the Forms components.
RationalMatrix global_restriction(const CoverSimplex& cs, const CechSlot& c0) {
  const FaceRing global = FaceRing::global(cs.fan());
  const std::size_t forms = c0.tag == Presheaf::Forms ? cs.exterior().dimension(c0.k) : 1;
  const auto& basis = global.basis(c0.m);
  RationalMatrix r(cs.dimension(c0), basis.size() * forms);
  for (SimplexMask tau : cs.simplices(0)) {
    const Cone& sigma = cs.cone(tau);
    const std::size_t base = cs.offset(c0, tau);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      if ((basis[a].support() & ~sigma.mask()) != 0) continue;
      const auto local = cs.local_ring(tau).index_of(basis[a]);
      for (std::size_t e = 0; e < forms; ++e) r.set(base + *local * forms + e, a * forms + e, 1);
    }
  }
  return r;
}

}  // namespace

ExactnessReport verify_exactness(const CoverSimplex& cs, std::size_t m_max, bool with_forms) {
  std::vector<CechSlot> slots;
  for (std::size_t m = 0; m <= m_max; ++m) {
    slots.push_back(CechSlot{Presheaf::Functions, 0, 0, m});
    if (with_forms)
      for (std::size_t k = 0; k <= cs.fan().rank(); ++k) slots.push_back(CechSlot{Presheaf::Forms, 0, k, m});
  }
  ExactnessReport report;
  report.entries.resize(slots.size());
  parallel_for(slots.size(), [&](std::size_t i) {
    const CechSlot c0 = slots[i];
    ExactnessEntry e{c0.tag, c0.k, c0.m, 0, 0, {}, {}, true};
    const RationalMatrix r = global_restriction(cs, c0);
    e.global_dimension = r.cols();
    e.restriction_rank = rank(r);
    for (std::size_t p = 0; p < cs.size(); ++p) {
      const CechSlot slot{c0.tag, p, c0.k, c0.m};
      e.dims.push_back(cs.dimension(slot));
      e.ranks.push_back(rank(cs.delta(slot)));
    }
    e.exact = e.restriction_rank == e.global_dimension &&
              e.restriction_rank + e.ranks[0] == e.dims[0] && (cs.delta(c0) * r).is_zero();
    for (std::size_t p = 1; p < cs.size(); ++p)
      if (e.ranks[p - 1] + e.ranks[p] != e.dims[p]) e.exact = false;
    report.entries[i] = std::move(e);
  });
  report.exact = true;
  for (const auto& e : report.entries) report.exact = report.exact && e.exact;
  return report;
}

// ---------------------------------------------------------------------------

SRPolynomial glue_sections(const CoverSimplex& cs, const std::vector<SRPolynomial>& sections) {
  const std::size_t s = cs.size();
  if (sections.size() != s) throw ValidationError("expected one section per cover cone");
  for (std::size_t i = 0; i < s; ++i) {
    if (restrict(sections[i], cs.cover()[i]) != sections[i])
      throw ValidationError("section " + std::to_string(i + 1) + " does not live on its cone");
    for (std::size_t j = i + 1; j < s; ++j) {
      const Cone& overlap = cs.cone((SimplexMask{1} << i) | (SimplexMask{1} << j));
      if (restrict(sections[i], overlap) != restrict(sections[j], overlap))
        throw ValidationError("sections " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                              " disagree on their overlap; the cochain is not closed");
    }
  }
  SRPolynomial g;
  for (std::size_t p = 0; p < s; ++p) {
    for (SimplexMask tau : cs.simplices(p)) {
      const auto first = static_cast<std::size_t>(std::countr_zero(tau));
      SRPolynomial term = restrict(sections[first], cs.cone(tau));
      if (p % 2) term *= -1;
      g += term;
    }
  }
  for (std::size_t i = 0; i < s; ++i)
    if (restrict(g, cs.cover()[i]) != sections[i])
      throw InternalError("glued function does not restrict to section " + std::to_string(i + 1));
  return g;
}

SRPolynomial glue_sections(const CoverSimplex& cs, const CechCochain& g) {
  if (g.slot.tag != Presheaf::Functions || g.slot.p != 0)
    throw ValidationError("glue_sections needs a Functions 0-cochain");
  if (!apply_delta(cs, g).values.empty()) throw ValidationError("cochain is not closed");
  return glue_sections(cs, functions_components(cs, g));
}

namespace {

/// Constant-coefficient coboundary C^{q}(simplex on v vertices) -> C^{q+1}.
RationalMatrix constant_coboundary(std::size_t v, std::size_t q) {
  const auto simplices = enumerate_simplices(v);
  const auto& from = simplices.at(q);
  const auto& to = simplices.at(q + 1);
  std::unordered_map<SimplexMask, std::size_t> position;
  for (std::size_t i = 0; i < from.size(); ++i) position.emplace(from[i], i);
  RationalMatrix b(to.size(), from.size());
  for (std::size_t row = 0; row < to.size(); ++row) {
    const auto verts = vertices_of(to[row]);
    for (std::size_t kk = 0; kk < verts.size(); ++kk)
      b.set(row, position.at(to[row] & ~(SimplexMask{1} << verts[kk])), kk % 2 ? -1 : 1);
  }
  return b;
}

const Lifter& constant_lifter(std::size_t v, std::size_t q) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const Lifter>> lifters;
  return cached(mutex, lifters, std::pair{v, q},
                [&] { return std::make_shared<const Lifter>(constant_coboundary(v, q)); });
}

SimplexMask to_global(SimplexMask local, const std::vector<std::size_t>& verts) {
  SimplexMask out = 0;
  for (std::size_t b = 0; b < verts.size(); ++b)
    if ((local >> b) & 1U) out |= SimplexMask{1} << verts[b];
  return out;
}

}  // namespace

CechCochain split_cocycle(const CoverSimplex& cs, const CechCochain& g) {
  const std::size_t p = g.slot.p;
  const std::size_t m = g.slot.m;
  const std::size_t s = cs.size();
  if (g.slot.tag != Presheaf::Functions) throw ValidationError("split_cocycle needs a Functions cochain");
  if (p == 0 || p >= s) throw ValidationError("split_cocycle needs 1 <= p < s");
  if (!apply_delta(cs, g).values.empty()) throw ValidationError("cochain is not closed");

  const auto& faces = cs.simplices(p);
  const auto& cofaces = cs.simplices(p - 1);
  std::vector<SRPolynomial> current = functions_components(cs, g);
  std::vector<SRPolynomial> h(cofaces.size());

  // Strata from the whole simplex down to dimension p + 1: on each omega,
  // split the part of the cocycle living on Y_omega by the constant lift.
  for (std::size_t level = s - 1; level >= p + 1; --level) {
    std::vector<SRPolynomial> step(cofaces.size());
    for (SimplexMask omega : cs.simplices(level)) {
      const Cone& sigma = cs.cone(omega);
      const auto verts = vertices_of(omega);
      const auto local = enumerate_simplices(verts.size());
      std::map<Monomial, SparseVector> shadows;
      for (std::size_t a = 0; a < local[p].size(); ++a) {
        const std::size_t pos = cs.simplex_position(to_global(local[p][a], verts));
        for (const auto& [mono, c] : current[pos].terms())
          if ((mono.support() & ~sigma.mask()) == 0) shadows[mono].push_back(a, c);
      }
      const Lifter& lifter = constant_lifter(verts.size(), p - 1);
      for (const auto& [mono, shadow] : shadows) {
        for (const SparseVector v = lifter.lift(shadow); const auto& [b, c] : v.entries())
          step[cs.simplex_position(to_global(local[p - 1][b], verts))].add(mono, c);
      }
    }
    const auto image = functions_components(
        cs, apply_delta(cs, functions_cochain(cs, p - 1, m, step)));
    for (std::size_t i = 0; i < faces.size(); ++i) current[i] -= image[i];
    for (std::size_t i = 0; i < cofaces.size(); ++i) h[i] += step[i];
  }

  // What is left on tau lives only on Y_tau; put it on tau minus its first vertex.
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (current[i].is_zero()) continue;
    const SimplexMask omega = faces[i] & (faces[i] - 1);
    h[cs.simplex_position(omega)] += current[i];
  }

  CechCochain out = functions_cochain(cs, p - 1, m, h);
  if (apply_delta(cs, out).values != g.values)
    throw InternalError("stratified splitting did not reproduce the cocycle");
  return out;
}

CechCochain split_cocycle_generic(const CoverSimplex& cs, const CechCochain& g) {
  if (g.slot.p == 0) throw ValidationError("split_cocycle needs p >= 1");
  const CechSlot below{g.slot.tag, g.slot.p - 1, g.slot.k, g.slot.m};
  return CechCochain{below, lift(cs.delta(below), g.values)};
}

// ---------------------------------------------------------------------------

namespace {

struct FormEntry {
  Monomial monomial;
  ExteriorMask form;
  Rational coefficient;
};

std::vector<FormEntry> decode_forms(const CoverSimplex& cs, SimplexMask tau, std::size_t k,
                                    std::size_t m, const SparseVector& v) {
  const std::size_t forms = cs.exterior().dimension(k);
  const auto& basis = cs.local_ring(tau).basis(m);
  std::vector<FormEntry> out;
  for (const auto& [i, c] : v.entries())
    out.push_back(FormEntry{basis.at(i / forms), cs.exterior().basis(k)[i % forms], c});
  return out;
}

SparseVector local_product(const CoverSimplex& cs, SimplexMask tau, const CechSlot& a,
                           const SparseVector& x, const CechSlot& b, const SparseVector& y) {
  const FaceRing& ring = cs.local_ring(tau);
  switch (a.tag) {
    case Presheaf::Functions: {
      const SRPolynomial product = ring.multiply(ring.from_vector(x, a.m), ring.from_vector(y, b.m));
      return ring.to_vector(product, a.m + b.m);
    }
    case Presheaf::Forms: {
      const std::size_t k = a.k + b.k;
      if (k > cs.fan().rank()) return {};
      const std::size_t forms = cs.exterior().dimension(k);
      SparseVector out;
      for (const auto& u : decode_forms(cs, tau, a.k, a.m, x)) {
        for (const auto& v : decode_forms(cs, tau, b.k, b.m, y)) {
          const auto w = wedge(u.form, v.form);
          if (!w) continue;
          const auto mono = ring.index_of(u.monomial * v.monomial);
          if (!mono) continue;
          out.add(*mono * forms + cs.exterior().index_of(w->second), u.coefficient * v.coefficient * w->first);
        }
      }
      return out;
    }
    case Presheaf::Annihilator: {
      const std::size_t k = a.k + b.k;
      if (k > cs.fan().rank()) return {};
      const Cone& sigma = cs.cone(tau);
      const auto& left = cs.annihilator_basis(sigma, a.k);
      const auto& right = cs.annihilator_basis(sigma, b.k);
      std::map<ExteriorMask, Rational> ambient;
      for (const auto& [i, ci] : x.entries())
        for (const auto& [ei, u] : left.at(i).entries())
          for (const auto& [j, cj] : y.entries())
            for (const auto& [ej, v] : right.at(j).entries()) {
              const auto w = wedge(cs.exterior().basis(a.k)[ei], cs.exterior().basis(b.k)[ej]);
              if (w) ambient[w->second] += ci * cj * u * v * w->first;
            }
      SparseVector flat;
      for (const auto& [mask, c] : ambient) flat.add(cs.exterior().index_of(mask), c);
      // Express in the W^k basis of sigma_tau; the ids of the echelon are basis positions.
      const auto& target = cs.annihilator_basis(sigma, k);
      Echelon e(cs.exterior().dimension(k), true);
      for (const auto& t : target) e.insert(t);
      auto coords = e.express(flat);
      if (!coords) throw InternalError("product of annihilator forms left W");
      return *coords;
    }
  }
  return {};
}

}  // namespace

CechCochain cup(const CoverSimplex& cs, const CechCochain& alpha, const CechCochain& beta) {
  if (alpha.slot.tag != beta.slot.tag) throw ValidationError("cup needs cochains of the same presheaf");
  const std::size_t p = alpha.slot.p;
  const std::size_t q = beta.slot.p;
  const CechSlot slot{alpha.slot.tag, p + q, alpha.slot.k + beta.slot.k, alpha.slot.m + beta.slot.m};
  CechCochain out{slot, {}};
  for (SimplexMask tau : cs.simplices(p + q)) {
    const auto verts = vertices_of(tau);
    SimplexMask front = 0, back = 0;
    for (std::size_t i = 0; i <= p; ++i) front |= SimplexMask{1} << verts[i];
    for (std::size_t i = p; i <= p + q; ++i) back |= SimplexMask{1} << verts[i];
    const auto x = cs.restrict_component(alpha.slot, front, tau, component(cs, alpha, front));
    const auto y = cs.restrict_component(beta.slot, back, tau, component(cs, beta, back));
    if (x.empty() || y.empty()) continue;
    const std::size_t base = cs.offset(slot, tau);
    for (const SparseVector v = local_product(cs, tau, alpha.slot, x, beta.slot, y); const auto& [i, c] : v.entries())
      out.values.push_back(base + i, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t TotalComplex::dimension(std::size_t t) const {
  const auto& b = blocks_.at(t);
  return b.empty() ? 0 : b.back().offset + b.back().size;
}

std::vector<std::size_t> TotalComplex::dims() const {
  std::vector<std::size_t> out;
  for (const auto& slot : slots_) out.push_back(slot.dim());
  return out;
}

std::optional<std::size_t> TotalComplex::block_offset(std::size_t t, const CechSlot& slot) const {
  for (const auto& b : blocks_.at(t))
    if (key_of(b.slot) == key_of(slot)) return b.offset;
  return std::nullopt;
}

namespace {

/// Vertical d_L on C^p(Forms, k, m) -> C^p(Forms, k-1, m+1), simplexwise.
RationalMatrix vertical_differential(const CoverSimplex& cs, const CechSlot& slot) {
  const CechSlot target{Presheaf::Forms, slot.p, slot.k - 1, slot.m + 1};
  RationalMatrix d(cs.dimension(target), cs.dimension(slot));
  const Fan& fan = cs.fan();
  const std::size_t n = fan.rank();
  const std::size_t forms_in = cs.exterior().dimension(slot.k);
  const std::size_t forms_out = cs.exterior().dimension(slot.k - 1);
  for (SimplexMask tau : cs.simplices(slot.p)) {
    const Cone& sigma = cs.cone(tau);
    const FaceRing& ring = cs.local_ring(tau);
    const auto& basis = ring.basis(slot.m);
    const std::size_t col0 = cs.offset(slot, tau);
    const std::size_t row0 = cs.offset(target, tau);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t e = 0; e < forms_in; ++e) {
        const ExteriorMask s = cs.exterior().basis(slot.k)[e];
        for (std::size_t i = 0; i < n; ++i) {
          const auto contracted = contract(s, i);
          if (!contracted) continue;
          for (std::size_t l : sigma.rays()) {
            const std::int64_t c = fan.ray(l)[i];
            if (c == 0) continue;
            const auto row = ring.index_of(basis[a] * Monomial::variable(fan.ray_count(), l));
            d.add(row0 + *row * forms_out + cs.exterior().index_of(contracted->second),
                  col0 + a * forms_in + e, Rational(c * contracted->first));
          }
        }
      }
    }
  }
  return d;
}

void place(RationalMatrix& target, std::size_t row0, std::size_t col0, const RationalMatrix& block,
           int sign) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (const auto& [c, x] : block.row(r).entries()) target.add(row0 + r, col0 + c, sign * x);
}

template <typename Blocks>
std::vector<std::vector<TotalComplex::Block>> lay_out(std::size_t t_max, Blocks&& slots_of) {
  std::vector<std::vector<TotalComplex::Block>> out(t_max + 2);
  for (std::size_t t = 0; t <= t_max + 1; ++t) {
    std::size_t offset = 0;
    for (const auto& [slot, size] : slots_of(t)) {
      out[t].push_back(TotalComplex::Block{slot, offset, size});
      offset += size;
    }
  }
  return out;
}

}  // namespace

TotalComplex l_total_complex(const CoverSimplex& cs, std::size_t t_max, bool alternative_sign) {
  const std::size_t n = cs.fan().rank();
  TotalComplex total;
  total.blocks_ = lay_out(t_max, [&](std::size_t t) {
    std::vector<std::pair<CechSlot, std::size_t>> slots;
    for (std::size_t p = 0; p < cs.size() && p <= t; ++p)
      for (std::size_t k = 0; k <= n && p + k <= t; ++k) {
        if ((t - p - k) % 2) continue;
        const CechSlot slot{Presheaf::Forms, p, k, (t - p - k) / 2};
        slots.emplace_back(slot, cs.dimension(slot));
      }
    return slots;
  });
  total.differentials_.resize(t_max + 1);
  parallel_for(t_max + 1, [&](std::size_t t) {
    RationalMatrix d(total.dimension(t + 1), total.dimension(t));
    for (const auto& b : total.blocks_[t]) {
      const auto& [tag, p, k, m] = b.slot;
      const int delta_sign = alternative_sign && k % 2 ? -1 : 1;
      const int vertical_sign = !alternative_sign && p % 2 ? -1 : 1;
      if (p + 1 < cs.size())
        place(d, *total.block_offset(t + 1, CechSlot{tag, p + 1, k, m}), b.offset, cs.delta(b.slot),
              delta_sign);
      if (k >= 1)
        place(d, *total.block_offset(t + 1, CechSlot{tag, p, k - 1, m + 1}), b.offset,
              vertical_differential(cs, b.slot), vertical_sign);
    }
    total.differentials_[t] = std::move(d);
  });
  total.slots_.resize(t_max + 1);
  parallel_for(t_max + 1, [&](std::size_t t) {
    const RationalMatrix d_in = t == 0 ? RationalMatrix(total.dimension(0), 0) : total.differentials_[t - 1];
    total.slots_[t] = cohomology_at(d_in, total.differentials_[t]);
  });
  return total;
}

TotalComplex w_total_complex(const CoverSimplex& cs, std::size_t t_max) {
  const std::size_t n = cs.fan().rank();
  TotalComplex total;
  total.blocks_ = lay_out(t_max, [&](std::size_t t) {
    std::vector<std::pair<CechSlot, std::size_t>> slots;
    for (std::size_t p = 0; p < cs.size() && p <= t; ++p) {
      if (t - p > n) continue;
      const CechSlot slot{Presheaf::Annihilator, p, t - p, 0};
      slots.emplace_back(slot, cs.dimension(slot));
    }
    return slots;
  });
  total.differentials_.resize(t_max + 1);
  for (std::size_t t = 0; t <= t_max; ++t) {
    RationalMatrix d(total.dimension(t + 1), total.dimension(t));
    for (const auto& b : total.blocks_[t]) {
      if (b.slot.p + 1 >= cs.size()) continue;
      const CechSlot next{b.slot.tag, b.slot.p + 1, b.slot.k, 0};
      place(d, *total.block_offset(t + 1, next), b.offset, cs.delta(b.slot), 1);
    }
    total.differentials_[t] = std::move(d);
  }
  for (std::size_t t = 0; t <= t_max; ++t) {
    const RationalMatrix d_in = t == 0 ? RationalMatrix(total.dimension(0), 0) : total.differentials_[t - 1];
    total.slots_.push_back(cohomology_at(d_in, total.differentials_[t]));
  }
  return total;
}

std::vector<std::size_t> w_total_cohomology(const CoverSimplex& cs, std::size_t t_max) {
  return w_total_complex(cs, t_max).dims();
}

SparseVector w_total_cup(const CoverSimplex& cs, const TotalComplex& w, std::size_t t1,
                         const SparseVector& x, std::size_t t2, const SparseVector& y) {
  if (t1 + t2 > w.t_max() + 1) throw ValidationError("product degree outside the W total complex");
  auto slice = [](const SparseVector& v, const TotalComplex::Block& b) {
    SparseVector out;
    for (const auto& [i, c] : v.entries())
      if (i >= b.offset && i < b.offset + b.size) out.push_back(i - b.offset, c);
    return out;
  };
  SparseVector out;
  for (const auto& bx : w.blocks(t1)) {
    for (const auto& by : w.blocks(t2)) {
      const auto product = cup(cs, CechCochain{bx.slot, slice(x, bx)}, CechCochain{by.slot, slice(y, by)});
      if (product.values.empty()) continue;
      const auto offset = w.block_offset(t1 + t2, product.slot);
      if (!offset) continue;
      const int sign = (bx.slot.k * by.slot.p) % 2 ? -1 : 1;
      for (const auto& [i, c] : product.values.entries()) out.add(*offset + i, sign * c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

RationalMatrix inclusion_k(const CoverSimplex& cs, const TotalComplex& w, const TotalComplex& l,
                           std::size_t t) {
  RationalMatrix k_map(l.dimension(t), w.dimension(t));
  for (const auto& b : w.blocks(t)) {
    const CechSlot target{Presheaf::Forms, b.slot.p, b.slot.k, 0};
    const std::size_t base = *l.block_offset(t, target);
    for (SimplexMask tau : cs.simplices(b.slot.p)) {
      const auto& basis = cs.annihilator_basis(cs.cone(tau), b.slot.k);
      const std::size_t from = b.offset + cs.offset(b.slot, tau);
      const std::size_t to = base + cs.offset(target, tau);
      // The constant monomial is the only degree-0 basis element.
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& [e, c] : basis[i].entries()) k_map.set(to + e, from + i, c);
    }
  }
  return k_map;
}

RationalMatrix augmentation_r(const CoverSimplex& cs, const TwistedComplex& tc, const TotalComplex& l,
                              std::size_t t) {
  RationalMatrix r(l.dimension(t), tc.dimension(t));
  for (const auto& block : tc.layout(t)) {
    const CechSlot target{Presheaf::Forms, 0, block.k, block.j};
    const std::size_t base = *l.block_offset(t, target);
    const auto& monomials = tc.ring().basis(block.j);
    for (SimplexMask tau : cs.simplices(0)) {
      const Cone& sigma = cs.cone(tau);
      const std::size_t to = base + cs.offset(target, tau);
      for (std::size_t a = 0; a < monomials.size(); ++a) {
        if ((monomials[a].support() & ~sigma.mask()) != 0) continue;
        const auto local = *cs.local_ring(tau).index_of(monomials[a]);
        for (std::size_t e = 0; e < block.forms; ++e)
          r.set(to + local * block.forms + e, block.offset + a * block.forms + e, 1);
      }
    }
  }
  return r;
}

std::size_t induced_rank(const RationalMatrix& map, const CohomologySlot& source,
                         const CohomologySlot& target) {
  RationalMatrix induced(target.dim(), source.dim());
  for (std::size_t i = 0; i < source.dim(); ++i)
    for (const SparseVector v = target.reduce(map.apply(source.representatives()[i])); const auto& [row, c] : v.entries())
      induced.set(row, i, c);
  return rank(induced);
}

}  // namespace

QuasiIsoReport verify_quasi_iso_k(const CoverSimplex& cs, std::size_t t_max) {
  QuasiIsoReport report;
  report.t_max = t_max;
  const TwistedComplex tc(cs.fan(), std::nullopt, t_max + 1);
  report.lg_dims = lg_cohomology(tc, t_max).dims;
  const TotalComplex l = l_total_complex(cs, t_max);
  const TotalComplex w = w_total_complex(cs, t_max);
  report.l_total_dims = l.dims();
  report.w_total_dims = w.dims();

  report.k_commutes = true;
  report.r_commutes = true;
  std::vector<RationalMatrix> k_maps, r_maps;
  for (std::size_t t = 0; t <= t_max + 1; ++t) {
    k_maps.push_back(inclusion_k(cs, w, l, t));
    r_maps.push_back(augmentation_r(cs, tc, l, t));
  }
  for (std::size_t t = 0; t <= t_max; ++t) {
    if (l.differential(t) * k_maps[t] != k_maps[t + 1] * w.differential(t)) report.k_commutes = false;
    if (l.differential(t) * r_maps[t] != r_maps[t + 1] * tc.differential(t)) report.r_commutes = false;
  }
  report.agree = report.k_commutes && report.r_commutes;
  for (std::size_t t = 0; t <= t_max; ++t) {
    if (report.k_commutes) report.k_induced_ranks.push_back(induced_rank(k_maps[t], w.cohomology(t), l.cohomology(t)));
    if (report.r_commutes)
      report.r_induced_ranks.push_back(induced_rank(r_maps[t], tc.cohomology(t), l.cohomology(t)));
    const std::size_t dim = report.lg_dims[t];
    if (report.l_total_dims[t] != dim || report.w_total_dims[t] != dim) report.agree = false;
    if (report.k_commutes && report.k_induced_ranks[t] != dim) report.agree = false;
    if (report.r_commutes && report.r_induced_ranks[t] != dim) report.agree = false;
  }
  return report;
}

}  // namespace toriclg
