#include "properties.hpp"

#include "toriclg/linalg.hpp"
#include "toriclg/twisted_complex.hpp"

#include <string>

namespace toriclg::testing {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PropertyFailure(what);
}

CechCochain random_cochain(Rng& rng, const CoverSimplex& cs, const CechSlot& slot) {
  return CechCochain{slot, random_vector(rng, cs.dimension(slot))};
}

CechCochain sum(const CechCochain& a, const CechCochain& b, const Rational& sign) {
  CechCochain out = a;
  out.values.axpy(sign, b.values);
  return out;
}

}  // namespace

std::size_t check_dl_squared(Rng& rng, std::size_t cases) {
  std::size_t done = 0;
  for (const auto& name : suite_names()) {
    const TwistedComplex tc(load_fan(name));
    const std::size_t top = 2 * tc.rank() + 1;
    for (std::size_t c = 0; c < cases; ++c, ++done) {
      const std::size_t t = pick(rng, 0, top);
      const SparseVector x = random_vector(rng, tc.dimension(t));
      require(tc.differential(t + 1).apply(tc.differential(t).apply(x)).empty(),
              name + ": d_L^2 x != 0 in degree " + std::to_string(t));
    }
  }
  return done;
}

std::size_t check_delta_squared(Rng& rng, std::size_t cases) {
  std::size_t done = 0;
  for (const auto& name : suite_names()) {
    const Fan fan = load_fan(name);
    const CoverSimplex cs(fan);
    if (cs.size() < 3) continue;
    for (std::size_t c = 0; c < cases; ++c, ++done) {
      const auto tag = static_cast<Presheaf>(pick(rng, 0, 2));
      const std::size_t k = tag == Presheaf::Functions ? 0 : pick(rng, 0, fan.rank());
      const std::size_t m = tag == Presheaf::Annihilator ? 0 : pick(rng, 0, 4);
      const CechSlot slot{tag, pick(rng, 0, cs.size() - 3), k, m};
      const CechCochain x = random_cochain(rng, cs, slot);
      require(apply_delta(cs, apply_delta(cs, x)).values.empty(),
              name + ": delta^2 != 0 for " + to_string(tag) + " p=" + std::to_string(slot.p));
    }
  }
  return done;
}

std::size_t check_total_squared(Rng& rng, std::size_t cases) {
  std::size_t done = 0;
  for (const auto& name : suite_names()) {
    const Fan fan = load_fan(name);
    const CoverSimplex cs(fan);
    const std::size_t t_max = 2 * fan.rank() + 2;
    const TotalComplex complexes[] = {l_total_complex(cs, t_max), l_total_complex(cs, t_max, true),
                                      w_total_complex(cs, t_max)};
    const char* labels[] = {"D", "D'", "D_W"};
    for (std::size_t c = 0; c < cases; ++c, ++done) {
      const std::size_t which = c % 3;
      const TotalComplex& tot = complexes[which];
      const std::size_t t = pick(rng, 0, t_max - 2);
      const SparseVector x = random_vector(rng, tot.dimension(t));
      require(tot.differential(t + 1).apply(tot.differential(t).apply(x)).empty(),
              name + ": " + labels[which] + "^2 != 0 in degree " + std::to_string(t));
    }
  }
  return done;
}

std::size_t check_leibniz_dl(Rng& rng, std::size_t cases) {
  std::size_t done = 0;
  for (const auto& name : suite_names()) {
    const TwistedComplex tc(load_fan(name));
    const std::size_t top = tc.rank() + 2;
    for (std::size_t c = 0; c < cases; ++c, ++done) {
      const std::size_t t1 = pick(rng, 0, top), t2 = pick(rng, 0, top);
      const SparseVector x = random_vector(rng, tc.dimension(t1));
      const SparseVector y = random_vector(rng, tc.dimension(t2));
      const SparseVector lhs = tc.differential(t1 + t2).apply(tc.multiply(t1, x, t2, y));
      SparseVector rhs = tc.multiply(t1 + 1, tc.differential(t1).apply(x), t2, y);
      rhs.axpy(t1 % 2 == 0 ? 1 : -1, tc.multiply(t1, x, t2 + 1, tc.differential(t2).apply(y)));
      require(lhs == rhs, name + ": Leibniz rule fails for d_L in degrees " + std::to_string(t1) + "," +
                              std::to_string(t2));
    }
  }
  return done;
}

std::size_t check_leibniz_cup(Rng& rng, std::size_t cases) {
  std::size_t done = 0;
  for (const auto& name : suite_names()) {
    const Fan fan = load_fan(name);
    const CoverSimplex cs(fan);
    if (cs.size() < 2) continue;
    for (std::size_t c = 0; c < cases; ++c, ++done) {
      const bool forms = c % 2 == 1;
      const Presheaf tag = forms ? Presheaf::Forms : Presheaf::Functions;
      const std::size_t budget = cs.size() - 2;  // p + q + 1 <= s - 1
      const std::size_t p = pick(rng, 0, budget);
      const std::size_t q = pick(rng, 0, budget - p);
      const std::size_t k1 = forms ? pick(rng, 0, fan.rank()) : 0;
      const std::size_t k2 = forms ? pick(rng, 0, fan.rank() - k1) : 0;
      const CechCochain a = random_cochain(rng, cs, {tag, p, k1, pick(rng, 0, 2)});
      const CechCochain b = random_cochain(rng, cs, {tag, q, k2, pick(rng, 0, 2)});
      const CechCochain lhs = apply_delta(cs, cup(cs, a, b));
      const CechCochain rhs =
          sum(cup(cs, apply_delta(cs, a), b), cup(cs, a, apply_delta(cs, b)), p % 2 == 0 ? 1 : -1);
      require(lhs.values == rhs.values,
              name + ": Leibniz rule fails for cup with p=" + std::to_string(p) + " q=" + std::to_string(q));
    }
  }
  return done;
}

std::size_t check_xi_invariance(Rng& rng, std::size_t cases) {
  std::size_t done = 0;
  for (const auto& name : suite_names()) {
    const Fan fan = load_fan(name);
    const auto reference = lg_cohomology(TwistedComplex(fan)).dims;
    for (std::size_t c = 0; c < cases; ++c, ++done) {
      const TwistedComplex tc(fan, random_unimodular(rng, fan.rank()));
      require(lg_cohomology(tc).dims == reference, name + ": cohomology depends on the xi basis");
    }
  }
  return done;
}

std::size_t check_restriction_functoriality(Rng& rng, std::size_t cases) {
  std::size_t done = 0;
  for (const auto& name : suite_names()) {
    const Fan fan = load_fan(name);
    const FaceRing ring = FaceRing::global(fan);
    const auto& cones = fan.all_cones();
    for (std::size_t c = 0; c < cases; ++c, ++done) {
      const Cone& sigma = cones[pick(rng, 0, cones.size() - 1)];
      std::vector<std::size_t> sub;
      for (std::size_t r : sigma.rays())
        if (std::bernoulli_distribution(0.5)(rng)) sub.push_back(r);
      const Cone face(sub);
      const SRPolynomial p = random_polynomial(rng, ring, pick(rng, 0, 3));
      const SRPolynomial q = random_polynomial(rng, ring, pick(rng, 0, 3));
      require(restrict(restrict(p, sigma), face) == restrict(p, face),
              name + ": restriction along " + sigma.to_string() + " > " + face.to_string() + " is not functorial");
      const FaceRing local = FaceRing::local(fan, sigma);
      require(restrict(ring.multiply(p, q), sigma) == local.multiply(restrict(p, sigma), restrict(q, sigma)),
              name + ": restriction to " + sigma.to_string() + " is not multiplicative");
    }
  }
  return done;
}

CechCochain random_closed_cochain(Rng& rng, const CoverSimplex& cs, std::size_t p, std::size_t m) {
  const CechSlot slot{Presheaf::Functions, p, 0, m};
  const std::vector<SparseVector> kernel =
      p + 1 < cs.size() ? kernel_basis(cs.delta(slot)) : kernel_basis(RationalMatrix(0, cs.dimension(slot)));
  SparseVector values;
  // redraw the all-zero combination unless the space itself is zero
  while (values.empty() && !kernel.empty())
    for (const SparseVector& v : kernel) values.axpy(random_rational(rng), v);
  return CechCochain{slot, values};
}

std::size_t check_glue(Rng& rng, std::size_t cases, std::size_t* nontrivial) {
  std::size_t done = 0;
  for (const auto& name : suite_names()) {
    const CoverSimplex cs(load_fan(name));
    for (std::size_t c = 0; c < cases; ++c, ++done) {
      const std::size_t m = pick(rng, 0, 6);
      const CechCochain g = random_closed_cochain(rng, cs, 0, m);
      if (nontrivial && !g.values.empty()) ++*nontrivial;
      const SRPolynomial glued = glue_sections(cs, g);
      const auto sections = functions_components(cs, g);
      for (std::size_t i = 0; i < cs.size(); ++i)
        require(restrict(glued, cs.cover()[i]) == sections[i],
                name + ": glued section does not restrict to g_" + std::to_string(i + 1) + " in degree " +
                    std::to_string(m));
    }
  }
  return done;
}

std::size_t check_split(Rng& rng, std::size_t cases, std::size_t p_max, std::size_t m_max,
                        std::size_t* nontrivial) {
  std::size_t done = 0;
  for (const auto& name : suite_names()) {
    const CoverSimplex cs(load_fan(name));
    for (std::size_t p = 1; p <= p_max && p < cs.size(); ++p)
      for (std::size_t m = 0; m <= m_max; ++m)
        for (std::size_t c = 0; c < cases; ++c, ++done) {
          const CechCochain g = random_closed_cochain(rng, cs, p, m);
          if (nontrivial && !g.values.empty()) ++*nontrivial;
          const CechCochain h = split_cocycle(cs, g);
          require(h.slot.p + 1 == p && apply_delta(cs, h).values == g.values,
                  name + ": delta(split(g)) != g for p=" + std::to_string(p) + " m=" + std::to_string(m));
        }
  }
  return done;
}

}  // namespace toriclg::testing
