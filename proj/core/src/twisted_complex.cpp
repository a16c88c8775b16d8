#include "toriclg/twisted_complex.hpp"

#include "toriclg/errors.hpp"
#include "toriclg/parallel.hpp"

#include "cache.hpp"

#include <bit>
#include <mutex>
#include <span>
#include <sstream>

namespace toriclg {

struct TwistedComplex::State {
  Fan fan;
  std::vector<LatticeVector> xi;
  std::vector<SRPolynomial> forms;
  FaceRing ring;
  ExteriorAlgebra exterior;

  std::mutex mutex;
  std::map<std::size_t, std::shared_ptr<const std::vector<GradedBlock>>> layouts;
  std::map<std::size_t, std::shared_ptr<const RationalMatrix>> differentials;
  std::map<std::size_t, std::shared_ptr<const CohomologySlot>> slots;

  State(Fan f, std::vector<LatticeVector> x)
      : fan(std::move(f)), xi(std::move(x)), ring(FaceRing::global(fan)), exterior(fan.rank()) {}
};

using detail::cached;

TwistedComplex::TwistedComplex(Fan fan, std::optional<std::vector<LatticeVector>> xi,
                               std::optional<std::size_t> verify_through) {
  const std::size_t n = fan.rank();
  std::vector<LatticeVector> basis;
  if (xi) {
    basis = std::move(*xi);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      LatticeVector row(n, 0);
      row[i] = 1;
      basis.push_back(std::move(row));
    }
  }
  if (basis.size() != n) throw ValidationError("xi basis must have n rows");
  std::vector<std::vector<Rational>> square;
  for (const auto& row : basis) {
    if (row.size() != n) throw ValidationError("xi basis must be an n x n matrix");
    square.emplace_back(row.begin(), row.end());
  }
  const Rational det = determinant(square);
  if (det != 1 && det != -1)
    throw ValidationError("xi basis is not unimodular (determinant " + to_string(det) + ")");

  state_ = std::make_shared<State>(std::move(fan), std::move(basis));
  const Fan& f = state_->fan;
  for (std::size_t i = 0; i < n; ++i) {
    SRPolynomial form;
    for (std::size_t j = 0; j < f.ray_count(); ++j) {
      std::int64_t value = 0;
      for (std::size_t c = 0; c < n; ++c) value += state_->xi[i][c] * f.ray(j)[c];
      form.add(Monomial::variable(f.ray_count(), j), Rational(value));
    }
    state_->forms.push_back(std::move(form));
  }

  const std::size_t limit = verify_through.value_or(2 * n + 2);
  for (std::size_t t = 0; t < limit; ++t)
    if (!(differential(t + 1) * differential(t)).is_zero())
      throw InternalError("d_L^2 != 0 in degree " + std::to_string(t));
}

const Fan& TwistedComplex::fan() const { return state_->fan; }
std::size_t TwistedComplex::rank() const { return state_->fan.rank(); }
const std::vector<LatticeVector>& TwistedComplex::xi() const { return state_->xi; }
const std::vector<SRPolynomial>& TwistedComplex::linear_forms() const { return state_->forms; }
const FaceRing& TwistedComplex::ring() const { return state_->ring; }
const ExteriorAlgebra& TwistedComplex::exterior() const { return state_->exterior; }

const std::vector<GradedBlock>& TwistedComplex::layout(std::size_t t) const {
  return cached(state_->mutex, state_->layouts, t, [&] {
    auto blocks = std::make_shared<std::vector<GradedBlock>>();
    std::size_t offset = 0;
    for (std::size_t k = 0; k <= rank() && k <= t; ++k) {
      if ((t - k) % 2 != 0) continue;
      const std::size_t j = (t - k) / 2;
      GradedBlock b{k, j, offset, state_->ring.dimension(j), state_->exterior.dimension(k)};
      offset += b.size();
      blocks->push_back(b);
    }
    return blocks;
  });
}

std::size_t TwistedComplex::dimension(std::size_t t) const {
  const auto& blocks = layout(t);
  return blocks.empty() ? 0 : blocks.back().offset + blocks.back().size();
}

std::optional<std::size_t> TwistedComplex::index_of(std::size_t t, const Monomial& m,
                                                    ExteriorMask form) const {
  const auto k = static_cast<std::size_t>(std::popcount(form));
  if (2 * m.polynomial_degree() + k != t) return std::nullopt;
  const auto mono = state_->ring.index_of(m);
  if (!mono) return std::nullopt;
  for (const auto& b : layout(t))
    if (b.k == k) return b.offset + *mono * b.forms + state_->exterior.index_of(form);
  return std::nullopt;
}

std::vector<FormTerm> TwistedComplex::terms(std::size_t t, const SparseVector& v) const {
  std::vector<FormTerm> out;
  const auto& blocks = layout(t);
  std::size_t b = 0;
  for (const auto& [index, c] : v.entries()) {
    while (b < blocks.size() && index >= blocks[b].offset + blocks[b].size()) ++b;
    if (b == blocks.size()) throw InternalError("vector index outside the degree layout");
    const auto local = index - blocks[b].offset;
    out.push_back(FormTerm{state_->ring.basis(blocks[b].j)[local / blocks[b].forms],
                           state_->exterior.basis(blocks[b].k)[local % blocks[b].forms], c});
  }
  return out;
}

SparseVector TwistedComplex::to_vector(std::size_t t, const std::vector<FormTerm>& terms) const {
  SparseVector v;
  for (const auto& term : terms) {
    const auto index = index_of(t, term.monomial, term.form);
    if (!index) {
      if (!state_->ring.allows(term.monomial.support())) continue;
      throw ValidationError("term " + term.monomial.to_string() + "*" +
                            exterior_to_string(term.form) + " has the wrong degree");
    }
    v.add(*index, term.coefficient);
  }
  return v;
}

const RationalMatrix& TwistedComplex::differential(std::size_t t) const {
  return cached(state_->mutex, state_->differentials, t, [&] {
    auto d = std::make_shared<RationalMatrix>(dimension(t + 1), dimension(t));
    const auto& ext = state_->exterior;
    const std::size_t vars = state_->fan.ray_count();
    for (const auto& block : layout(t)) {
      if (block.k == 0) continue;
      const auto& monomials = state_->ring.basis(block.j);
      for (std::size_t a = 0; a < monomials.size(); ++a) {
        for (std::size_t e = 0; e < block.forms; ++e) {
          const ExteriorMask s = ext.basis(block.k)[e];
          const std::size_t column = block.offset + a * block.forms + e;
          for (std::size_t i = 0; i < rank(); ++i) {
            const auto contracted = contract(s, i);
            if (!contracted) continue;
            for (std::size_t l = 0; l < vars; ++l) {
              const Rational c = state_->forms[i].coefficient(Monomial::variable(vars, l));
              if (c == 0) continue;
              const Monomial product = monomials[a] * Monomial::variable(vars, l);
              const auto row = index_of(t + 1, product, contracted->second);
              if (!row) continue;
              d->add(*row, column, c * contracted->first);
            }
          }
        }
      }
    }
    return d;
  });
}

const CohomologySlot& TwistedComplex::cohomology(std::size_t t) const {
  return cached(state_->mutex, state_->slots, t, [&] {
    const RationalMatrix d_in = t == 0 ? RationalMatrix(dimension(0), 0) : differential(t - 1);
    return std::make_shared<const CohomologySlot>(cohomology_at(d_in, differential(t)));
  });
}

SparseVector TwistedComplex::multiply(std::size_t t1, const SparseVector& x, std::size_t t2,
                                      const SparseVector& y) const {
  std::vector<FormTerm> product;
  const auto left = terms(t1, x);
  const auto right = terms(t2, y);
  for (const auto& a : left) {
    for (const auto& b : right) {
      if (!state_->ring.allows(a.monomial.support() | b.monomial.support())) continue;
      const auto w = wedge(a.form, b.form);
      if (!w) continue;
      product.push_back(FormTerm{a.monomial * b.monomial, w->second,
                                 a.coefficient * b.coefficient * w->first});
    }
  }
  return to_vector(t1 + t2, product);
}

// ---------------------------------------------------------------------------

LGCohomology lg_cohomology(const TwistedComplex& tc, std::optional<std::size_t> t_max) {
  LGCohomology out;
  out.t_max = t_max.value_or(2 * tc.rank() + 2);
  parallel_for(out.t_max + 1, [&](std::size_t t) { tc.cohomology(t); });
  for (std::size_t t = 0; t <= out.t_max; ++t) {
    out.slots.push_back(tc.cohomology(t));
    out.dims.push_back(out.slots.back().dim());
  }
  return out;
}

const SparseVector& CohomologyRing::product(std::size_t t1, std::size_t a, std::size_t t2,
                                            std::size_t b) const {
  auto it = products_.find({t1, a, t2, b});
  if (it == products_.end())
    throw ValidationError("product of degrees " + std::to_string(t1) + " and " +
                          std::to_string(t2) + " is outside the computed range");
  return it->second;
}

SparseVector CohomologyRing::multiply(std::size_t t1, const SparseVector& x, std::size_t t2,
                                      const SparseVector& y) const {
  SparseVector out;
  for (const auto& [a, ca] : x.entries())
    for (const auto& [b, cb] : y.entries()) out.axpy(ca * cb, product(t1, a, t2, b));
  return out;
}

std::optional<std::string> CohomologyRing::check_axioms() const {
  auto describe = [](const char* what, std::size_t t1, std::size_t a, std::size_t t2,
                     std::size_t b) {
    std::ostringstream out;
    out << what << " fails for e" << a << " in H^" << t1 << " and e" << b << " in H^" << t2;
    return out.str();
  };
  if (dims_.empty() || dims_[0] == 0) return "H^0 is zero";
  const SparseVector unit = SparseVector::unit(0);
  for (std::size_t t = 0; t <= t_max_; ++t) {
    for (std::size_t a = 0; a < dims_[t]; ++a) {
      const SparseVector x = SparseVector::unit(a);
      if (dims_[0] == 1 && (multiply(0, unit, t, x) != x || multiply(t, x, 0, unit) != x))
        return describe("unit law", 0, 0, t, a);
    }
  }
  for (std::size_t t1 = 0; t1 <= t_max_; ++t1) {
    for (std::size_t t2 = 0; t2 <= t_max_; ++t2) {
      for (std::size_t a = 0; a < dims_[t1]; ++a) {
        for (std::size_t b = 0; b < dims_[t2]; ++b) {
          SparseVector swapped = product(t2, b, t1, a);
          if ((t1 * t2) % 2 != 0) swapped = -swapped;
          if (product(t1, a, t2, b) != swapped) return describe("graded commutativity", t1, a, t2, b);
          for (std::size_t t3 = 0; t1 + t2 + t3 <= t_max_; ++t3) {
            for (std::size_t c = 0; c < dims_[t3]; ++c) {
              const SparseVector z = SparseVector::unit(c);
              const auto left = multiply(t1 + t2, product(t1, a, t2, b), t3, z);
              const auto right = multiply(t1, SparseVector::unit(a), t2 + t3, product(t2, b, t3, c));
              if (left != right) return describe("associativity", t1, a, t2, b);
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

CohomologyRing ring_structure(const TwistedComplex& tc, std::optional<std::size_t> t_max) {
  CohomologyRing ring;
  ring.t_max_ = t_max.value_or(2 * tc.rank() + 2);
  const auto all = lg_cohomology(tc, 2 * ring.t_max_);
  ring.dims_ = all.dims;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> keys;
  for (std::size_t t1 = 0; t1 <= ring.t_max_; ++t1)
    for (std::size_t t2 = 0; t2 <= ring.t_max_; ++t2)
      for (std::size_t a = 0; a < all.dims[t1]; ++a)
        for (std::size_t b = 0; b < all.dims[t2]; ++b) keys.emplace_back(t1, a, t2, b);
  std::vector<SparseVector> values(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) {
    const auto [t1, a, t2, b] = keys[i];
    const auto x = tc.multiply(t1, all.slots[t1].representatives()[a], t2,
                               all.slots[t2].representatives()[b]);
    values[i] = all.slots[t1 + t2].reduce(x);
  });
  for (std::size_t i = 0; i < keys.size(); ++i) ring.products_.emplace(keys[i], std::move(values[i]));
  return ring;
}

// ---------------------------------------------------------------------------

SparseVector QuotientRing::normal_form(std::size_t j, const SparseVector& v) const {
  const Degree& degree = degrees_.at(j);
  SparseVector rest = v;
  for (const auto& [pivot, row] : degree.ideal_rows) {
    const Rational c = rest.get(pivot);
    if (c != 0) rest.axpy(-c, row);
  }
  SparseVector out;
  for (const auto& [column, c] : rest.entries()) {
    const auto index = degree.quotient_index.at(column);
    if (!index) throw InternalError("normal form left a pivot column");
    out.add(*index, c);
  }
  return out;
}

SparseVector QuotientRing::product(std::size_t ja, std::size_t a, std::size_t jb,
                                   std::size_t b) const {
  if (ja + jb > max_degree()) throw ValidationError("quotient product outside the computed range");
  const SRPolynomial p = ring_.multiply(SRPolynomial(basis_[ja].at(a)), SRPolynomial(basis_[jb].at(b)));
  return normal_form(ja + jb, ring_.to_vector(p, ja + jb));
}

struct QuotientBuilder {
  static QuotientRing build(const TwistedComplex& tc, std::size_t j_max) {
    QuotientRing q;
    q.ring_ = tc.ring();
    const FaceRing& ring = tc.ring();
    for (std::size_t j = 0; j <= j_max; ++j) {
      Echelon ideal(ring.dimension(j), false);
      if (j > 0) {
        for (const SRPolynomial& f : tc.linear_forms())
          for (const Monomial& g : ring.basis(j - 1))
            ideal.insert(ring.to_vector(ring.multiply(f, SRPolynomial(g)), j));
      }
      QuotientRing::Degree degree;
      degree.ideal_rows = ideal.reduced_rows();
      degree.quotient_index.assign(ring.dimension(j), std::nullopt);
      std::vector<bool> pivot(ring.dimension(j), false);
      for (const auto& [p, row] : degree.ideal_rows) pivot[p] = true;
      std::vector<Monomial> basis;
      for (std::size_t c = 0; c < ring.dimension(j); ++c) {
        if (pivot[c]) continue;
        degree.quotient_index[c] = basis.size();
        basis.push_back(ring.basis(j)[c]);
      }
      q.dims_.push_back(basis.size());
      q.basis_.push_back(std::move(basis));
      q.degrees_.push_back(std::move(degree));
    }
    return q;
  }
};

LsopResult lsop_check(const TwistedComplex& tc, std::size_t m_max) {
  const std::size_t n = tc.rank();
  if (m_max < 2 * n) throw ValidationError("lsop_check needs m_max >= 2n");
  const std::size_t j_max = m_max / 2;
  LsopResult result;
  result.quotient = QuotientBuilder::build(tc, j_max);
  result.quotient_dims = result.quotient.dims();

  for (std::size_t j = 0; j <= j_max; ++j) {
    long long expected = 0;
    for (std::size_t i = 0; i <= std::min(n, j); ++i) {
      const auto term = static_cast<long long>(binomial(n, i) * tc.ring().dimension(j - i));
      expected += i % 2 ? -term : term;
    }
    result.expected_dims.push_back(expected);
  }
  result.regular = true;
  for (std::size_t j = 0; j <= j_max; ++j) {
    if (static_cast<long long>(result.quotient_dims[j]) != result.expected_dims[j]) result.regular = false;
    if (j > n && result.quotient_dims[j] != 0) result.regular = false;
  }
  return result;
}

std::optional<std::string> compare_quotient_with_ring(const TwistedComplex& tc,
                                                      const QuotientRing& quotient,
                                                      const CohomologyRing& ring) {
  const std::size_t j_max = std::min(quotient.max_degree(), ring.t_max() / 2);
  // images[j][a] = class of q_a (x) 1 in H^{2j}.
  std::vector<std::vector<SparseVector>> images(j_max + 1);
  for (std::size_t j = 0; j <= j_max; ++j) {
    const auto& slot = tc.cohomology(2 * j);
    if (slot.dim() != quotient.dims()[j])
      return "dimension mismatch in degree " + std::to_string(2 * j) + ": quotient " +
             std::to_string(quotient.dims()[j]) + ", cohomology " + std::to_string(slot.dim());
    if (2 * j + 1 <= ring.t_max() && ring.dims()[2 * j + 1] != 0)
      return "odd cohomology in degree " + std::to_string(2 * j + 1);
    RationalMatrix map(slot.dim(), quotient.dims()[j]);
    for (std::size_t a = 0; a < quotient.dims()[j]; ++a) {
      const auto v = tc.to_vector(2 * j, {FormTerm{quotient.basis(j)[a], 0, 1}});
      images[j].push_back(slot.reduce(v));
      for (const auto& [row, c] : images[j].back().entries()) map.set(row, a, c);
    }
    if (rank(map) != slot.dim())
      return "q -> [q (x) 1] is not bijective in degree " + std::to_string(2 * j);
  }
  for (std::size_t ja = 0; ja <= j_max; ++ja) {
    for (std::size_t jb = 0; ja + jb <= j_max; ++jb) {
      for (std::size_t a = 0; a < quotient.dims()[ja]; ++a) {
        for (std::size_t b = 0; b < quotient.dims()[jb]; ++b) {
          SparseVector expected;
          for (const SparseVector v = quotient.product(ja, a, jb, b); const auto& [c, value] : v.entries())
            expected.axpy(value, images[ja + jb][c]);
          if (ring.multiply(2 * ja, images[ja][a], 2 * jb, images[jb][b]) != expected)
            return "structure constants differ for " + quotient.basis(ja)[a].to_string() + " * " +
                   quotient.basis(jb)[b].to_string();
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

/// d/dtheta_i applied to the ordered word theta_{w_0} ^ theta_{w_1} ^ ...
/// through the graded Leibniz rule; returns (sign, remaining word) pairs.
std::vector<std::pair<int, std::vector<std::size_t>>> derive_word(std::size_t i,
                                                                  std::span<const std::size_t> word) {
  if (word.empty()) return {};
  std::vector<std::pair<int, std::vector<std::size_t>>> out;
  const auto rest = word.subspan(1);
  if (word.front() == i) out.emplace_back(1, std::vector<std::size_t>(rest.begin(), rest.end()));
  for (auto& [sign, tail] : derive_word(i, rest)) {
    tail.insert(tail.begin(), word.front());
    out.emplace_back(-sign, std::move(tail));
  }
  return out;
}

RationalMatrix theta_differential(const TwistedComplex& tc, const std::vector<SRPolynomial>& coefficients,
                                  std::size_t t) {
  RationalMatrix d(tc.dimension(t + 1), tc.dimension(t));
  const FaceRing& ring = tc.ring();
  for (std::size_t column = 0; column < tc.dimension(t); ++column) {
    for (const FormTerm& term : tc.terms(t, SparseVector::unit(column))) {
      std::vector<std::size_t> word;
      for (std::size_t i = 0; i < tc.rank(); ++i)
        if ((term.form >> i) & 1U) word.push_back(i);
      for (std::size_t i = 0; i < tc.rank(); ++i) {
        const SRPolynomial g = ring.multiply(coefficients[i], SRPolynomial(term.monomial));
        for (const auto& [sign, rest] : derive_word(i, word)) {
          ExteriorMask form = 0;
          for (std::size_t w : rest) form |= ExteriorMask{1} << w;
          for (const auto& [m, c] : g.terms()) {
            const auto row = tc.index_of(t + 1, m, form);
            if (!row) throw InternalError("theta differential left the layout");
            d.add(*row, column, c * sign);
          }
        }
      }
    }
  }
  return d;
}

std::string theta_display(std::size_t i, const Cone& sigma_m, const std::vector<std::size_t>& extra,
                          const std::vector<Integer>& a) {
  std::ostringstream out;
  out << "theta" << sigma_m.rays()[i] + 1;
  for (std::size_t e = 0; e < extra.size(); ++e) {
    if (a[e] == 0) continue;
    const Integer magnitude = a[e] < 0 ? Integer(-a[e]) : a[e];
    out << (a[e] < 0 ? " - " : " + ");
    if (magnitude != 1) out << magnitude << '*';
    out << "theta" << extra[e] + 1;
  }
  return out.str();
}

}  // namespace

ThetaPresentation theta_identification(const Fan& fan, const Cone& sigma_m,
                                       std::optional<std::size_t> t_max) {
  const std::size_t n = fan.rank();
  if (sigma_m.dim() != n || !fan.is_cone(sigma_m.mask()))
    throw ValidationError("sigma_M " + sigma_m.to_string() + " is not an n-dimensional cone");
  ThetaPresentation p;
  p.sigma_m = sigma_m;
  const std::size_t d = fan.ray_count();
  for (std::size_t l = 0; l < d; ++l)
    if (!sigma_m.contains(l)) p.extra_rays.push_back(l);
  p.a.assign(n, std::vector<Integer>(p.extra_rays.size()));
  for (std::size_t e = 0; e < p.extra_rays.size(); ++e) {
    const auto coords = coordinates_in_cone(fan, sigma_m, fan.ray(p.extra_rays[e]));
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_integral(coords[i])) throw InternalError("non-integral coordinates in a smooth cone");
      p.a[i][e] = numerator(coords[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    SRPolynomial c(Monomial::variable(d, sigma_m.rays()[i]));
    for (std::size_t e = 0; e < p.extra_rays.size(); ++e)
      c.add(Monomial::variable(d, p.extra_rays[e]), Rational(p.a[i][e]));
    p.coefficients.push_back(std::move(c));
    p.theta_tilde.push_back(theta_display(i, sigma_m, p.extra_rays, p.a[i]));
  }
  p.xi = dual_basis(fan, sigma_m);

  p.verified_through = t_max.value_or(2 * n + 2);
  const TwistedComplex tc(fan, p.xi, 0);
  p.matches = true;
  for (std::size_t t = 0; t <= p.verified_through; ++t) {
    if (theta_differential(tc, p.coefficients, t) != tc.differential(t)) {
      p.matches = false;
      p.mismatch_degree = t;
      break;
    }
  }
  return p;
}

}  // namespace toriclg
