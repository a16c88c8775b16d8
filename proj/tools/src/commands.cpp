#include "toriclg_cli/commands.hpp"

#include "toriclg/cech.hpp"
#include "toriclg/errors.hpp"
#include "toriclg/fan.hpp"
#include "toriclg/twisted_complex.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace toriclg::cli {

using nlohmann::json;

namespace {

json fan_metadata(const Fan& fan) {
  json cones = json::array();
  for (const Cone& c : fan.max_cones()) {
    json ids = json::array();
    for (std::size_t r : c.rays()) ids.push_back(r + 1);
    cones.push_back(ids);
  }
  return json{{"rank", fan.rank()}, {"ray_count", fan.ray_count()}, {"rays", fan.rays()}, {"max_cones", cones}};
}

json one_based(const std::vector<std::size_t>& ids) {
  json out = json::array();
  for (std::size_t i : ids) out.push_back(i + 1);
  return out;
}

json sparse_json(const SparseVector& v) {
  json out = json::array();
  for (const auto& [i, c] : v.entries()) out.push_back(json::array({i, to_string(c)}));
  return out;
}

std::string linear_combination(const std::vector<std::pair<std::string, Rational>>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [label, c] : terms) {
    const Rational magnitude = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (label == "1") {
      out << to_string(magnitude);
    } else {
      if (magnitude != 1) out << to_string(magnitude) << '*';
      out << label;
    }
  }
  return out.str();
}

std::string element_string(const std::vector<FormTerm>& terms) {
  std::vector<std::pair<std::string, Rational>> labelled;
  for (const auto& t : terms) {
    std::string label = t.monomial.to_string();
    if (t.form != 0) label = label == "1" ? exterior_to_string(t.form) : label + "*" + exterior_to_string(t.form);
    labelled.emplace_back(label, t.coefficient);
  }
  return linear_combination(labelled);
}

std::string class_label(std::size_t t, std::size_t a) {
  return "h" + std::to_string(t) + "_" + std::to_string(a);
}

std::size_t default_t_max(const Fan& fan) { return 2 * fan.rank() + 2; }
std::size_t default_m_max(const Fan& fan) { return fan.rank() + 2; }

std::optional<std::vector<std::size_t>> zero_based(const std::optional<std::vector<std::size_t>>& ids,
                                                    const char* what) {
  if (!ids) return std::nullopt;
  std::vector<std::size_t> out;
  for (std::size_t i : *ids) {
    if (i == 0) throw ValidationError(std::string(what) + " indices are 1-based");
    out.push_back(i - 1);
  }
  return out;
}

using Body = std::function<void(const Fan&, Report&)>;

Report guarded(const std::string& command, const std::string& fan_text, const Options& options,
               const Body& body) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.command = command;
  try {
    const Fan fan = parse_fan(fan_text);
    report.fan = fan_metadata(fan);
    if (options.t_max) report.parameters["t_max"] = *options.t_max;
    if (options.m_max) report.parameters["m_max"] = *options.m_max;
    body(fan, report);
  } catch (const ParseError& e) {
    report.payload = json{{"error", std::string("parse error: ") + e.what()}};
    report.verdict = "invalid input";
    report.exit_code = kValidation;
  } catch (const ValidationError& e) {
    report.payload = json{{"error", std::string("validation error: ") + e.what()}};
    report.verdict = "invalid input";
    report.exit_code = kValidation;
  } catch (const std::exception& e) {
    report.payload = json{{"error", std::string("internal error: ") + e.what()}};
    report.verdict = "internal error";
    report.exit_code = kInternal;
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json certificate_json(const Fan& fan, const PLCertificate& cert) {
  json phi = json::array();
  for (const auto& v : cert.values) phi.push_back(v.str());
  json slopes = json::array();
  for (std::size_t s = 0; s < fan.max_cones().size(); ++s) {
    json m = json::array();
    for (const auto& x : cert.slopes[s]) m.push_back(to_string(x));
    slopes.push_back(json{{"cone", one_based(fan.max_cones()[s].rays())}, {"m", m}});
  }
  return json{{"phi", phi}, {"slopes", slopes}};
}

}  // namespace

Report cmd_validate(const std::string& fan_text, const Options& options) {
  return guarded("validate", fan_text, options, [](const Fan& fan, Report& report) {
    json& p = report.payload;
    p["valid"] = true;
    p["cone_count"] = fan.all_cones().size();
    json pcs = json::array();
    for (const auto& pc : primitive_collections(fan)) pcs.push_back(one_based(pc));
    p["primitive_collections"] = pcs;
    const auto result = check_semiprojective(fan);
    if (const auto* cert = std::get_if<PLCertificate>(&result)) {
      p["semiprojective"] = true;
      p["certificate"] = certificate_json(fan, *cert);
    } else {
      const auto& failure = std::get<SemiprojectiveFailure>(result);
      json witnesses = json::array();
      for (const Cone& c : failure.witnesses) witnesses.push_back(one_based(c.rays()));
      p["semiprojective"] = false;
      p["failure"] = json{{"reason", std::string(to_string(failure.reason))},
                          {"witnesses", witnesses},
                          {"detail", failure.detail}};
    }
    report.verdict = "valid";
  });
}

Report cmd_cohomology(const std::string& fan_text, const Options& options) {
  return guarded("cohomology", fan_text, options, [&](const Fan& fan, Report& report) {
    const std::size_t t_max = options.t_max.value_or(default_t_max(fan));
    report.parameters["t_max"] = t_max;
    report.parameters["ring"] = options.ring;
    const TwistedComplex tc(fan, std::nullopt, t_max + 1);
    const auto lg = lg_cohomology(tc, t_max);
    json& p = report.payload;
    p["dims"] = lg.dims;
    json forms = json::array();
    for (const auto& f : tc.linear_forms()) forms.push_back(f.to_string());
    p["linear_forms"] = forms;
    json classes = json::array();
    for (std::size_t t = 0; t <= t_max; ++t)
      for (std::size_t a = 0; a < lg.dims[t]; ++a)
        classes.push_back(json{{"degree", t},
                               {"index", a},
                               {"label", class_label(t, a)},
                               {"representative", element_string(tc.terms(t, lg.slots[t].representatives()[a]))}});
    p["classes"] = classes;
    report.verdict = "computed";

    if (!options.ring) return;
    const CohomologyRing ring = ring_structure(tc, t_max);
    json constants = json::array();
    json products = json::array();
    for (std::size_t t1 = 0; t1 <= t_max; ++t1)
      for (std::size_t t2 = 0; t2 <= t_max; ++t2)
        for (std::size_t a = 0; a < ring.dims()[t1]; ++a)
          for (std::size_t b = 0; b < ring.dims()[t2]; ++b) {
            const SparseVector& v = ring.product(t1, a, t2, b);
            constants.push_back(json{{"t1", t1}, {"a", a}, {"t2", t2}, {"b", b}, {"value", sparse_json(v)}});
            if (t1 == 0 || t2 == 0 || t1 > t2 || t1 + t2 > t_max) continue;
            std::vector<std::pair<std::string, Rational>> terms;
            for (const auto& [c, x] : v.entries()) terms.emplace_back(class_label(t1 + t2, c), x);
            products.push_back(json{{"left", class_label(t1, a)},
                                    {"right", class_label(t2, b)},
                                    {"value", linear_combination(terms)}});
          }
    p["structure_constants"] = constants;
    p["products"] = products;
    p["product_dims"] = ring.dims();
    const auto axioms = ring.check_axioms();
    p["ring_axioms"] = axioms ? *axioms : "ok";

    const std::size_t n = fan.rank();
    const std::size_t lsop_degree = std::max(2 * n, t_max - t_max % 2);
    const auto lsop = lsop_check(tc, lsop_degree);
    json l{{"m_max", lsop_degree},
           {"regular", lsop.regular},
           {"quotient_dims", lsop.quotient_dims},
           {"expected_dims", lsop.expected_dims}};
    if (lsop.regular) {
      json basis = json::array();
      for (std::size_t j = 0; j <= lsop.quotient.max_degree(); ++j) {
        json row = json::array();
        for (const auto& m : lsop.quotient.basis(j)) row.push_back(m.to_string());
        basis.push_back(row);
      }
      l["basis"] = basis;
      const auto mismatch = compare_quotient_with_ring(tc, lsop.quotient, ring);
      l["matches_ring"] = !mismatch.has_value();
      if (mismatch) l["mismatch"] = *mismatch;
      if (mismatch) report.exit_code = kMismatch;
    }
    p["lsop"] = l;
    if (axioms) report.exit_code = kMismatch;
    report.verdict = report.exit_code == kOk ? "computed" : "ring mismatch";
  });
}

Report cmd_verify(const std::string& fan_text, const Options& options) {
  return guarded("verify", fan_text, options, [&](const Fan& fan, Report& report) {
    const std::size_t t_max = options.t_max.value_or(default_t_max(fan));
    const std::size_t m_max = options.m_max.value_or(default_m_max(fan));
    report.parameters["t_max"] = t_max;
    report.parameters["m_max"] = m_max;
    const CoverSimplex cs(fan, zero_based(options.cover, "--cover"));
    report.parameters["cover"] = one_based(cs.cover_indices());

    json& p = report.payload;
    const auto exactness = verify_exactness(cs, m_max, true);
    json entries = json::array();
    for (const auto& e : exactness.entries)
      entries.push_back(json{{"presheaf", to_string(e.tag)},
                             {"k", e.k},
                             {"m", e.m},
                             {"global_dimension", e.global_dimension},
                             {"restriction_rank", e.restriction_rank},
                             {"dims", e.dims},
                             {"ranks", e.ranks},
                             {"exact", e.exact}});
    p["exactness"] = entries;
    p["exact"] = exactness.exact;

    const auto qi = verify_quasi_iso_k(cs, t_max);
    p["lg_dims"] = qi.lg_dims;
    p["l_total_dims"] = qi.l_total_dims;
    p["w_total_dims"] = qi.w_total_dims;
    p["k_commutes"] = qi.k_commutes;
    p["r_commutes"] = qi.r_commutes;
    p["k_induced_ranks"] = qi.k_induced_ranks;
    p["r_induced_ranks"] = qi.r_induced_ranks;
    p["quasi_isomorphic"] = qi.agree;
    const bool ok = exactness.exact && qi.agree;
    report.verdict = ok ? "all pipelines agree" : "pipelines disagree";
    report.exit_code = ok ? kOk : kMismatch;
  });
}

Report cmd_degenerate(const std::string& fan_text, const Options& options) {
  return guarded("degenerate", fan_text, options, [&](const Fan& fan, Report& report) {
    const auto result = check_semiprojective(fan);
    if (const auto* failure = std::get_if<SemiprojectiveFailure>(&result))
      throw ValidationError("fan is not semi-projective (" + std::string(to_string(failure->reason)) +
                            "): " + failure->detail);
    const auto& cert = std::get<PLCertificate>(result);
    const std::size_t n = fan.rank();
    const std::size_t t_max = options.t_max.value_or(default_t_max(fan));
    report.parameters["t_max"] = t_max;

    std::vector<Cone> choices;
    if (auto rays = zero_based(options.sigma_m, "--sigma-m")) {
      for (std::size_t r : *rays)
        if (r >= fan.ray_count()) throw ValidationError("--sigma-m names ray " + std::to_string(r + 1) + " which does not exist");
      choices.emplace_back(*rays);
    } else {
      for (const Cone& c : fan.max_cones())
        if (c.dim() == n) choices.push_back(c);
    }

    json& p = report.payload;
    p["phi"] = certificate_json(fan, cert)["phi"];
    p["certificate"] = certificate_json(fan, cert);
    json entries = json::array();
    bool all_match = true;
    for (const Cone& sigma : choices) {
      json relations = json::array();
      for (std::size_t l = 0; l < fan.ray_count(); ++l) {
        if (sigma.contains(l)) continue;
        const auto rel = degeneration_exponent(fan, cert, sigma, l);
        std::vector<unsigned> lhs(fan.ray_count(), 0), rhs(fan.ray_count(), 0);
        lhs[l] = 1;
        json a = json::array();
        for (std::size_t i = 0; i < n; ++i) {
          const Integer& c = rel.coefficients[i];
          a.push_back(c.str());
          const auto magnitude = static_cast<unsigned>(c < 0 ? Integer(-c) : c);
          (c < 0 ? lhs : rhs)[sigma.rays()[i]] += magnitude;
        }
        std::string right = rel.exponent == 1 ? "t" : "t^" + rel.exponent.str();
        const Monomial rest(rhs);
        if (rest.polynomial_degree() > 0) right += "*" + rest.to_string();
        relations.push_back(json{{"ray", l + 1},
                                 {"coefficients", a},
                                 {"exponent", rel.exponent.str()},
                                 {"relation", Monomial(lhs).to_string() + " = " + right}});
      }
      const auto theta = theta_identification(fan, sigma, t_max);
      all_match = all_match && theta.matches;
      json coefficients = json::array();
      for (const auto& c : theta.coefficients) coefficients.push_back(c.to_string());
      entries.push_back(json{{"cone", one_based(sigma.rays())},
                             {"relations", relations},
                             {"theta_tilde", theta.theta_tilde},
                             {"differential_coefficients", coefficients},
                             {"theta_matches", theta.matches},
                             {"theta_verified_through", theta.verified_through}});
    }
    p["sigma_m"] = entries;
    report.verdict = all_match ? "degeneration data verified" : "theta presentation mismatch";
    report.exit_code = all_match ? kOk : kMismatch;
  });
}

Report run_command(const std::string& command, const std::string& fan_text, const Options& options) {
  if (command == "validate") return cmd_validate(fan_text, options);
  if (command == "cohomology") return cmd_cohomology(fan_text, options);
  if (command == "verify") return cmd_verify(fan_text, options);
  if (command == "degenerate") return cmd_degenerate(fan_text, options);
  Report r;
  r.command = command;
  r.payload = json{{"error", "unknown command " + command}};
  r.verdict = "invalid input";
  r.exit_code = kValidation;
  return r;
}

}  // namespace toriclg::cli
