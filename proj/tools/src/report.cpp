#include "toriclg_cli/report.hpp"

#include <iomanip>
#include <sstream>

namespace toriclg::cli {

using nlohmann::json;

bool Report::operator==(const Report& other) const {
  return command == other.command && fan == other.fan && parameters == other.parameters &&
         payload == other.payload && verdict == other.verdict && exit_code == other.exit_code;
}

json to_json(const Report& report) {
  return json{{"command", report.command},     {"fan", report.fan},
              {"parameters", report.parameters}, {"payload", report.payload},
              {"verdict", report.verdict},     {"exit_code", report.exit_code}};
}

Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.fan = j.at("fan");
  r.parameters = j.at("parameters");
  r.payload = j.at("payload");
  r.verdict = j.at("verdict").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  return r;
}

std::string render_json(const Report& report) { return to_json(report).dump(2) + "\n"; }

namespace {

std::string join(const json& array, const char* separator = " ") {
  std::ostringstream out;
  bool first = true;
  for (const auto& x : array) {
    if (!first) out << separator;
    first = false;
    out << (x.is_string() ? x.get<std::string>() : x.dump());
  }
  return out.str();
}

void render_dims(std::ostringstream& out, const char* label, const json& dims) {
  out << "  " << std::left << std::setw(22) << label << join(dims) << '\n';
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream out;
  const json& p = report.payload;
  out << "toriclg " << report.command << '\n';
  if (report.fan.contains("rank"))
    out << "  fan: rank " << report.fan["rank"] << ", " << report.fan["ray_count"] << " rays, "
        << report.fan["max_cones"].size() << " maximal cones\n";
  for (const auto& [key, value] : report.parameters.items())
    out << "  " << key << " = " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';

  if (report.command == "validate" && p.contains("primitive_collections")) {
    out << "  cones in closure:     " << p["cone_count"] << '\n';
    out << "  primitive collections:";
    for (const auto& pc : p["primitive_collections"]) out << " {" << join(pc, ",") << '}';
    out << '\n';
    out << "  semi-projective:      " << (p["semiprojective"].get<bool>() ? "yes" : "no") << '\n';
    if (p.contains("failure"))
      out << "    " << p["failure"]["reason"].get<std::string>() << ": "
          << p["failure"]["detail"].get<std::string>() << '\n';
    if (p.contains("certificate")) out << "  phi(rays):            " << join(p["certificate"]["phi"]) << '\n';
  }
  if (report.command == "cohomology" && p.contains("dims")) {
    render_dims(out, "dim H^t (t = 0..):", p["dims"]);
    if (p.contains("classes")) {
      for (const auto& c : p["classes"])
        out << "    H^" << c["degree"] << " e" << c["index"] << " = " << c["representative"].get<std::string>()
            << '\n';
    }
    if (p.contains("products")) {
      out << "  products:\n";
      for (const auto& prod : p["products"])
        out << "    " << prod["left"].get<std::string>() << " * " << prod["right"].get<std::string>() << " = "
            << prod["value"].get<std::string>() << '\n';
    }
    if (p.contains("lsop")) {
      const auto& l = p["lsop"];
      out << "  f_i regular sequence: " << (l["regular"].get<bool>() ? "yes" : "no") << '\n';
      render_dims(out, "quotient dims (j):", l["quotient_dims"]);
      if (l.contains("matches_ring"))
        out << "  quotient ring = H:    " << (l["matches_ring"].get<bool>() ? "yes" : "no") << '\n';
    }
  }
  if (report.command == "verify" && p.contains("lg_dims")) {
    render_dims(out, "L(Y) cohomology:", p["lg_dims"]);
    render_dims(out, "(L, delta, d_L) total:", p["l_total_dims"]);
    render_dims(out, "(W, delta, 0) total:", p["w_total_dims"]);
    out << "  Cech exactness:       " << (p["exact"].get<bool>() ? "exact" : "NOT exact") << '\n';
    out << "  K, r quasi-iso:       " << (p["quasi_isomorphic"].get<bool>() ? "yes" : "no") << '\n';
  }
  if (report.command == "degenerate" && p.contains("sigma_m")) {
    out << "  phi(rays):            " << join(p["phi"]) << '\n';
    for (const auto& s : p["sigma_m"]) {
      out << "  sigma_M = {" << join(s["cone"], ",") << "}: theta check "
          << (s["theta_matches"].get<bool>() ? "ok" : "MISMATCH") << '\n';
      for (const auto& r : s["relations"]) out << "    " << r["relation"].get<std::string>() << '\n';
    }
  }
  if (p.contains("error")) out << "  error: " << p["error"].get<std::string>() << '\n';
  out << "  verdict: " << report.verdict << " (exit " << report.exit_code << ")\n";
  out << "  elapsed: " << std::fixed << std::setprecision(3) << report.elapsed_seconds << " s\n";
  return out.str();
}

}  // namespace toriclg::cli
