#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pk/asymptotics.hpp"
#include "pk/hyperbolicity.hpp"
#include "pk/polynomial.hpp"
#include "pk/rational.hpp"
#include "pk/survey.hpp"
#include "pk/version.hpp"

namespace pk {

using Json = nlohmann::json;

// All exact values serialize as decimal strings ("p/q" for rationals,
// plain digits for integers): JSON numbers cannot hold them.

inline Json to_json(const Polynomial<Rat>& p) {
  Json coeffs = Json::array();
  for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(rat_to_string(p.coeff(i)));
  return Json{{"coeffs", coeffs}};
}

inline Polynomial<Rat> polynomial_from_json(const Json& j) {
  std::vector<Rat> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(rat_from_string(c.get<std::string>()));
  return Polynomial<Rat>(std::move(coeffs));
}

inline Json to_json(const HankelReport& r) {
  Json sums = Json::array();
  for (const auto& s : r.newton_sums) sums.push_back(rat_to_string(s));
  Json minors = Json::array();
  for (const auto& m : r.minors) minors.push_back(rat_to_string(m));
  return Json{{"degree", r.degree},
              {"newton_sums", sums},
              {"minors", minors},
              {"verdict", r.hyperbolic ? "hyperbolic" : "not-hyperbolic"}};
}

inline Json to_json(const TuranVerdict& v) {
  return Json{{"order", v.order},
              {"m", v.m},
              {"lhs", v.lhs.get_str()},
              {"rhs", v.rhs.get_str()},
              {"holds", v.holds}};
}

inline Json to_json(const ThresholdReport& r) {
  Json audits = Json::array();
  for (const auto& a : r.audits) {
    audits.push_back(Json{{"n", a.n},
                          {"hankel", to_json(a.hankel)},
                          {"sturm_distinct_real_roots", a.sturm_distinct_real_roots}});
  }
  return Json{{"kind", "threshold-scan"},
              {"k", r.k},
              {"d", r.d},
              {"horizon", r.horizon},
              {"failures", r.failures},
              {"empirical_threshold", r.empirical_threshold},
              {"verified_to", r.verified_to},
              {"conclusive", r.conclusive},
              {"suggested_horizon", r.suggested_horizon},
              {"audits", audits}};
}

inline Json to_json(const TuranScanReport& r) {
  Json audits = Json::array();
  for (const auto& a : r.audits) audits.push_back(to_json(a));
  return Json{{"kind", "turan-scan"},
              {"k", r.k},
              {"order", r.order},
              {"horizon", r.horizon},
              {"failures", r.failures},
              {"empirical_threshold", r.empirical_threshold},
              {"verified_to", r.verified_to},
              {"conclusive", r.conclusive},
              {"suggested_horizon", r.suggested_horizon},
              {"audits", audits}};
}

inline std::string float_str(const BigFloat& x, int digits = 40) { return x.to_string(digits); }

inline Json to_json(const ConvergenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"n", row.n},
                        {"sup_distance", float_str(row.sup_dist)},
                        {"coeff_deviation", float_str(row.coeff_dev)}});
  }
  return Json{{"kind", "convergence-scan"},
              {"k", r.k},
              {"d", r.d},
              {"interval", {rat_to_string(r.lo), rat_to_string(r.hi)}},
              {"grid", r.grid},
              {"rows", rows}};
}

inline Json to_json(const LogQuotientResidual& r, long k, int d) {
  return Json{{"k", k},
              {"d", d},
              {"n", r.n},
              {"j", r.j},
              {"lhs", float_str(r.lhs)},
              {"model", float_str(r.model)},
              {"residual", float_str(r.residual)},
              {"normalized", float_str(r.normalized)}};
}

// ---------------------------------------------------------------------------
// CSV bodies.  Callers prepend the config header lines.

inline std::string to_csv(const ConvergenceReport& r) {
  std::ostringstream os;
  os << "n,sup_distance,coeff_deviation\n";
  for (const auto& row : r.rows) {
    os << row.n << "," << float_str(row.sup_dist) << "," << float_str(row.coeff_dev) << "\n";
  }
  return os.str();
}

inline std::string residual_csv_header() { return "k,d,n,j,lhs,model,residual,normalized\n"; }

inline std::string to_csv_row(const LogQuotientResidual& r, long k, int d) {
  std::ostringstream os;
  os << k << "," << d << "," << r.n << "," << r.j << "," << float_str(r.lhs) << ","
     << float_str(r.model) << "," << float_str(r.residual) << "," << float_str(r.normalized)
     << "\n";
  return os.str();
}

// Summary plus one row per failure; per-shift verdicts are implied
// (every unlisted shift passed).
inline std::string to_csv(const ThresholdReport& r) {
  std::ostringstream os;
  os << "# k=" << r.k << " d=" << r.d << " horizon=" << r.horizon
     << " empirical_threshold=" << r.empirical_threshold << " verified_to=" << r.verified_to
     << " conclusive=" << (r.conclusive ? "yes" : "no")
     << " suggested_horizon=" << r.suggested_horizon << "\n";
  os << "n,verdict,sturm_distinct_real_roots\n";
  for (const auto& a : r.audits) {
    os << a.n << ",not-hyperbolic," << a.sturm_distinct_real_roots << "\n";
  }
  return os.str();
}

inline std::string to_csv(const TuranScanReport& r) {
  std::ostringstream os;
  os << "# k=" << r.k << " order=" << r.order << " horizon=" << r.horizon
     << " empirical_threshold=" << r.empirical_threshold << " verified_to=" << r.verified_to
     << " conclusive=" << (r.conclusive ? "yes" : "no")
     << " suggested_horizon=" << r.suggested_horizon << "\n";
  os << "m,lhs,rhs,holds\n";
  for (const auto& a : r.audits) {
    os << a.m << "," << a.lhs.get_str() << "," << a.rhs.get_str() << ","
       << (a.holds ? "yes" : "no") << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Run configuration, echoed into every output file.

struct RunConfig {
  std::string command;
  long k = 0;
  int d = 0;
  int order = 0;       // 0 = not a Turan run
  long max_n = -1;     // gen only
  long horizon = -1;   // scans only
  long precision = 128;
  int delta_truncation = 40;
  std::string format = "json";
  std::string cache_dir;
  unsigned long seed = 0;
  int parallelism = 1;
  std::string points;  // comma list, converge/asymp only

  Json to_json() const {
    Json j{{"command", command}, {"k", k},
           {"precision", precision}, {"format", format},
           {"cache_dir", cache_dir}, {"seed", seed},
           {"parallelism", parallelism}};
    if (d > 0) j["d"] = d;
    if (order > 0) j["order"] = order;
    if (max_n >= 0) j["max_n"] = max_n;
    if (horizon >= 0) j["horizon"] = horizon;
    if (!points.empty()) j["points"] = points;
    if (d > 0 || !points.empty()) j["delta_truncation"] = delta_truncation;
    return j;
  }

  std::string to_comment_lines() const {
    std::ostringstream os;
    os << "# pk " << version << "\n";
    os << "# config:";
    const Json j = to_json();  // items() must not iterate a temporary
    for (const auto& [key, val] : j.items()) {
      os << " " << key << "=" << (val.is_string() ? val.get<std::string>() : val.dump());
    }
    os << "\n";
    return os.str();
  }
};

inline void write_json_report(const std::filesystem::path& path, const RunConfig& config,
                              const Json& report) {
  Json doc{{"artifact", "pk"}, {"version", version}, {"config", config.to_json()},
           {"report", report}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline void write_csv_report(const std::filesystem::path& path, const RunConfig& config,
                             const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << config.to_comment_lines() << body;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace pk
