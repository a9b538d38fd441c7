#pragma once

// Scenario files (JSON) -> dispatch -> report JSON + data CSV.
// The schema is strict: unknown keys are rejected with their field path, and
// every default is materialized back into the echoed scenario so a report
// fully determines its inputs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "l1tv/convergence.hpp"
#include "l1tv/growth.hpp"
#include "l1tv/lorentz.hpp"
#include "l1tv/radial_datum.hpp"
#include "l1tv/solver.hpp"

namespace l1tv {

// Process exit codes; part of the public contract (see README).
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,          // bad scenario / schema violation / I-O failure
  kExitInapplicable = 2,   // datum outside the supported construction class
  kExitInfeasible = 3,     // no admissible vector field (|z| <= 1 fails)
  kExitNonexistent = 4,    // nonexistence regime (e.g. level above sup G)
  kExitVerifyFailed = 5,   // candidate rejected by the weak-form verifier
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string command;  // solve | verify | norms | classify | converge
  int dim = 0;
  double radius = 0.0;
  std::vector<PowerTerm> terms;
  nlohmann::json growth_json;
  // options
  int grid = 2048;
  Branch policy = Branch::Minimal;
  double tol = 1e-3;  // verify threshold
  std::string out_dir = ".";
  std::string input;  // verify: candidate CSV
  double delta = 0.0;
  // converge
  std::optional<ApproximationSchedule> study;
  nlohmann::json echo;  // scenario with defaults materialized
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::string& path,
                           const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ScenarioError("unknown key at " + path + ": " + it.key());
}

inline double require_number(const nlohmann::json& obj, const std::string& path,
                             const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_number())
    throw ScenarioError("missing or non-numeric field " + path + "." + key);
  return obj[key].get<double>();
}

inline GrowthSpec parse_growth(const nlohmann::json& gj) {
  if (!gj.is_object() || !gj.contains("family"))
    throw ScenarioError("problem.growth must be an object with a family");
  const std::string fam = gj["family"].get<std::string>();
  const std::string path = "problem.growth";
  if (fam == "constant") {
    reject_unknown(gj, path, {"family", "m"});
    return GrowthSpec::constant(require_number(gj, path, "m"));
  }
  if (fam == "affine_plus") {
    reject_unknown(gj, path, {"family", "base", "slope"});
    return GrowthSpec::affine_plus(require_number(gj, path, "base"),
                                   require_number(gj, path, "slope"));
  }
  if (fam == "rational1" || fam == "rational2") {
    reject_unknown(gj, path, {"family", "shift"});
    const double shift = gj.contains("shift") ? require_number(gj, path, "shift") : 0.0;
    return fam == "rational1" ? GrowthSpec::rational1(shift)
                              : GrowthSpec::rational2(shift);
  }
  if (fam == "hinge_plus") {
    reject_unknown(gj, path, {"family", "a"});
    return GrowthSpec::hinge_plus(require_number(gj, path, "a"));
  }
  if (fam == "trapezoid") {
    reject_unknown(gj, path, {"family", "a", "b"});
    return GrowthSpec::trapezoid(require_number(gj, path, "a"),
                                 require_number(gj, path, "b"));
  }
  if (fam == "piecewise_linear") {
    reject_unknown(gj, path, {"family", "knots", "tail_slope"});
    if (!gj.contains("knots") || !gj["knots"].is_array())
      throw ScenarioError("missing knots array at " + path);
    std::vector<PwlKnot> knots;
    for (const auto& k : gj["knots"]) {
      if (!k.is_array() || k.size() != 2)
        throw ScenarioError("each knot must be [s, value] at " + path);
      knots.push_back({k[0].get<double>(), k[1].get<double>()});
    }
    const double ts =
        gj.contains("tail_slope") ? require_number(gj, path, "tail_slope") : 0.0;
    return GrowthSpec::piecewise_linear(std::move(knots), ts);
  }
  throw ScenarioError("unknown growth family: " + fam);
}

inline nlohmann::json finite_or_string(double v) {
  if (std::isnan(v)) return "nan";
  if (!std::isfinite(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline std::string fmt(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (std::isnan(v) ? "nan" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline Scenario parse_scenario(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
  detail::reject_unknown(doc, "$", {"command", "problem", "options", "study"});
  Scenario s;
  if (!doc.contains("command") || !doc["command"].is_string())
    throw ScenarioError("missing string field $.command");
  s.command = doc["command"].get<std::string>();
  static const std::set<std::string> commands{"solve", "verify", "norms",
                                              "classify", "converge"};
  if (!commands.count(s.command))
    throw ScenarioError("unknown command: " + s.command);
  if (!doc.contains("problem") || !doc["problem"].is_object())
    throw ScenarioError("missing object field $.problem");
  const auto& pj = doc["problem"];
  detail::reject_unknown(pj, "problem", {"N", "R", "terms", "growth"});
  const double nd = detail::require_number(pj, "problem", "N");
  if (nd != std::floor(nd) || nd < 2)
    throw ScenarioError("problem.N must be an integer >= 2");
  s.dim = int(nd);
  s.radius = detail::require_number(pj, "problem", "R");
  if (!(s.radius > 0)) throw ScenarioError("problem.R must be > 0");
  if (!pj.contains("terms") || !pj["terms"].is_array() || pj["terms"].empty())
    throw ScenarioError("problem.terms must be a nonempty array");
  for (std::size_t i = 0; i < pj["terms"].size(); ++i) {
    const auto& tj = pj["terms"][i];
    const std::string path = "problem.terms[" + std::to_string(i) + "]";
    detail::reject_unknown(tj, path, {"c", "q", "a", "b"});
    PowerTerm t;
    t.coef = detail::require_number(tj, path, "c");
    t.exponent = detail::require_number(tj, path, "q");
    t.lo = tj.contains("a") ? detail::require_number(tj, path, "a") : 0.0;
    t.hi = tj.contains("b") ? detail::require_number(tj, path, "b") : s.radius;
    if (t.coef < 0)
      throw ScenarioError("coefficient must be nonnegative at " + path);
    if (t.exponent < 0 || t.exponent > 1)
      throw ScenarioError("exponent must lie in [0, 1] at " + path);
    s.terms.push_back(t);
  }
  if (s.command != "norms") {
    if (!pj.contains("growth"))
      throw ScenarioError("missing field problem.growth");
    s.growth_json = pj["growth"];
    (void)detail::parse_growth(s.growth_json);  // validate eagerly
  } else if (pj.contains("growth")) {
    s.growth_json = pj["growth"];
    (void)detail::parse_growth(s.growth_json);
  }
  if (doc.contains("options")) {
    const auto& oj = doc["options"];
    detail::reject_unknown(
        oj, "options", {"grid", "policy", "tol", "out", "input", "delta"});
    if (oj.contains("grid")) {
      s.grid = int(detail::require_number(oj, "options", "grid"));
      if (s.grid < 2) throw ScenarioError("options.grid must be >= 2");
    }
    if (oj.contains("policy")) {
      const std::string p = oj["policy"].get<std::string>();
      if (p == "minimal")
        s.policy = Branch::Minimal;
      else if (p == "upper")
        s.policy = Branch::Upper;
      else
        throw ScenarioError("options.policy must be minimal or upper");
    }
    if (oj.contains("tol")) s.tol = detail::require_number(oj, "options", "tol");
    if (oj.contains("out")) s.out_dir = oj["out"].get<std::string>();
    if (oj.contains("input")) s.input = oj["input"].get<std::string>();
    if (oj.contains("delta"))
      s.delta = detail::require_number(oj, "options", "delta");
  }
  if (s.command == "converge") {
    if (!doc.contains("study") || !doc["study"].is_object())
      throw ScenarioError("converge needs an object field $.study");
    const auto& sj = doc["study"];
    detail::reject_unknown(sj, "study", {"scheme", "parameters", "metric"});
    ApproximationSchedule sched;
    const std::string scheme = sj.value("scheme", "");
    if (scheme == "truncate_datum")
      sched.scheme = Scheme::TruncateDatum;
    else if (scheme == "truncate_growth")
      sched.scheme = Scheme::TruncateGrowth;
    else if (scheme == "shift_growth")
      sched.scheme = Scheme::ShiftGrowth;
    else
      throw ScenarioError(
          "study.scheme must be truncate_datum, truncate_growth or "
          "shift_growth");
    if (!sj.contains("parameters") || !sj["parameters"].is_array() ||
        sj["parameters"].empty())
      throw ScenarioError("study.parameters must be a nonempty array");
    for (const auto& p : sj["parameters"])
      sched.parameters.push_back(p.get<double>());
    const std::string metric = sj.value("metric", "l1");
    if (metric == "l1")
      sched.metric = ErrorMetric::L1;
    else if (metric == "linf_away")
      sched.metric = ErrorMetric::LinfAwayFromOrigin;
    else
      throw ScenarioError("study.metric must be l1 or linf_away");
    sched.delta = s.delta;
    s.study = sched;
  } else if (doc.contains("study")) {
    throw ScenarioError("$.study is only valid for the converge command");
  }
  // echo with defaults materialized
  nlohmann::json echo;
  echo["command"] = s.command;
  echo["problem"]["N"] = s.dim;
  echo["problem"]["R"] = s.radius;
  for (const auto& t : s.terms)
    echo["problem"]["terms"].push_back(
        {{"c", t.coef}, {"q", t.exponent}, {"a", t.lo}, {"b", t.hi}});
  if (!s.growth_json.is_null()) echo["problem"]["growth"] = s.growth_json;
  echo["options"] = {{"grid", s.grid},
                     {"policy", s.policy == Branch::Minimal ? "minimal" : "upper"},
                     {"tol", s.tol},
                     {"out", s.out_dir},
                     {"delta", s.delta}};
  if (!s.input.empty()) echo["options"]["input"] = s.input;
  if (s.study) {
    echo["study"]["scheme"] =
        s.study->scheme == Scheme::TruncateDatum
            ? "truncate_datum"
            : (s.study->scheme == Scheme::TruncateGrowth ? "truncate_growth"
                                                         : "shift_growth");
    echo["study"]["parameters"] = s.study->parameters;
    echo["study"]["metric"] =
        s.study->metric == ErrorMetric::L1 ? "l1" : "linf_away";
  }
  s.echo = echo;
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ScenarioError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_scenario(doc);
}

namespace detail {

// Log-graded grid on (0, R], denser toward the origin.
inline std::vector<double> solve_grid(double R, int n) {
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i)
    r[i] = R * std::exp(-14.0 * (1.0 - double(i) / (n - 1)));
  return r;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError("cannot write output file: " + path);
  out << content;
}

inline nlohmann::json regime_json(const RegimeReport& rep) {
  nlohmann::json j;
  j["tags"] = nlohmann::json::array();
  for (auto t : rep.tags) j["tags"].push_back(to_string(t));
  for (const auto& [k, v] : rep.witnesses) j["witnesses"][k] = finite_or_string(v);
  return j;
}

inline std::string solution_csv(const Solution& sol, const std::vector<double>& grid) {
  std::string csv = "r,h,xi_times_r,w,segment_kind\n";
  for (double r : grid) {
    const char* kind = sol.on_strict(r) ? "strict" : "flat";
    csv += fmt(r) + "," + fmt(sol.h(r)) + "," + fmt(sol.xi_times_r(r)) + "," +
           fmt(sol.w(r)) + "," + kind + "\n";
  }
  return csv;
}

// Piecewise-linear read-back of a solution CSV for verification.
struct CsvCandidate {
  std::vector<double> r, h, xr;
  double interp(const std::vector<double>& y, double x) const {
    if (x <= r.front()) return y.front();
    if (x >= r.back()) return y.back();
    auto it = std::upper_bound(r.begin(), r.end(), x);
    const std::size_t i = std::size_t(it - r.begin()) - 1;
    const double t = (x - r[i]) / (r[i + 1] - r[i]);
    return y[i] + t * (y[i + 1] - y[i]);
  }
  double slope(const std::vector<double>& y, double x) const {
    auto it = std::upper_bound(r.begin(), r.end(), std::clamp(x, r.front(), r.back()));
    std::size_t i = std::min(std::size_t(it - r.begin()), r.size() - 1);
    if (i == 0) i = 1;
    return (y[i] - y[i - 1]) / (r[i] - r[i - 1]);
  }
};

inline CsvCandidate load_candidate_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open candidate file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,h,xi_times_r", 0) != 0)
    throw ScenarioError("candidate CSV needs header r,h,xi_times_r,... in " + path);
  CsvCandidate c;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',') && row.size() < 3)
      row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() < 3)
      throw ScenarioError("short row in candidate CSV: " + path);
    c.r.push_back(row[0]);
    c.h.push_back(row[1]);
    c.xr.push_back(row[2]);
  }
  if (c.r.size() < 2) throw ScenarioError("candidate CSV has too few rows");
  return c;
}

}  // namespace detail

// Executes a parsed scenario; writes report.json (always) plus solution.csv /
// study.csv into the output directory.  Returns the process exit code.
inline int run_scenario(const Scenario& s) {
  nlohmann::json report;
  report["scenario"] = s.echo;
  const RadialDatum f(s.dim, s.radius, s.terms);
  int code = kExitOk;
  try {
    if (s.command == "norms") {
      const auto q2 = quasinorm_marcinkiewicz(f, 2.0);
      const auto qN = quasinorm_marcinkiewicz(f, double(s.dim));
      const auto mN = norm_marcinkiewicz(f, double(s.dim));
      const auto dual = dual_norm_bounds(f);
      report["norms"] = {
          {"sobolev_constant", sobolev_constant(s.dim)},
          {"quasinorm_2", detail::finite_or_string(q2.value)},
          {"quasinorm_N", detail::finite_or_string(qN.value)},
          {"marcinkiewicz_N", detail::finite_or_string(mN.value)},
          {"lorentz_N1", detail::finite_or_string(norm_lorentz_q1(f, double(s.dim)))},
          {"dual_lower", dual.lower},
          {"dual_upper", detail::finite_or_string(dual.upper)},
          {"annulus", {dual.annulus_lo, dual.annulus_hi}},
          {"total_mass", f.total_mass()}};
    } else {
      const GrowthSpec g = detail::parse_growth(s.growth_json);
      if (s.command == "classify") {
        const RegimeReport rep = classify_regime(f, g, s.policy);
        report["regime"] = detail::regime_json(rep);
        report["growth_class"] = to_string(g.classify().tag);
        if (rep.has(RegimeTag::NonexistentRadial)) code = kExitNonexistent;
      } else if (s.command == "solve") {
        const SolveOutcome out = construct_radial_solution(f, g, s.policy);
        report["regime"] = detail::regime_json(out.report);
        if (!out.solution) {
          code = out.report.witnesses.count("feasibility_margin") &&
                         out.report.witnesses.at("feasibility_margin") < -1e-9
                     ? kExitInfeasible
                     : kExitNonexistent;
        } else {
          const auto grid = detail::solve_grid(s.radius, s.grid);
          detail::write_file(s.out_dir + "/solution.csv",
                             detail::solution_csv(*out.solution, grid));
          const auto tv = total_variation(*out.solution);
          report["solution"] = {
              {"boundary_value", out.solution->boundary_value()},
              {"unbounded_at_origin", out.solution->unbounded_at_origin()},
              {"total_variation", detail::finite_or_string(tv.value)},
              {"csv", "solution.csv"}};
          for (const auto& j : out.solution->jumps())
            report["solution"]["jumps"].push_back(
                {{"radius", j.radius}, {"lower", j.lower}, {"upper", j.upper}});
        }
      } else if (s.command == "verify") {
        if (s.input.empty())
          throw ScenarioError("verify needs options.input (candidate CSV)");
        const auto csv = detail::load_candidate_csv(s.input);
        Candidate cand;
        cand.h = [csv](double r) { return csv.interp(csv.h, r); };
        cand.xi_times_r = [csv](double r) { return csv.interp(csv.xr, r); };
        cand.variation_density = [csv, g](double r) {
          return g.g(csv.interp(csv.h, r)) * std::abs(csv.slope(csv.h, r));
        };
        cand.split_points = csv.r;
        const auto rep =
            weak_residual(cand, f, g, bump_family(s.radius));
        report["verify"] = {{"max_residual", rep.max_residual},
                            {"threshold", s.tol},
                            {"pairing_defect", rep.pairing_defect}};
        for (double v : rep.residuals) report["verify"]["residuals"].push_back(v);
        if (rep.max_residual > s.tol) code = kExitVerifyFailed;
      } else if (s.command == "converge") {
        const ConvergenceTable table = run_convergence_study(f, g, *s.study, s.policy);
        std::string csv = "param,error,bv_bound,feasible\n";
        for (const auto& row : table.rows) {
          csv += detail::fmt(row.parameter) + "," + detail::fmt(row.error) + "," +
                 detail::fmt(row.bv_bound) + "," +
                 (row.ok && row.bv_ok ? "1" : "0") + "\n";
          report["study"]["rows"].push_back(
              {{"param", row.parameter},
               {"error", detail::finite_or_string(row.error)},
               {"variation", detail::finite_or_string(row.variation)},
               {"bv_bound", detail::finite_or_string(row.bv_bound)},
               {"bv_ok", row.bv_ok},
               {"ok", row.ok},
               {"note", row.note}});
        }
        report["study"]["empirical_rate"] = table.empirical_rate;
        detail::write_file(s.out_dir + "/study.csv", csv);
      }
    }
  } catch (const ConstructError& e) {
    report["error"] = e.what();
    code = e.kind == ConstructErrorKind::InapplicableDatum
               ? kExitInapplicable
               : (e.kind == ConstructErrorKind::InfeasibleField
                      ? kExitInfeasible
                      : kExitNonexistent);
  } catch (const std::domain_error& e) {
    report["error"] = e.what();  // level above range of G
    code = kExitNonexistent;
  }
  report["exit_code"] = code;
  detail::write_file(s.out_dir + "/report.json", report.dump(2) + "\n");
  return code;
}

}  // namespace l1tv
