#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "logfit/logfit.hpp"
#include "logfit/problem.hpp"

namespace logfit {

enum class ExitStatus : int { ok = 0, rejected = 1, input_error = 2 };

/// Deterministic command output: text lines and the same content as JSON.
struct Report {
  ExitStatus status = ExitStatus::ok;
  std::vector<std::string> lines;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  void line(std::string s) { lines.push_back(std::move(s)); }

  std::string render(bool json) const {
    if (json) {
      nlohmann::ordered_json out = data;
      out["status"] = static_cast<int>(status);
      return out.dump(2) + "\n";
    }
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
  }
};

struct CommandRequest {
  std::string name;
  std::optional<std::size_t> k;
  std::optional<RationalPoint> at;
  std::vector<std::string> center;
};

struct RunOptions {
  std::size_t max_depth = 64;
  unsigned seed = 0;
};

namespace detail {

inline std::vector<std::string> strings_of(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline std::string joined(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

inline std::string matrix_string(const ExponentMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
    s += "]";
  }
  return s + "]";
}

inline std::vector<std::string> reduced_basis(const IdealPresentation& I) {
  return strings_of(I.groebner_basis().generators());
}

inline RationalPoint chosen_point(const CommandRequest& req, const ProblemFile& p) {
  auto a = req.at ? *req.at : p.point ? *p.point : RationalPoint::origin(p.source.dimension());
  if (a.size() != p.source.dimension())
    throw domain_error("point has " + std::to_string(a.size()) + " coordinates, source has " +
                       std::to_string(p.source.dimension()));
  return a;
}

inline void report_verdict(Report& r, const std::string& label, const Verdict& v) {
  r.line(label + ": " + (v ? "yes" : "no"));
  for (const auto& d : v.diagnostics) r.line("  " + d);
  r.data[label] = v.ok;
  if (!v.diagnostics.empty()) r.data[label + "_diagnostics"] = v.diagnostics;
}

inline std::string certificate_kind(const StronglyPreparedCertificate& c) {
  return "case " + std::to_string(c.case_tag);
}

inline nlohmann::ordered_json certificate_json(const StronglyPreparedCertificate& c, const Ring& ring) {
  std::vector<std::string> stratum;
  for (auto i : c.stratum) stratum.push_back(ring.name(i));
  nlohmann::ordered_json j;
  j["case"] = c.case_tag;
  j["stratum"] = stratum;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  if (c.case_tag != 3) {
    j["m"] = c.multiplicity;
    j["P"] = c.series.to_string();
  }
  j["z_divisorial"] = c.z_divisorial;
  return j;
}

inline void run_fitting(Report& r, const CommandRequest& req, const ProblemFile& p) {
  auto phi = p.morphism();
  if (!req.k) throw domain_error("fitting needs --k");
  auto I = log_fitting_ideal(phi, *req.k);
  auto label = fitting_label(phi.source_dim(), *req.k);
  auto gens = strings_of(I.generators());
  auto basis = reduced_basis(I);
  const bool top = *req.k == top_form_degree(phi);
  r.line("log-Fitting ideal " + label + " (k=" + std::to_string(*req.k) + (top ? ", top form degree" : "") + ")");
  r.line("generators: " + (gens.empty() ? std::string("0") : joined(gens)));
  r.line("ideal: " + I.groebner_basis().to_string());
  r.data["label"] = label;
  r.data["k"] = *req.k;
  r.data["top"] = top;
  r.data["generators"] = gens;
  r.data["reduced_basis"] = basis;
}

inline void run_classify(Report& r, const ProblemFile& p, const RationalPoint& a) {
  auto phi = p.morphism();
  const auto& ring = *p.source.ring();
  r.line("point: " + a.to_string());
  r.data["point"] = a.to_string();
  auto qp = is_quasi_prepared(phi);
  report_verdict(r, "quasi_prepared", qp);

  std::string summary;
  if (phi.target_dim() == 2) {
    auto semantic = StrongPreparationTest(phi).at(a);
    auto syntactic = match_spm_template(phi, a);
    r.line("strongly prepared (semantic): " +
           (semantic ? "yes, top log-Fitting ideal generated by " + monomial_to_string(semantic->generator_monomial, ring)
                     : std::string("no")));
    r.line("normal form template: " + (syntactic ? certificate_kind(*syntactic) : std::string("no match")));
    r.data["strongly_prepared"] = semantic.has_value();
    if (semantic) r.data["fitting_generator"] = monomial_to_string(semantic->generator_monomial, ring);
    r.data["template"] = syntactic ? certificate_json(*syntactic, ring) : nlohmann::ordered_json(nullptr);
    if (semantic) summary = syntactic ? "strongly prepared (" + certificate_kind(*syntactic) + ")" : "strongly prepared";
    else summary = "not strongly prepared";
  }
  auto mono = is_monomial_morphism_at(phi, a);
  std::string mono_text = mono ? "monomial, exponent matrix rank " + std::to_string(phi.target_dim()) : "not monomial";
  r.line("monomial: " + (mono ? matrix_string(*mono) : std::string("no")));
  r.data["monomial"] = mono.has_value();
  if (mono) r.data["exponent_matrix"] = *mono;
  summary = summary.empty() ? mono_text : summary + "; " + mono_text;
  if (!qp) summary = "not quasi-prepared; " + summary;
  r.line(summary);
  r.data["summary"] = summary;
  if (!qp) r.status = ExitStatus::rejected;
}

inline void run_blowup(Report& r, const CommandRequest& req, const ProblemFile& p) {
  auto phi = p.morphism();
  auto step = blowup_chart(p.source, req.center);
  r.line("center: " + joined(req.center));
  r.data["center"] = req.center;
  auto charts = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < step.children.size(); ++c) {
    const auto& ch = step.children[c];
    const auto& ring = *ch.chart.ring();
    auto t = transform_morphism(phi, step, c);
    std::vector<std::string> subst;
    for (std::size_t i = 0; i < ring.size(); ++i)
      if (!(ch.substitution[i] == Polynomial::variable(ch.chart.ring(), i)))
        subst.push_back(ring.name(i) + " -> " + ch.substitution[i].to_string());
    auto comps = strings_of(t.morphism.components());
    r.line("chart " + ring.name(ch.distinguished) + ": " + joined(subst) + "; divisor {" + joined(ch.chart.divisor_names()) + "}");
    for (std::size_t i = 0; i < comps.size(); ++i) r.line("  " + p.target.ring()->name(i) + " = " + comps[i]);
    if (!t.pair_condition) {
      for (const auto& d : t.pair_condition.diagnostics) r.line("  pair condition fails: " + d);
      r.status = ExitStatus::rejected;
    }
    nlohmann::ordered_json j;
    j["chart"] = ring.name(ch.distinguished);
    j["substitution"] = subst;
    j["divisor"] = ch.chart.divisor_names();
    j["components"] = comps;
    j["pair_condition"] = t.pair_condition.ok;
    charts.push_back(std::move(j));
  }
  r.data["charts"] = std::move(charts);
}

inline nlohmann::ordered_json trace_json(const Principalization& pr, const Ring& ring, Report& r) {
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : pr.steps) {
    std::vector<std::string> center, ideals;
    for (auto i : s.center) center.push_back(ring.name(i));
    for (const auto& I : s.child_ideals) ideals.push_back(I.to_string(ring));
    std::vector<std::size_t> kids = s.children;
    std::string line = "step node " + std::to_string(s.node) + " center {" + joined(center) + "} ->";
    for (std::size_t c = 0; c < kids.size(); ++c) line += " " + std::to_string(kids[c]) + ":" + ideals[c];
    r.line(line);
    nlohmann::ordered_json j;
    j["node"] = s.node;
    j["center"] = center;
    j["children"] = kids;
    j["ideals"] = ideals;
    steps.push_back(std::move(j));
  }
  return steps;
}

inline void run_principalize(Report& r, const ProblemFile& p, const RunOptions& opt) {
  auto phi = p.morphism();
  auto k = top_form_degree(phi);
  auto F = log_fitting_ideal(phi, k);
  const auto& ring = *p.source.ring();
  auto mono = MonomialIdeal::from_ideal(F);
  if (!mono || mono->is_zero()) {
    r.line("top log-Fitting ideal " + F.groebner_basis().to_string() + " is not a nonzero monomial ideal");
    r.data["monomial_ideal"] = nullptr;
    r.status = ExitStatus::rejected;
    return;
  }
  r.line("ideal " + fitting_label(phi.source_dim(), k) + ": " + mono->to_string(ring));
  r.data["ideal"] = mono->to_string(ring);
  auto pr = goward_principalize(*mono, p.source, {opt.max_depth});
  r.data["steps"] = trace_json(pr, ring, r);
  auto leaves = nlohmann::ordered_json::array();
  for (const auto& leaf : pr.leaves) {
    auto g = monomial_to_string(leaf.certificate.generator_monomial, ring);
    r.line("leaf " + std::to_string(leaf.node) + ": principal (" + g + ")");
    leaves.push_back({{"node", leaf.node}, {"generator", g}});
  }
  r.line("blowups: " + std::to_string(pr.steps.size()) + ", depth " + std::to_string(pr.tree.depth()));
  r.data["leaves"] = std::move(leaves);
  r.data["depth"] = pr.tree.depth();
}

inline void run_monomialize(Report& r, const ProblemFile& p, const RunOptions& opt) {
  auto phi = p.morphism();
  if (phi.target_dim() == 2) {
    auto qp = is_quasi_prepared(phi);
    if (!qp) {
      report_verdict(r, "quasi_prepared", qp);
      r.status = ExitStatus::rejected;
      return;
    }
  }
  auto m = monomialize_monomial_morphism(phi, {opt.max_depth, opt.seed});
  const auto& ring = *p.source.ring();
  r.line("top log-Fitting ideal: " + m.fitting.to_string(ring));
  r.data["fitting"] = m.fitting.to_string(ring);
  r.data["steps"] = trace_json(m.principalization, ring, r);
  auto leaves = nlohmann::ordered_json::array();
  for (const auto& leaf : m.leaves) {
    auto comps = strings_of(leaf.morphism.components());
    r.line("leaf " + std::to_string(leaf.node) + ": divisor {" + joined(leaf.morphism.source().divisor_names()) +
           "}; " + joined(comps) + "; exponents " + matrix_string(leaf.exponents) + "; " +
           (leaf.certified ? "certified" : "NOT certified") + " at " + std::to_string(leaf.points_checked) + " points");
    for (const auto& d : leaf.certified.diagnostics) r.line("  " + d);
    nlohmann::ordered_json j;
    j["node"] = leaf.node;
    j["divisor"] = leaf.morphism.source().divisor_names();
    j["components"] = comps;
    j["exponent_matrix"] = leaf.exponents;
    j["certified"] = leaf.certified.ok;
    j["points_checked"] = leaf.points_checked;
    leaves.push_back(std::move(j));
  }
  r.data["leaves"] = std::move(leaves);
  if (!m.all_certified()) r.status = ExitStatus::rejected;
}

}  // namespace detail

/// Runs one CLI command on a parsed problem. Library errors become exit
/// status 2 with the message in the report.
inline Report run_command(const CommandRequest& req, const ProblemFile& p, const RunOptions& opt = {}) {
  Report r;
  r.data["command"] = req.name;
  try {
    auto phi = p.morphism();
    const auto& name = req.name;
    if (name == "fitting") {
      detail::run_fitting(r, req, p);
    } else if (name == "logrank" || name == "rank") {
      auto a = detail::chosen_point(req, p);
      auto v = name == "logrank" ? log_rank_at_point(phi, a) : rank_at_point(phi, a);
      r.line(name + " at " + a.to_string() + ": " + std::to_string(v));
      r.data["point"] = a.to_string();
      r.data["value"] = v;
    } else if (name == "grk") {
      auto v = geometric_rank(phi);
      r.line("geometric rank: " + std::to_string(v));
      r.data["value"] = v;
    } else if (name == "imagedim") {
      auto v = image_closure_dimension(phi);
      r.line("image closure dimension: " + std::to_string(v));
      r.data["value"] = v;
    } else if (name == "classify") {
      detail::run_classify(r, p, detail::chosen_point(req, p));
    } else if (name == "quasiprepared") {
      auto v = is_quasi_prepared(phi);
      detail::report_verdict(r, "quasi_prepared", v);
      if (!v) r.status = ExitStatus::rejected;
    } else if (name == "lradapted") {
      auto a = detail::chosen_point(req, p);
      if (!p.filtration) throw domain_error("lradapted needs a filtration in the problem file");
      auto v = is_log_rank_adapted_at(phi, a, *p.filtration, p.target_stratum_ideal(), {opt.seed});
      r.data["point"] = a.to_string();
      detail::report_verdict(r, "log_rank_adapted", v);
      if (!v) r.status = ExitStatus::rejected;
    } else if (name == "blowup") {
      detail::run_blowup(r, req, p);
    } else if (name == "principalize") {
      detail::run_principalize(r, p, opt);
    } else if (name == "monomialize") {
      detail::run_monomialize(r, p, opt);
    } else if (name == "verify-monomial") {
      auto a = detail::chosen_point(req, p);
      auto m = is_monomial_morphism_at(phi, a);
      r.line("monomial at " + a.to_string() + ": " + (m ? "yes, exponent matrix " + detail::matrix_string(*m) : "no"));
      r.data["point"] = a.to_string();
      r.data["monomial"] = m.has_value();
      if (m) r.data["exponent_matrix"] = *m;
      else r.status = ExitStatus::rejected;
    } else {
      throw domain_error("unknown command '" + name + "'");
    }
  } catch (const error& e) {
    r = Report{};
    r.status = ExitStatus::input_error;
    r.data["command"] = req.name;
    r.data["error"] = e.what();
    r.line(std::string("error: ") + e.what());
  }
  return r;
}

}  // namespace logfit
