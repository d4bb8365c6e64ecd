#include "shm/manifest.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace shm {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ManifestError(path, msg);
}

long get_long(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

Rational parse_rational(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [numerator, denominator]");
  long num = get_long(j[0], path + "[0]");
  long den = get_long(j[1], path + "[1]");
  if (den == 0) fail(path, "zero denominator");
  return make_rational(num, den);
}

Scalar parse_scalar(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [[re_num,re_den],[im_num,im_den]]");
  return Scalar(parse_rational(j[0], path + "[0]"), parse_rational(j[1], path + "[1]"));
}

// Variable names: z1..z6 / zb1..zb6 (or w1../wb1.. for chart coordinates),
// plus t. N is internal to the blow-up expansion and rejected in input.
int parse_var_slot(const std::string& name, int dim, bool allow_t, char letter,
                   const std::string& path) {
  if (name == "t") {
    if (!allow_t) fail(path, "variable t is not allowed in this section");
    return kSlotT;
  }
  if (name == "N") fail(path, "variable N is internal to the blow-up expansion");
  std::string base(1, letter);
  bool bar = false;
  std::string rest;
  if (name.rfind(base + "b", 0) == 0) {
    bar = true;
    rest = name.substr(2);
  } else if (name.rfind(base, 0) == 0) {
    rest = name.substr(1);
  } else {
    fail(path, "unknown variable '" + name + "'");
  }
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
    fail(path, "malformed variable '" + name + "'");
  int idx = std::stoi(rest);
  if (idx < 1 || idx > dim) fail(path, "variable index out of range 1.." + std::to_string(dim));
  return bar ? slot_zbar(idx - 1) : slot_z(idx - 1);
}

Monomial parse_monomial(const json& j, int dim, bool allow_t, char letter,
                        const std::string& path) {
  Monomial m;
  if (j.is_null()) return m;
  if (!j.is_object()) fail(path, "expected an object {variable: exponent}");
  for (auto it = j.begin(); it != j.end(); ++it) {
    int slot = parse_var_slot(it.key(), dim, allow_t, letter, path + "." + it.key());
    long e = get_long(it.value(), path + "." + it.key());
    if (e < 1 || e > 60) fail(path + "." + it.key(), "exponent out of range");
    m.set_exp(slot, m.exp(slot) + static_cast<int>(e));
  }
  return m;
}

std::uint32_t parse_index_list(const json& j, int dim, const std::string& path) {
  if (j.is_null()) return 0;
  if (!j.is_array()) fail(path, "expected an array of 1-based indices");
  std::uint32_t mask = 0;
  int prev = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    long v = get_long(j[i], path + "[" + std::to_string(i) + "]");
    if (v < 1 || v > dim)
      fail(path + "[" + std::to_string(i) + "]",
           "index out of range 1.." + std::to_string(dim));
    if (v <= prev)
      fail(path + "[" + std::to_string(i) + "]", "index list must be strictly increasing");
    prev = static_cast<int>(v);
    mask |= 1u << (v - 1);
  }
  return mask;
}

Poly parse_poly_terms(const json& j, int dim, int trunc, bool allow_t, char letter,
                      const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of terms");
  Poly p(trunc);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = path + "[" + std::to_string(i) + "]";
    const json& term = j[i];
    if (!term.is_object()) fail(tp, "expected a term object");
    if (!term.contains("coeff")) fail(tp + ".coeff", "missing coefficient");
    Scalar c = parse_scalar(term["coeff"], tp + ".coeff");
    Monomial m = parse_monomial(term.contains("monomial") ? term["monomial"] : json(), dim,
                                allow_t, letter, tp + ".monomial");
    if (m.t_degree() > trunc) fail(tp + ".monomial.t", "t exponent exceeds truncation_order");
    p += Poly::term(m, c, trunc);
  }
  return p;
}

BiForm parse_form(const json& j, int dim, int trunc, bool allow_t, char letter,
                  const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of form terms");
  BiForm f(dim, trunc);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = path + "[" + std::to_string(i) + "]";
    const json& term = j[i];
    if (!term.is_object()) fail(tp, "expected a form term object");
    FormMonomial m{parse_index_list(term.contains("holo") ? term["holo"] : json(), dim,
                                    tp + ".holo"),
                   parse_index_list(term.contains("anti") ? term["anti"] : json(), dim,
                                    tp + ".anti")};
    if (!term.contains("coeff")) fail(tp + ".coeff", "missing coefficient");
    Scalar c = parse_scalar(term["coeff"], tp + ".coeff");
    Monomial mono = parse_monomial(term.contains("monomial") ? term["monomial"] : json(), dim,
                                   allow_t, letter, tp + ".monomial");
    if (mono.t_degree() > trunc) fail(tp + ".monomial.t", "t exponent exceeds truncation_order");
    f.add_term(m, Poly::term(mono, c, trunc));
  }
  return f;
}

Point parse_point(const json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(path, "expected " + std::to_string(dim) + " coordinates");
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i)
    p.coords.push_back(parse_scalar(j[i], path + "[" + std::to_string(i) + "]"));
  return p;
}

std::vector<Point> parse_points(const json& j, int dim, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of points");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < j.size(); ++i)
    pts.push_back(parse_point(j[i], dim, path + "[" + std::to_string(i) + "]"));
  return pts;
}

VecForm parse_deformation(const json& j, int dim, int trunc, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of vector form terms");
  std::vector<BiForm> comps(static_cast<std::size_t>(dim), BiForm(dim, trunc));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = path + "[" + std::to_string(i) + "]";
    const json& term = j[i];
    if (!term.is_object()) fail(tp, "expected a term object");
    if (!term.contains("target")) fail(tp + ".target", "missing target index");
    long target = get_long(term["target"], tp + ".target");
    if (target < 1 || target > dim)
      fail(tp + ".target", "target out of range 1.." + std::to_string(dim));
    std::uint32_t holo = parse_index_list(term.contains("holo") ? term["holo"] : json(), dim,
                                          tp + ".holo");
    if (holo != 0) fail(tp + ".holo", "deformation components are (0,1) forms");
    std::uint32_t anti =
        parse_index_list(term.contains("anti") ? term["anti"] : json(), dim, tp + ".anti");
    if (std::popcount(anti) != 1) fail(tp + ".anti", "deformation components are (0,1) forms");
    if (!term.contains("coeff")) fail(tp + ".coeff", "missing coefficient");
    Scalar c = parse_scalar(term["coeff"], tp + ".coeff");
    Monomial mono = parse_monomial(term.contains("monomial") ? term["monomial"] : json(), dim,
                                   true, 'z', tp + ".monomial");
    if (mono.t_degree() > trunc) fail(tp + ".monomial.t", "t exponent exceeds truncation_order");
    comps[static_cast<std::size_t>(target - 1)].add_term(FormMonomial{0, anti},
                                                         Poly::term(mono, c, trunc));
  }
  return make_vec_form(dim, 1, std::move(comps));
}

}  // namespace

Manifest parse_manifest_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("", "manifest must be a JSON object");
  if (!j.contains("format") || get_long(j["format"], "format") != 1)
    fail("format", "missing or unsupported format (expected 1)");
  Manifest m;
  if (!j.contains("dim")) fail("dim", "missing dimension");
  long dim = get_long(j["dim"], "dim");
  if (dim < 1 || dim > kMaxDim) fail("dim", "dimension out of range 1..6");
  m.dim = static_cast<int>(dim);
  if (j.contains("truncation_order")) {
    long t = get_long(j["truncation_order"], "truncation_order");
    if (t < 0 || t > 8) fail("truncation_order", "expected 0..8");
    m.truncation_order = static_cast<int>(t);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      fail("seed", "expected an integer");
    m.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("metric"))
    m.metric = parse_form(j["metric"], m.dim, m.truncation_order, true, 'z', "metric");
  if (j.contains("sample_points"))
    m.sample_points = parse_points(j["sample_points"], m.dim, "sample_points");
  if (j.contains("deformation"))
    m.deformation =
        parse_deformation(j["deformation"], m.dim, m.truncation_order, "deformation");
  if (j.contains("deformation_functions")) {
    const json& fns = j["deformation_functions"];
    if (!fns.is_array()) fail("deformation_functions", "expected an array of polynomials");
    for (std::size_t i = 0; i < fns.size(); ++i)
      m.deformation_functions.push_back(
          parse_poly_terms(fns[i], m.dim, m.truncation_order, true, 'z',
                           "deformation_functions[" + std::to_string(i) + "]"));
  }
  if (j.contains("blowup")) {
    const json& b = j["blowup"];
    if (!b.is_object()) fail("blowup", "expected an object");
    BlowupSection sec;
    if (!b.contains("omega")) fail("blowup.omega", "missing omega");
    sec.omega = parse_form(b["omega"], m.dim, m.truncation_order, false, 'z', "blowup.omega");
    if (!b.contains("k")) fail("blowup.k", "missing k");
    long k = get_long(b["k"], "blowup.k");
    if (k < 1 || k >= dim) fail("blowup.k", "k out of range 1..dim-1");
    sec.k = static_cast<int>(k);
    int source_dim = m.dim;
    if (b.contains("chart")) {
      const json& ch = b["chart"];
      if (!ch.is_object()) fail("blowup.chart", "expected an object");
      if (!ch.contains("source_dim")) fail("blowup.chart.source_dim", "missing source_dim");
      long sd = get_long(ch["source_dim"], "blowup.chart.source_dim");
      if (sd < 1 || sd > kMaxDim) fail("blowup.chart.source_dim", "out of range 1..6");
      source_dim = static_cast<int>(sd);
      if (!ch.contains("components") || !ch["components"].is_array() ||
          static_cast<int>(ch["components"].size()) != m.dim)
        fail("blowup.chart.components", "expected one component per target coordinate");
      std::vector<Poly> comps;
      for (std::size_t i = 0; i < ch["components"].size(); ++i)
        comps.push_back(parse_poly_terms(
            ch["components"][i], source_dim, m.truncation_order, false, 'w',
            "blowup.chart.components[" + std::to_string(i) + "]"));
      try {
        sec.chart = make_holo_map(source_dim, m.dim, std::move(comps));
      } catch (const std::invalid_argument& e) {
        fail("blowup.chart", e.what());
      }
    }
    if (b.contains("chart_omega"))
      sec.chart_omega = parse_form(b["chart_omega"], source_dim, m.truncation_order, false, 'w',
                                   "blowup.chart_omega");
    if (b.contains("points")) sec.points = parse_points(b["points"], source_dim, "blowup.points");
    if (b.contains("threshold_cap")) {
      long cap = get_long(b["threshold_cap"], "blowup.threshold_cap");
      if (cap < 0 || cap > 100000) fail("blowup.threshold_cap", "expected 0..100000");
      sec.threshold_cap = static_cast<int>(cap);
    }
    m.blowup = std::move(sec);
  }
  return m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("", "cannot open manifest '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest_text(ss.str());
}

// --- reports -----------------------------------------------------------------

void Report::add(ReportEntry e) { entries.push_back(std::move(e)); }

void Report::add_verdict(const Verdict& v, const std::string& holo_name) {
  ReportEntry e;
  e.name = v.name;
  e.holds = v.holds;
  if (!v.holds) e.witness = to_string(v.witness, holo_name);
  entries.push_back(std::move(e));
}

std::string Report::text() const {
  std::string out = "command: " + command + "\n";
  out += "seed: " + std::to_string(seed) + "\n";
  for (const auto& e : entries) {
    out += e.holds ? "[ ok ] " : "[FAIL] ";
    out += e.name;
    if (!e.value.empty()) out += "  value: " + e.value;
    if (!e.witness.empty()) out += "  witness: " + e.witness;
    out += "\n";
  }
  out += "exit: " + std::to_string(exit_code) + "\n";
  return out;
}

std::string Report::json_text() const {
  ordered_json j;
  j["format"] = 1;
  j["command"] = command;
  j["seed"] = seed;
  ordered_json arr = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json je;
    je["name"] = e.name;
    je["holds"] = e.holds;
    if (!e.witness.empty()) je["witness"] = e.witness;
    if (!e.value.empty()) je["value"] = e.value;
    arr.push_back(std::move(je));
  }
  j["entries"] = std::move(arr);
  j["exit"] = exit_code;
  return j.dump(2) + "\n";
}

std::string vec_form_text(const VecForm& v, const std::string& holo_name) {
  std::string out;
  for (int i = 0; i < v.dim; ++i) {
    const BiForm& c = v.comps[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " ; ";
    out += "[" + to_string(c, holo_name) + "] d/d" + holo_name + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

// --- commands ----------------------------------------------------------------

Report cmd_check(const Manifest& m, const std::string& command_echo) {
  if (!m.metric) throw ManifestError("metric", "check needs a metric");
  if (m.metric->uses_t())
    throw ManifestError("metric", "check expects a t-free metric; use the deform command");
  MetricForm mf = make_metric_form(*m.metric, m.sample_points);
  Report rep;
  rep.command = command_echo;
  rep.seed = m.seed;
  ConditionReport cr = classify(mf);
  for (const auto& v : cr.verdicts) rep.add_verdict(v);
  rep.exit_code = cr.all_hold() ? 0 : 1;
  return rep;
}

Report cmd_deform(const Manifest& m, const std::string& command_echo) {
  if (!m.metric) throw ManifestError("metric", "deform needs a metric");
  if (!m.deformation) throw ManifestError("deformation", "deform needs a deformation family");
  if (m.truncation_order < 1)
    throw ManifestError("truncation_order", "deform needs truncation_order >= 1");
  MetricFamily family = make_metric_family(*m.metric, m.sample_points);
  DeformationFamily def = make_deformation_family(*m.deformation);
  Report rep;
  rep.command = command_echo;
  rep.seed = m.seed;
  bool mismatch = false;

  VecForm mc = mc_residual(def);
  ReportEntry mce{"maurer_cartan", mc.is_zero(), "", ""};
  if (!mce.holds) mce.witness = vec_form_text(mc);
  rep.add(std::move(mce));

  for (std::size_t i = 0; i < m.deformation_functions.size(); ++i) {
    const Poly& fn = m.deformation_functions[i];
    BiForm res = holomorphy_residual(def, fn);
    BiForm dressed = deformed_delbar_function(def, fn);
    // dbar_t f vanishes exactly when the holomorphy residual does
    if (res.is_zero() != dressed.is_zero()) {
      mismatch = true;
      rep.add(ReportEntry{"oracle_mismatch[holomorphic_" + std::to_string(i + 1) + "]", false,
                          to_string(res) + "  vs dressed: " + to_string(dressed), ""});
      continue;
    }
    ReportEntry e{"holomorphic[" + std::to_string(i + 1) + "]", res.is_zero(), "", ""};
    if (!e.holds) e.witness = to_string(res);
    rep.add(std::move(e));
  }

  for (int k = 1; k <= m.dim - 1; ++k) {
    BiForm res = first_order_residual(family.base, def, family, k);
    BiForm oracle = order1_jet_oracle(family.base, def, family, k);
    if (res != oracle) {
      mismatch = true;
      rep.add(ReportEntry{"oracle_mismatch[k=" + std::to_string(k) + "]", false,
                          "residual: " + to_string(res) + "  oracle: " + to_string(oracle), ""});
      continue;
    }
    ReportEntry e{"stability_order1[k=" + std::to_string(k) + "]", res.is_zero(), "", ""};
    if (!e.holds) e.witness = to_string(res);
    rep.add(std::move(e));
  }

  bool any_fail = false;
  for (const auto& e : rep.entries) any_fail |= !e.holds;
  rep.exit_code = mismatch ? 3 : (any_fail ? 1 : 0);
  return rep;
}

Report cmd_blowup(const Manifest& m, const std::string& command_echo) {
  if (!m.metric) throw ManifestError("metric", "blowup needs a metric");
  if (!m.blowup) throw ManifestError("blowup", "blowup needs a blowup section");
  if (m.metric->uses_t()) throw ManifestError("metric", "blowup expects a t-free metric");
  MetricForm F = make_metric_form(*m.metric, m.sample_points);
  const BlowupSection& sec = *m.blowup;
  BlowupInstance inst = make_blowup_instance(F, sec.omega, sec.k);

  Report rep;
  rep.command = command_echo;
  rep.seed = m.seed;

  Verdict hyp = check_k_special(F, sec.k);
  hyp.name = "hypothesis_k_special[k=" + std::to_string(sec.k) + "]";
  rep.add_verdict(hyp);

  BiForm residual = binomial_expansion_residual(inst);
  ReportEntry bin{"binomial_residual", residual.is_zero(), "", ""};
  if (!bin.holds) bin.witness = to_string(residual);
  rep.add(std::move(bin));

  if (hyp.holds) rep.add_verdict(k_special_preserved(inst));

  if (sec.chart) {
    BiForm pulled = blowup_chart_pullback(F.omega, *sec.chart);
    bool real11 = pulled.is_pure_bidegree(1, 1) && conj(pulled) == pulled;
    rep.add(ReportEntry{"pullback_real_11", real11, real11 ? "" : to_string(pulled, "w"), ""});
    if (!sec.points.empty()) {
      BiForm chart_omega = sec.chart_omega
                               ? *sec.chart_omega
                               : [&] {
                                   BiForm flat(sec.chart->source_dim, m.truncation_order);
                                   for (int i = 0; i < sec.chart->source_dim; ++i)
                                     flat.add_term(FormMonomial{1u << i, 1u << i},
                                                   Poly::constant(Scalar::i(),
                                                                  m.truncation_order));
                                   return flat;
                                 }();
      auto n0 = positivity_threshold(pulled, chart_omega, sec.points, sec.threshold_cap);
      ReportEntry thr{"positivity_threshold", n0.has_value(), "", ""};
      if (n0)
        thr.value = std::to_string(*n0);
      else
        thr.witness = "no N0 up to cap " + std::to_string(sec.threshold_cap);
      rep.add(std::move(thr));
    }
  }

  bool any_fail = false;
  for (const auto& e : rep.entries) any_fail |= !e.holds;
  rep.exit_code = any_fail ? 1 : 0;
  return rep;
}

Report cmd_identities(const SuiteOptions& o, const std::string& command_echo) {
  Report rep;
  rep.command = command_echo;
  rep.seed = o.seed;
  std::vector<IdentityResult> results = run_identity_suite(o);
  for (const auto& r : results) {
    ReportEntry e{r.name, r.pass(), "", "cases=" + std::to_string(r.cases)};
    if (!r.pass()) {
      e.witness = std::to_string(r.failures) + " failing";
      if (!r.note.empty()) e.witness += ", first: " + r.note;
    }
    rep.add(std::move(e));
  }
  bool any_fail = false;
  for (const auto& e : rep.entries) any_fail |= !e.holds;
  rep.exit_code = any_fail ? 1 : 0;
  return rep;
}

}  // namespace shm
