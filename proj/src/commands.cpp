#include "nichols_forge/commands.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <sstream>

#include "nichols_forge/dualize.hpp"
#include "nichols_forge/errors.hpp"
#include "nichols_forge/nichols.hpp"

namespace nf {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(RunReport& r) : r_(r), start_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& phase) {
    auto now = std::chrono::steady_clock::now();
    r_.timing.emplace_back(phase, std::chrono::duration<double>(now - start_).count());
    start_ = now;
  }

 private:
  RunReport& r_;
  std::chrono::steady_clock::time_point start_;
};

RunReport start(const std::string& command, const std::string& input) {
  RunReport r;
  r.command = command;
  r.input_digest = "sha256:" + sha256_hex(input);
  return r;
}

const char* yes(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::size_t> degree_dims(const HopfStructure& t) {
  std::vector<std::size_t> d;
  if (!t.grading) return d;
  for (int g : *t.grading) {
    if (g < 0) continue;
    if (static_cast<std::size_t>(g) >= d.size()) d.resize(static_cast<std::size_t>(g) + 1, 0);
    ++d[static_cast<std::size_t>(g)];
  }
  return d;
}

HopfStructure load_hopf(const std::string& text) { return hopf_from_json(parse_json_text(text, "structure file")); }

json error_json(const char* kind, const std::exception& e) { return {{"kind", kind}, {"message", e.what()}}; }

// Marks the run as a mathematical failure for errors that describe the input
// structure rather than the file.
template <class F>
void guarded(RunReport& r, F&& body) {
  try {
    body();
  } catch (const NotCcc& e) {
    r.status = 1;
    r.results["error"] = error_json("not-ccc", e);
  } catch (const NotGraded& e) {
    r.status = 1;
    r.results["error"] = error_json("not-graded", e);
  } catch (const InvalidFiltration& e) {
    r.status = 1;
    r.results["error"] = error_json("invalid-filtration", e);
  } catch (const NotFinite& e) {
    r.status = 1;
    r.results["error"] = error_json("not-finite", e);
  }
  if (r.results.contains("error")) r.table += "error: " + r.results["error"]["message"].get<std::string>() + "\n";
}

json filtration_checks_json(const FiltrationChecks& c) {
  return {{"exhaustive", c.exhaustive}, {"separated", c.separated},
          {"nested", c.nested},         {"multiplicative", c.multiplicative},
          {"comultiplicative", c.comultiplicative}, {"counit", c.counit},
          {"unit", c.unit},             {"antipode", c.antipode},
          {"all", c.all()}};
}

json structure_summary(const HopfStructure& t) {
  json iso = json::array();
  for (const auto& i : t.object.isotypes()) iso.push_back({{"label", i.label}, {"dim", i.dim}});
  return {{"dim", t.total_dim()}, {"isotypes", iso}, {"graded", t.grading.has_value()}};
}

std::string axiom_table(const AxiomReport& a) {
  std::ostringstream os;
  for (int i = 0; i < kAxiomCount; ++i) {
    char line[96];
    std::snprintf(line, sizeof line, "  %-15s %s", axiom_name(i), a.ok[i] ? "ok" : "FAIL");
    os << line;
    if (!a.ok[i] && !a.first_failure[i].empty()) os << "  (" << a.first_failure[i] << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

json RunReport::to_json(bool with_timing) const {
  json j = {{"command", command},
            {"input_digest", input_digest},
            {"status", status},
            {"results", results},
            {"warnings", warnings}};
  if (with_timing) {
    json t = json::array();
    for (const auto& [phase, sec] : timing) t.push_back({{"phase", phase}, {"seconds", sec}});
    j["timing"] = t;
  }
  return j;
}

FiltrationKind parse_filtration_kind(const std::string& s) {
  if (s == "radical") return FiltrationKind::Radical;
  if (s == "coradical") return FiltrationKind::Coradical;
  throw InvalidParameter("filtration must be 'radical' or 'coradical', got '" + s + "'");
}

json axioms_to_json(const AxiomReport& r) {
  json j = json::object();
  for (int i = 0; i < kAxiomCount; ++i) {
    json a = {{"ok", r.ok[i]}};
    if (!r.ok[i]) a["first_failure"] = r.first_failure[i];
    j[axiom_name(i)] = a;
  }
  return j;
}

json fusion_report_to_json(const FusionReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"ok", c.ok},
                      {"informational", c.informational},
                      {"checked", c.checked},
                      {"failures", c.failures}});
  return {{"checks", checks}, {"pass", r.pass()}};
}

RunReport cmd_nichols(const std::string& text, const NicholsOptions& o) {
  RunReport r = start("nichols", text);
  Stopwatch sw(r);
  BraidingInput in = braiding_from_json(parse_json_text(text, "braiding file"));
  if (o.max_degree < 2) throw InvalidParameter("--max-degree must be at least 2");
  NicholsReport n = nichols_compute(in.braiding, o.max_degree);
  sw.lap("engine");

  const bool finite = n.termination == Termination::Finite;
  json res;
  res["braiding"] = braiding_to_json(in.braiding);
  res["cutoff"] = n.cutoff;
  res["dims"] = n.dims;
  res["termination"] = to_string(n.termination);
  res["total"] = finite ? json(n.total) : json(nullptr);
  res["top_degree"] = finite ? json(n.top_degree) : json(nullptr);
  res["hilbert_series"] = hilbert_series(n);
  res["poincare_symmetric"] = finite ? json(poincare_symmetric(n)) : json(nullptr);
  json rel = json::array();
  for (const auto& s : n.relations) rel.push_back({{"iteration", s.iteration}, {"degree", s.degree}, {"dim", s.dim}});
  res["relations"] = rel;
  if (!finite) r.warnings.push_back("undetermined at cutoff " + std::to_string(n.cutoff));

  const std::size_t d = std::min(o.oracle_degree.value_or(o.max_degree), o.max_degree);
  json table = json::array();
  bool agree = true;
  std::ostringstream os;
  os << "degree  engine  oracle\n";
  for (std::size_t k = 0; k <= d; ++k) {
    json row = {{"degree", k}, {"engine", n.dims[k]}};
    if (!oracle_within_cutoff(in.braiding, k)) {
      row["oracle"] = nullptr;
      row["agree"] = nullptr;
      r.warnings.push_back("oracle skipped at degree " + std::to_string(k) + " (over budget)");
      char line[64];
      std::snprintf(line, sizeof line, "%6zu  %6zu  %6s\n", k, n.dims[k], "-");
      os << line;
    } else {
      std::size_t orc = symmetrizer_rank(in.braiding, k);
      row["oracle"] = orc;
      row["agree"] = orc == n.dims[k];
      agree = agree && orc == n.dims[k];
      char line[64];
      std::snprintf(line, sizeof line, "%6zu  %6zu  %6zu%s\n", k, n.dims[k], orc, orc == n.dims[k] ? "" : "  MISMATCH");
      os << line;
    }
    table.push_back(row);
  }
  sw.lap("oracle");
  res["oracle"] = table;
  res["oracle_agrees"] = agree;
  if (!agree) r.status = 1;

  if (finite) {
    HopfStructure t = in.yd ? from_nichols(n, LineCategory::yetter_drinfeld(*in.yd), LineCategory::yd_letter_labels(*in.yd))
                            : from_nichols(n);
    r.emitted = hopf_to_json(t);
    sw.lap("structure");
  }
  r.results = res;

  std::ostringstream head;
  head << "termination: " << to_string(n.termination) << "\n";
  if (finite) head << "total: " << n.total << "  top degree: " << n.top_degree << "\n";
  head << "hilbert series: " << join(hilbert_series(n)) << "\n";
  r.table = head.str() + os.str();
  r.table += std::string("engine = oracle: ") + yes(agree) + "\n";
  return r;
}

RunReport cmd_verify(const std::string& text) {
  RunReport r = start("verify", text);
  Stopwatch sw(r);
  HopfStructure t = load_hopf(text);
  AxiomReport a = verify_axioms(t);
  sw.lap("axioms");
  bool conn = check_connected(t), coconn = check_coconnected(t);
  sw.lap("ccc");
  json res = structure_summary(t);
  res["axioms"] = axioms_to_json(a);
  res["connected"] = conn;
  res["coconnected"] = coconn;
  if (t.grading) res["respects_grading"] = respects_grading(t);
  res["hilbert_series"] = degree_dims(t);
  res["pass"] = a.pass() && conn && coconn;
  if (!res["pass"].get<bool>()) r.status = 1;
  r.results = res;
  std::ostringstream os;
  os << "dimension " << t.total_dim() << ", " << t.object.count() << " isotypes\n" << axiom_table(a);
  os << "  connected       " << (conn ? "ok" : "FAIL") << "\n  coconnected     " << (coconn ? "ok" : "FAIL") << "\n";
  r.table = os.str();
  return r;
}

RunReport cmd_gr(const std::string& text, FiltrationKind kind) {
  RunReport r = start(std::string("gr ") + to_string(kind), text);
  Stopwatch sw(r);
  HopfStructure t = load_hopf(text);
  r.results["filtration"] = to_string(kind);
  r.results["input"] = structure_summary(t);
  guarded(r, [&] {
    require_ccc(t);
    HopfFiltration f = kind == FiltrationKind::Radical ? radical_filtration(t) : coradical_filtration(t);
    FiltrationChecks c = check_filtration(t, f);
    sw.lap("filtration");
    HopfStructure gr = associated_graded(t, f);
    sw.lap("associated graded");
    AxiomReport a = verify_axioms(gr);
    bool conn = check_connected(gr), coconn = check_coconnected(gr), resp = respects_grading(gr);
    sw.lap("verify");
    json res = r.results;
    res["lo"] = f.lo;
    res["hi"] = f.hi;
    res["dims"] = f.dims();
    res["checks"] = filtration_checks_json(c);
    res["graded"] = {{"axioms", axioms_to_json(a)},
                     {"pass", a.pass()},
                     {"connected", conn},
                     {"coconnected", coconn},
                     {"respects_grading", resp},
                     {"hilbert_series", degree_dims(gr)}};
    json iso = nullptr;
    std::string note;
    try {
      IsoSearchStats stats;
      auto w = graded_iso_search(gr, t, &stats);
      iso = w.has_value();
      if (!w && stats.truncated) r.warnings.push_back("isomorphism search truncated");
    } catch (const NotGraded& e) {
      note = e.what();
    }
    res["isomorphic_to_input"] = iso;
    if (!note.empty()) res["iso_note"] = note;
    sw.lap("iso search");
    r.results = res;
    if (!c.all() || !a.pass() || !conn || !coconn || !resp) r.status = 1;
    r.emitted = hopf_to_json(gr);

    std::ostringstream os;
    os << to_string(kind) << " filtration on [" << f.lo << ", " << f.hi << "], dims " << join(f.dims()) << "\n";
    os << "filtration conditions: " << (c.all() ? "ok" : "FAIL") << "\n";
    os << "associated graded, hilbert series " << join(degree_dims(gr)) << "\n" << axiom_table(a);
    os << "  connected       " << (conn ? "ok" : "FAIL") << "\n  coconnected     " << (coconn ? "ok" : "FAIL") << "\n";
    os << "isomorphic to input: " << (iso.is_null() ? "n/a" : yes(iso.get<bool>())) << "\n";
    r.table = os.str();
  });
  return r;
}

RunReport cmd_degenerate(const std::string& text, FiltrationKind kind, const std::vector<Scalar>& lambdas) {
  RunReport r = start(std::string("degenerate ") + to_string(kind), text);
  Stopwatch sw(r);
  for (const auto& l : lambdas)
    if (l.is_zero()) throw InvalidParameter("λ samples must be nonzero");
  HopfStructure t = load_hopf(text);
  r.results["filtration"] = to_string(kind);
  json lam = json::array();
  for (const auto& l : lambdas) lam.push_back(scalar_to_json(l));
  r.results["lambdas"] = lam;
  guarded(r, [&] {
    require_ccc(t);
    HopfFiltration f = kind == FiltrationKind::Radical ? radical_filtration(t) : coradical_filtration(t);
    GradingSplit s = grading_split(t, f);
    ExponentTable tab = exponent_table(t, s);
    sw.lap("exponents");
    json ex = json::object();
    for (const auto& [name, row] : tab.counts) {
      json m = json::array();
      for (const auto& [e, n] : row) m.push_back({{"exponent", e}, {"entries", n}});
      ex[name] = m;
    }
    r.results["exponents"] = ex;
    r.results["min_exponent"] = tab.min_exponent;
    r.results["non_negative"] = tab.non_negative();
    std::ostringstream os;
    os << "λ-exponents (" << to_string(kind) << "):\n";
    for (const auto& [name, row] : tab.counts) {
      os << "  " << name << ":";
      for (const auto& [e, n] : row) os << " " << e << "x" << n;
      os << "\n";
    }
    if (!tab.non_negative()) {
      r.status = 1;
      os << "negative exponent, no limit\n";
      r.table = os.str();
      return;
    }
    HopfStructure lim = degenerate_limit(t, s);
    sw.lap("limit");
    HopfStructure gr = associated_graded(t, f);
    bool same = lim == gr;
    AxiomReport a = verify_axioms(lim);
    PathReport p = primitive_dims_along_path(t, s, lambdas);
    sw.lap("path");
    r.results["path_dims"] = p.dims;
    r.results["limit_dim"] = p.limit_dim;
    r.results["constant"] = p.constant();
    r.results["semicontinuous"] = p.semicontinuous();
    r.results["limit_equals_associated_graded"] = same;
    r.results["limit_axioms_pass"] = a.pass();
    if (!same || !a.pass() || !p.constant() || !p.semicontinuous()) r.status = 1;
    r.emitted = hopf_to_json(lim);
    os << "dim P along λ: " << join(p.dims) << ", at the limit " << p.limit_dim << "\n";
    os << "limit = associated graded: " << yes(same) << "\n";
    os << "limit axioms: " << (a.pass() ? "ok" : "FAIL") << "\n";
    r.table = os.str();
  });
  return r;
}

RunReport cmd_is_nichols(const std::string& text) {
  RunReport r = start("is-nichols", text);
  Stopwatch sw(r);
  HopfStructure t = load_hopf(text);
  AxiomReport a = verify_axioms(t);
  if (!a.pass()) {
    r.status = 1;
    r.results["axioms"] = axioms_to_json(a);
    r.results["verdict"] = "invalid-structure";
    r.table = "structure fails the axioms\n" + axiom_table(a);
    return r;
  }
  guarded(r, [&] {
    PairingReport p = pairing_report(t);
    sw.lap("pairing");
    GenerationReport g = generation_check(t);
    sw.lap("generation");
    GragrcReport c = gragrc_check(t);
    sw.lap("gragrc");
    r.results["pairing"] = {{"dim_p", p.dim_p},
                            {"dim_p_dual", p.dim_p_dual},
                            {"rank", p.rank},
                            {"matrix", matrix_to_json(p.pairing)},
                            {"nichols", p.nichols}};
    r.results["generation"] = {{"generated", g.generated}, {"dual_generated", g.dual_generated}, {"nichols", g.nichols()}};
    r.results["gragrc"] = {{"nichols", c.nichols}, {"determinate", c.nichols}, {"note", c.note}};
    // gragrc only decides in the positive direction.
    bool agree = p.nichols == g.nichols() && (!c.nichols || p.nichols);
    r.results["agree"] = agree;
    r.results["verdict"] = p.nichols ? "nichols" : "not-nichols";
    if (!agree || !p.nichols) r.status = 1;
    std::ostringstream os;
    os << "pairing     rank " << p.rank << " on " << p.dim_p_dual << " x " << p.dim_p << "  nichols: " << yes(p.nichols) << "\n";
    os << "generation  generated: " << yes(g.generated) << "  dual generated: " << yes(g.dual_generated) << "\n";
    os << "gragrc      " << (c.nichols ? "nichols" : "inconclusive") << " (" << c.note << ")\n";
    os << "verdict: " << r.results["verdict"].get<std::string>() << (agree ? "" : ", criteria DISAGREE") << "\n";
    r.table = os.str();
  });
  return r;
}

namespace {

void fill_fusion(RunReport& r, const FusionData& f) {
  FusionReport rep = verify_fusion(f);
  r.results = fusion_report_to_json(rep);
  r.results["simples"] = f.s;
  if (!rep.pass()) r.status = 1;
  std::ostringstream os;
  os << f.s << " simples\n";
  for (const auto& c : rep.checks) {
    char line[96];
    std::snprintf(line, sizeof line, "  %-18s %-5s %8zu checked%s\n", c.name.c_str(), c.ok ? "ok" : "FAIL", c.checked,
                  c.informational ? "  (informational)" : "");
    os << line;
    for (const auto& w : c.failures) os << "    " << w << "\n";
  }
  r.table = os.str();
}

}  // namespace

RunReport cmd_fusion_verify(const std::string& text) {
  RunReport r = start("fusion-verify", text);
  Stopwatch sw(r);
  FusionData f = fusion_from_json(parse_json_text(text, "fusion file"));
  fill_fusion(r, f);
  sw.lap("verify");
  return r;
}

RunReport cmd_fusion_gen(const std::vector<int>& group) {
  std::string joined;
  for (std::size_t i = 0; i < group.size(); ++i) joined += (i ? "," : "") + std::to_string(group[i]);
  for (int d : group)
    if (d < 1) throw InvalidParameter("cyclic factors must be positive");
  RunReport r = start("fusion-gen", "group=" + joined);
  Stopwatch sw(r);
  FusionData f = pointed_center_data(group);
  sw.lap("generate");
  fill_fusion(r, f);
  r.results["group"] = group;
  sw.lap("verify");
  r.emitted = fusion_to_json(f);
  return r;
}

}  // namespace nf
