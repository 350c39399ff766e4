#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "pogroup/json_io.hpp"

using namespace pogroup;

namespace {

enum Exit { Ok = 0, Counterexample = 1, Inconclusive = 2, InputError = 3 };

struct Options {
  std::string format = "text", out, input, suite = "tfae", complex = "Ahat", variant = "std", element;
  unsigned seed = 1;
  size_t trials = 200, maxDepth = 16;
  long budgetCoeff = 64;
  int budgetLevel = 12, degree = 1;
  bool noSelfSimilarity = false, mutate = false, noTiming = false;

  Budget budget() const {
    Budget b;
    b.maxCoefficientSum = budgetCoeff;
    b.maxFamilyLevel = budgetLevel;
    b.maxDepth = int(maxDepth);
    return b;
  }
};

std::string lastDigest;  // of the most recently loaded input

struct Loaded {
  GroupSpecDocument doc;
  std::string digest;
  const CorpusEntry *entry = nullptr;
};

std::vector<CorpusEntry> &corpus_cache() {
  static std::vector<CorpusEntry> c = corpus();
  return c;
}

std::vector<Vec> corpus_probes(const CorpusEntry &e) {
  std::vector<Vec> p;
  for (auto &[x, n] : e.h1Orders) p.push_back(x);
  return p;
}

// a JSON file path, or corpus:NAME
Loaded load(const std::string &input) {
  Loaded L;
  if (input.rfind("corpus:", 0) == 0) {
    std::string name = input.substr(7);
    for (auto &e : corpus_cache())
      if (e.name == name) {
        L.entry = &e;
        L.doc.group = e.group;
        L.doc.name = e.name;
        L.doc.probes = corpus_probes(e);
        L.digest = digest(group_document_json(e.group, e.name, L.doc.probes).dump());
        lastDigest = L.digest;
        return L;
      }
    throw PoError("SchemaError", "no corpus entry named '" + name + "'");
  }
  std::ifstream f(input);
  if (!f) throw PoError("SchemaError", "cannot read " + input);
  std::stringstream ss;
  ss << f.rdbuf();
  Json j;
  try {
    j = Json::parse(ss.str());
  } catch (const Json::exception &e) {
    throw PoError("SchemaError", std::string("malformed JSON: ") + e.what());
  }
  try {
    L.doc = parse_group_document(j);
  } catch (const Json::exception &e) {
    throw PoError("SchemaError", std::string("bad field type: ") + e.what());
  }
  L.digest = digest(j.dump());
  lastDigest = L.digest;
  return L;
}

Vec parse_element(const std::string &s, size_t dim) {
  Json a = Json::array();
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) a.push_back(tok);
  return json_detail::parse_vec(a, dim);
}

std::string mat_text(const Mat &m) {
  std::string s;
  for (auto &v : m) s += (s.empty() ? "" : " ") + to_string(v);
  return "[" + s + "]";
}

Json report_base(const std::string &command, const Options &o, const std::string &dig) {
  Json r;
  r["command"] = command;
  r["input"] = o.input;
  r["inputDigest"] = dig;
  r["budgets"] = {{"coefficient", o.budgetCoeff}, {"level", o.budgetLevel}, {"maxDepth", o.maxDepth}};
  r["seed"] = o.seed;
  return r;
}

// ---- commands: each fills `res` and a text rendering, returns an exit code

int cmd_analyze(const Options &o, Json &res, std::string &text) {
  auto L = load(o.input);
  const PoGroup &G = L.doc.group;
  Budget b = o.budget();
  std::ostringstream t;
  res["presentation"] = G.presentation();
  res["provenance"] = G.provenance;
  res["directed"] = G.directed;
  t << "group        " << G.presentation() << "\n";
  auto at = atoms(G, b);
  if (at) {
    res["atoms"] = json_detail::mat_json(*at);
    t << "atoms        " << mat_text(*at) << "\n";
  } else {
    res["atoms"] = nullptr;
    t << "atoms        unknown\n";
  }
  int code = Ok;
  try {
    Module A = atomic_subgroup(G, b), AA = almost_atomic_subgroup(G, b), Q = quasi_atomic_subgroup(G, b);
    auto oi = is_o_ideal(Q, G, b);
    res["A"] = A.str();
    res["AA"] = AA.str();
    res["Q"] = Q.str();
    res["QisOIdeal"] = tribool_json(oi);
    t << "A(G)         " << A.str() << "\nAA(G)        " << AA.str() << "\nQ(G)         " << Q.str()
      << "\nQ o-ideal    " << oi.str() << "\n";
  } catch (const PoError &e) {
    res["subgroups"] = e.what();
    t << "subgroups    " << e.what() << "\n";
    code = Inconclusive;
  }
  if (G.directed) {
    auto c = classify(qa_sequence(G, o.maxDepth, b, !o.noSelfSimilarity));
    res["classification"] = c.str();
    t << "class        " << c.str() << "\n";
  } else {
    res["classification"] = "not directed";
    t << "class        not directed\n";
  }
  text = t.str();
  return code;
}

int cmd_sequence(const Options &o, Json &res, std::string &text) {
  auto L = load(o.input);
  auto r = qa_sequence(L.doc.group, o.maxDepth, o.budget(), !o.noSelfSimilarity);
  auto c = classify(r);
  std::ostringstream t;
  Json stages = Json::array();
  for (size_t i = 0; i < r.groups.size(); ++i) {
    Json s = {{"stage", i}, {"group", r.groups[i].presentation()}};
    if (i < r.qsubgroups.size()) s["Q"] = r.qsubgroups[i].str();
    stages.push_back(s);
    t << "G_" << i << "  " << r.groups[i].presentation();
    if (i < r.qsubgroups.size()) t << "   Q = " << r.qsubgroups[i].str();
    t << "\n";
  }
  res["stages"] = stages;
  res["haltReason"] = halt_name(r.haltReason);
  res["classification"] = c.str();
  res["certificate"] = c.certificate;
  t << "halt  " << halt_name(r.haltReason) << "\nclass " << c.str() << "\n";
  if (!c.certificate.empty()) t << "cert  " << c.certificate << "\n";
  text = t.str();
  return c.kind == Classification::Kind::Undetermined ? Inconclusive : Ok;
}

int cmd_cohomology(const Options &o, Json &res, std::string &text) {
  auto L = load(o.input);
  auto kind = parse_complex_kind(o.complex);
  if (!kind) throw PoError("SchemaError", "unknown complex '" + o.complex + "'");
  if (o.variant != "std" && o.variant != "inflate" && o.variant != "collapse")
    throw PoError("SchemaError", "unknown variant '" + o.variant + "'");
  Budget b = o.budget();
  std::shared_ptr<Resolution> r;
  try {
    r = std::make_shared<Resolution>(resolve(L.doc.group, size_t(std::max(o.degree, 0)) + 1, b));
  } catch (const PoError &e) {
    res["error"] = e.what();
    text = std::string("inconclusive: ") + e.what() + "\n";
    return Inconclusive;
  }
  auto c = build_complex(r, *kind);
  CohomologyGroup h;
  std::string note;
  if (o.variant == "std") {
    h = cohomology(c, o.degree);
  } else {
    auto oc = o_cohomology(c, o.degree, o.variant == "inflate" ? OVariant::Inflate : OVariant::Collapse, b);
    h = oc.group;
    note = oc.note;
  }
  std::ostringstream t;
  res["complex"] = o.complex;
  res["degree"] = o.degree;
  res["variant"] = o.variant;
  res["group"] = h.trivial() ? "0" : h.str();
  res["form"] = h.form_name();
  res["numerator"] = h.numerator.str();
  res["denominator"] = h.denominator.str();
  if (!note.empty()) res["note"] = note;
  t << "H^" << o.degree << "(" << o.complex << ", " << o.variant << ") = " << (h.trivial() ? "0" : h.str()) << "\n";
  Json probes = Json::array();
  for (auto &p : L.doc.probes) {
    if (p.size() != h.numerator.dim()) continue;
    try {
      long n = cohomology_element_order(p, h);
      probes.push_back({{"element", json_detail::vec_json(p)}, {"order", n}});
      t << "  order of " << to_string(p) << " = " << n << "\n";
    } catch (const PoError &e) {
      probes.push_back({{"element", json_detail::vec_json(p)}, {"order", nullptr}, {"note", e.what()}});
    }
  }
  res["probes"] = probes;
  text = t.str();
  return Ok;
}

int cmd_classify_element(const Options &o, Json &res, std::string &text) {
  auto L = load(o.input);
  Vec x = parse_element(o.element, L.doc.group.dim());
  auto r = classify_element_detail(x, L.doc.group, o.budget());
  res["element"] = json_detail::vec_json(x);
  res["class"] = class_name(r.cls);
  res["witness"] = r.witness;
  text = to_string(x) + "  " + class_name(r.cls) + (r.witness.empty() ? "" : "  (" + r.witness + ")") + "\n";
  return r.cls == ElementClass::Unknown ? Inconclusive : Ok;
}

std::string suite_text(const SuiteReport &r, bool all) {
  std::ostringstream t;
  for (auto &c : r.checks)
    if (all || c.verdict != Verdict::Pass)
      t << verdict_name(c.verdict) << "  " << c.subject << "  " << c.check << "  " << c.detail << "\n";
  t << r.suite << ": " << r.count(Verdict::Pass) << " pass, " << r.count(Verdict::Fail) << " fail, "
    << r.count(Verdict::Unknown) << " unknown\n";
  return t.str();
}

int cmd_verify(const Options &o, Json &res, std::string &text) {
  Budget b = o.budget();
  SuiteReport r;
  if (o.suite == "tfae")
    r = tfae_suite(o.seed, o.trials, b);
  else if (o.suite == "sumprop")
    r = sumprop_suite(o.seed, o.trials, o.mutate, b);
  else if (o.suite == "structure")
    r = structure_suite(b);
  else if (o.suite == "les")
    r = les_suite(b);
  else if (o.suite == "corpus")
    r = run_corpus(corpus_cache(), b, o.maxDepth);
  else
    throw PoError("SchemaError", "unknown suite '" + o.suite + "'");
  res = suite_json(r);
  text = suite_text(r, false);
  return r.exit_code();
}

int cmd_corpus(const Options &o, Json &res, std::string &text) {
  auto r = run_corpus(corpus_cache(), o.budget(), o.maxDepth);
  res = suite_json(r);
  text = suite_text(r, true);
  return r.exit_code();
}

int cmd_export(const Options &o, Json &res, std::string &text) {
  Json docs = Json::array();
  for (auto &e : corpus_cache())
    if (o.input == "all" || o.input == e.name) docs.push_back(group_document_json(e.group, e.name, corpus_probes(e)));
  if (docs.empty()) throw PoError("SchemaError", "no corpus entry named '" + o.input + "'");
  res = docs.size() == 1 ? docs[0] : docs;
  text = res.dump(2) + "\n";
  return Ok;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"pogroup: exact computations with finitely presented po-groups"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App *s) {
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--out", o.out, "write the report to a file");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--budget-coeff", o.budgetCoeff, "coefficient-sum budget");
    s->add_option("--budget-level", o.budgetLevel, "geometric family level budget");
    s->add_option("--max-depth", o.maxDepth, "quotient sequence depth budget");
    s->add_flag("--no-timing", o.noTiming, "omit the timing field");
  };
  auto input = [&](CLI::App *s) { s->add_option("input", o.input, "group JSON file or corpus:NAME")->required(); };

  std::vector<std::pair<CLI::App *, int (*)(const Options &, Json &, std::string &)>> cmds;
  auto *an = app.add_subcommand("analyze", "atoms, distinguished subgroups, classification");
  common(an), input(an);
  an->add_flag("--no-self-similarity", o.noSelfSimilarity);
  cmds.push_back({an, cmd_analyze});
  auto *sq = app.add_subcommand("sequence", "quasi-atomic quotient sequence");
  common(sq), input(sq);
  sq->add_flag("--no-self-similarity", o.noSelfSimilarity, "disable self-similarity detection");
  cmds.push_back({sq, cmd_sequence});
  auto *co = app.add_subcommand("cohomology", "cohomology of a quotient-sequence complex");
  common(co), input(co);
  co->add_option("--complex", o.complex, "A, AA, Q, Ahat, AAhat, Qhat, AhatModQ, AAhatModQ, QhatModQ");
  co->add_option("--degree", o.degree, "cohomological degree");
  co->add_option("--variant", o.variant, "std, inflate or collapse");
  cmds.push_back({co, cmd_cohomology});
  auto *ce = app.add_subcommand("classify-element", "atomic / almost / quasi-atomic class of a positive element");
  common(ce), input(ce);
  ce->add_option("--element", o.element, "comma-separated rationals")->required();
  cmds.push_back({ce, cmd_classify_element});
  auto *ve = app.add_subcommand("verify", "property suites");
  common(ve);
  ve->add_option("--suite", o.suite, "tfae, sumprop, structure, les or corpus");
  ve->add_option("--trials", o.trials, "random trials");
  ve->add_flag("--mutate", o.mutate, "add a mutated projection as a negative control");
  cmds.push_back({ve, cmd_verify});
  auto *cp = app.add_subcommand("corpus", "evaluate every corpus expectation");
  common(cp);
  cmds.push_back({cp, cmd_corpus});
  auto *ex = app.add_subcommand("export", "write corpus groups as JSON documents");
  common(ex);
  ex->add_option("input", o.input, "corpus entry name or all")->required();
  cmds.push_back({ex, cmd_export});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : InputError;
  }

  for (auto &[sub, fn] : cmds) {
    if (!sub->parsed()) continue;
    Json res;
    std::string text;
    int code;
    auto t0 = std::chrono::steady_clock::now();
    try {
      code = fn(o, res, text);
    } catch (const PoError &e) {
      bool input = e.code == "SchemaError" || e.code == "NotPositive" || e.code == "NotInCarrier" ||
                   e.code == "MalformedPresentation";
      std::cerr << e.what() << "\n";
      return input ? InputError : Inconclusive;
    } catch (const Json::exception &e) {
      std::cerr << "SchemaError: " << e.what() << "\n";
      return InputError;
    } catch (const AlgebraError &e) {
      std::cerr << e.what() << "\n";
      return Inconclusive;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::string body;
    if (o.format == "json") {
      Json rep = report_base(sub->get_name(), o, lastDigest);
      if (sub->get_name() == "export") rep = res;
      else {
        rep["results"] = res;
        rep["exitCode"] = code;
        if (!o.noTiming) rep["timing"] = {{"ms", ms}};
      }
      body = rep.dump(2) + "\n";
    } else {
      body = text;
    }
    if (o.out.empty())
      std::cout << body;
    else {
      std::ofstream f(o.out);
      if (!f) {
        std::cerr << "cannot write " << o.out << "\n";
        return InputError;
      }
      f << body;
    }
    return code;
  }
  return InputError;
}
