#pragma once

// Group documents (schemaVersion 1) and report serialization.
// Rationals are JSON integers or strings "a/b". Lex blocks are listed least significant first.

#include <nlohmann/json.hpp>

#include "pogroup/suites.hpp"

namespace pogroup {

using Json = nlohmann::ordered_json;

namespace json_detail {

[[noreturn]] inline void fail(const std::string &msg) { throw PoError("SchemaError", msg); }

inline void allow_only(const Json &j, std::initializer_list<const char *> keys, const std::string &where) {
  if (!j.is_object()) fail(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto k : keys) ok = ok || it.key() == k;
    if (!ok) fail("unknown field '" + it.key() + "' in " + where);
  }
}

inline const Json &need(const Json &j, const char *key, const std::string &where) {
  if (!j.contains(key)) fail("missing field '" + std::string(key) + "' in " + where);
  return j.at(key);
}

inline Rat parse_rat(const Json &j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) fail("expected an integer or a string rational");
  Rat r;
  std::string s = j.get<std::string>();
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) fail("bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline Json rat_json(const Rat &r) {
  if (is_integral(r) && r.get_num().fits_slong_p()) return Json(r.get_num().get_si());
  return Json(r.get_str());
}

inline Vec parse_vec(const Json &j, size_t dim = 0) {
  if (!j.is_array()) fail("expected an array of rationals");
  Vec v;
  for (auto &x : j) v.push_back(parse_rat(x));
  if (dim && v.size() != dim) fail("vector " + j.dump() + " should have length " + std::to_string(dim));
  return v;
}

inline Json vec_json(const Vec &v) {
  Json a = Json::array();
  for (auto &x : v) a.push_back(rat_json(x));
  return a;
}

inline Mat parse_mat(const Json &j, size_t dim = 0) {
  if (!j.is_array()) fail("expected an array of vectors");
  Mat m;
  for (auto &v : j) m.push_back(parse_vec(v, dim));
  return m;
}

inline Json mat_json(const Mat &m) {
  Json a = Json::array();
  for (auto &v : m) a.push_back(vec_json(v));
  return a;
}

// "Z", "Q", "Z[1/3]", "Z[1/2,3]"
inline BaseRing parse_ring(const Json &j) {
  if (!j.is_string()) fail("ring must be a string");
  std::string s = j.get<std::string>();
  if (s == "Z") return BaseRing::integers();
  if (s == "Q") return BaseRing::rationals();
  if (s.rfind("Z[1/", 0) == 0 && s.back() == ']') {
    std::vector<Int> ps;
    std::stringstream in(s.substr(4, s.size() - 5));
    std::string tok;
    while (std::getline(in, tok, ',')) {
      Int p;
      if (tok.empty() || p.set_str(tok, 10) != 0 || !is_prime(p)) fail("bad prime '" + tok + "' in ring " + s);
      ps.push_back(p);
    }
    return BaseRing::inverted(ps);
  }
  fail("unknown ring '" + s + "'");
}

inline std::vector<BaseRing> parse_rings(const Json &j, size_t dim) {
  if (!j.is_array()) fail("rings must be an array");
  std::vector<BaseRing> r;
  for (auto &x : j) r.push_back(parse_ring(x));
  if (r.size() != dim) fail("ring list length does not match the dimension");
  return r;
}

inline Json rings_json(const std::vector<BaseRing> &rs) {
  Json a = Json::array();
  for (auto &r : rs) a.push_back(r.name());
  return a;
}

inline Constraint::Rel parse_rel(const std::string &s) {
  if (s == ">=") return Constraint::Rel::GE;
  if (s == "=") return Constraint::Rel::EQ;
  if (s == ">") return Constraint::Rel::GT;
  fail("unknown relation '" + s + "'");
}

inline std::string rel_name(Constraint::Rel r) {
  return r == Constraint::Rel::GE ? ">=" : r == Constraint::Rel::EQ ? "=" : ">";
}

inline Template::Param parse_param(const std::string &s) {
  if (s == "none") return Template::Param::None;
  if (s == "positive-rational") return Template::Param::PosRational;
  if (s == "rational") return Template::Param::AnyRational;
  if (s == "integer") return Template::Param::AnyInteger;
  fail("unknown template parameter '" + s + "'");
}

inline std::string param_name(Template::Param p) {
  switch (p) {
  case Template::Param::None: return "none";
  case Template::Param::PosRational: return "positive-rational";
  case Template::Param::AnyRational: return "rational";
  default: return "integer";
  }
}

}  // namespace json_detail

inline OrderNode parse_order(const Json &j) {
  using namespace json_detail;
  if (!j.is_object()) fail("order must be an object");
  std::string kind = need(j, "kind", "order").get<std::string>();
  if (kind == "coordinate") {
    allow_only(j, {"kind", "ring"}, "coordinate");
    return coordinate(j.contains("ring") ? parse_ring(j["ring"]) : BaseRing::integers());
  }
  if (kind == "product" || kind == "lex") {
    allow_only(j, {"kind", "blocks"}, kind);
    std::vector<OrderNode> kids;
    for (auto &b : need(j, "blocks", kind)) kids.push_back(parse_order(b));
    return kind == "product" ? product_of(kids) : lex_of(kids);
  }
  if (kind == "cone") {
    allow_only(j, {"kind", "dim", "rings", "generators"}, "cone");
    size_t d = need(j, "dim", "cone").get<size_t>();
    std::vector<BaseRing> rings = j.contains("rings") ? parse_rings(j["rings"], d) : std::vector<BaseRing>{};
    return cone_of(parse_mat(need(j, "generators", "cone"), d), d, rings);
  }
  if (kind == "geometric") {
    allow_only(j, {"kind", "generators", "families"}, "geometric");
    Vec fin = j.contains("generators") ? parse_vec(j["generators"]) : Vec{};
    std::vector<GeometricFamily> fams;
    for (auto &f : need(j, "families", "geometric")) {
      allow_only(f, {"direction", "prime", "start"}, "family");
      GeometricFamily g;
      g.direction = parse_rat(need(f, "direction", "family"));
      g.prime = need(f, "prime", "family").get<long>();
      if (!is_prime(g.prime)) fail("family prime is not prime");
      g.startLevel = f.contains("start") ? f["start"].get<int>() : 1;
      fams.push_back(g);
    }
    return geometric_of(fin, fams);
  }
  if (kind == "lazy-lex") {
    allow_only(j, {"kind", "window", "offset"}, "lazy-lex");
    return lazy_lex(need(j, "window", "lazy-lex").get<size_t>(), j.contains("offset") ? j["offset"].get<size_t>() : 0);
  }
  if (kind == "predicate") {
    allow_only(j, {"kind", "rings", "regions", "atoms", "templates", "note"}, "predicate");
    OrderNode n;
    n.kind = OrderKind::Predicate;
    const Json &rings = need(j, "rings", "predicate");
    n.rings = parse_rings(rings, rings.size());
    size_t d = n.rings.size();
    for (auto &reg : need(j, "regions", "predicate")) {
      Region R;
      for (auto &c : reg) {
        allow_only(c, {"coef", "rel", "rhs"}, "constraint");
        R.constraints.push_back({parse_vec(need(c, "coef", "constraint"), d),
                                 parse_rel(need(c, "rel", "constraint").get<std::string>()),
                                 parse_rat(need(c, "rhs", "constraint"))});
      }
      n.regions.push_back(R);
    }
    if (j.contains("atoms")) n.atoms = parse_mat(j["atoms"], d);
    if (j.contains("templates"))
      for (auto &t : j["templates"]) {
        allow_only(t, {"base", "dir", "param"}, "template");
        n.templates.push_back({parse_vec(need(t, "base", "template"), d), parse_vec(need(t, "dir", "template"), d),
                               parse_param(need(t, "param", "template").get<std::string>())});
      }
    if (j.contains("note")) n.note = j["note"].get<std::string>();
    return n;
  }
  fail("unknown order kind '" + kind + "'");
}

inline Json order_json(const OrderNode &n) {
  using namespace json_detail;
  Json j;
  switch (n.kind) {
  case OrderKind::Coordinate:
    j["kind"] = "coordinate";
    j["ring"] = n.rings[0].name();
    break;
  case OrderKind::Product:
  case OrderKind::Lex: {
    j["kind"] = n.kind == OrderKind::Product ? "product" : "lex";
    Json b = Json::array();
    for (auto &k : n.kids) b.push_back(order_json(k));
    j["blocks"] = b;
    break;
  }
  case OrderKind::Cone:
    j["kind"] = "cone";
    j["dim"] = n.dim();
    j["rings"] = rings_json(n.rings);
    j["generators"] = mat_json(n.gens);
    break;
  case OrderKind::Geometric: {
    j["kind"] = "geometric";
    Vec fin;
    for (auto &g : n.gens) fin.push_back(g[0]);
    j["generators"] = vec_json(fin);
    Json fs = Json::array();
    for (auto &f : n.families)
      fs.push_back({{"direction", rat_json(f.direction)}, {"prime", f.prime.get_si()}, {"start", f.startLevel}});
    j["families"] = fs;
    break;
  }
  case OrderKind::LazyLex:
    j["kind"] = "lazy-lex";
    j["window"] = n.window;
    j["offset"] = n.offset;
    break;
  case OrderKind::Predicate: {
    j["kind"] = "predicate";
    j["rings"] = rings_json(n.rings);
    Json regs = Json::array();
    for (auto &R : n.regions) {
      Json cs = Json::array();
      for (auto &c : R.constraints)
        cs.push_back({{"coef", vec_json(c.coef)}, {"rel", rel_name(c.rel)}, {"rhs", rat_json(c.rhs)}});
      regs.push_back(cs);
    }
    j["regions"] = regs;
    j["atoms"] = mat_json(n.atoms);
    Json ts = Json::array();
    for (auto &t : n.templates)
      ts.push_back({{"base", vec_json(t.base)}, {"dir", vec_json(t.dir)}, {"param", param_name(t.param)}});
    j["templates"] = ts;
    if (!n.note.empty()) j["note"] = n.note;
    break;
  }
  }
  return j;
}

struct GroupSpecDocument {
  PoGroup group;
  std::vector<Vec> probes;  // elements of interest, in the coordinates of the stage that uses them
  std::string name;
};

inline GroupSpecDocument parse_group_document(const Json &j) {
  using namespace json_detail;
  allow_only(j, {"schemaVersion", "name", "provenance", "carrier", "order", "generators", "directed", "probes"},
             "document");
  if (need(j, "schemaVersion", "document") != 1) fail("unsupported schemaVersion " + j["schemaVersion"].dump());
  OrderNode order = parse_order(need(j, "order", "document"));
  bool requireDirected = j.contains("directed") ? j["directed"].get<bool>() : true;
  GroupSpecDocument doc;
  try {
    doc.group = make_group(order, j.contains("provenance") ? j["provenance"].get<std::string>() : "", requireDirected);
  } catch (const PoError &e) {
    throw PoError("SchemaError", e.what());
  } catch (const AlgebraError &e) {
    throw PoError("SchemaError", e.what());
  }
  size_t d = doc.group.dim();
  if (j.contains("carrier")) {
    const Json &c = j["carrier"];
    allow_only(c, {"rank", "rings"}, "carrier");
    if (need(c, "rank", "carrier").get<size_t>() != d) fail("carrier rank does not match the order");
    if (c.contains("rings") && parse_rings(c["rings"], d) != order.leaf_rings())
      fail("carrier rings do not match the order");
  }
  if (j.contains("generators"))
    for (auto &g : parse_mat(j["generators"], d))
      if (!doc.group.carrier.contains(g)) fail("generator " + to_string(g) + " is outside the carrier");
  // probes are read in the coordinates of whichever stage uses them
  if (j.contains("probes")) doc.probes = parse_mat(j["probes"]);
  if (j.contains("name")) doc.name = j["name"].get<std::string>();
  return doc;
}

inline Json group_document_json(const PoGroup &G, const std::string &name, const std::vector<Vec> &probes) {
  Json j;
  j["schemaVersion"] = 1;
  j["name"] = name;
  j["provenance"] = G.provenance;
  j["carrier"] = {{"rank", G.dim()}, {"rings", json_detail::rings_json(G.order.leaf_rings())}};
  j["order"] = order_json(G.order);
  j["directed"] = G.directed;
  if (!probes.empty()) j["probes"] = json_detail::mat_json(probes);
  return j;
}

inline Json tribool_json(const TriBool &t) { return {{"verdict", t.str()}, {"witness", t.witness}}; }

inline Json suite_json(const SuiteReport &r) {
  Json checks = Json::array();
  for (auto &c : r.checks)
    checks.push_back(
        {{"subject", c.subject}, {"check", c.check}, {"verdict", verdict_name(c.verdict)}, {"detail", c.detail}});
  return {{"suite", r.suite},
          {"pass", r.count(Verdict::Pass)},
          {"fail", r.count(Verdict::Fail)},
          {"unknown", r.count(Verdict::Unknown)},
          {"checks", checks}};
}

// FNV-1a over the canonical dump, for the report's input digest
inline std::string digest(const std::string &s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

}  // namespace pogroup
