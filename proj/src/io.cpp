#include "polycalc/io.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "polycalc/error.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly_ops.hpp"

namespace polycalc::io {
namespace {

// JSON Pointer escaping of one reference token.
std::string token(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + token(key); }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path.empty() ? "/" : path, what);
}

const Json& field(const Json& j, const char* name, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(at(path, name), "missing field");
  return *it;
}

void expect_kind(const Json& j, const char* kind, const std::string& path) {
  const Json& k = field(j, "kind", path);
  if (!k.is_string() || k.get<std::string>() != kind) fail(at(path, "kind"), std::string("expected \"") + kind + "\"");
}

void expect_fields(const Json& j, std::initializer_list<const char*> names, const std::string& path) {
  std::set<std::string> allowed(names.begin(), names.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail(at(path, it.key()), "unknown field");
  }
}

Label key_label(const std::string& key) {
  Json parsed = Json::parse(key, nullptr, false);
  if (parsed.is_discarded() || !(parsed.is_number_integer() || parsed.is_string() || parsed.is_array())) {
    return Label(key);  // bare string key
  }
  return label_from_json(parsed, "");
}

/// Entries of a label-keyed map, one per element of `domain`, in domain order.
std::vector<const Json*> read_map(const Json& j, const FinSet& domain, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object keyed by labels");
  std::vector<const Json*> out(domain.size(), nullptr);
  for (auto it = j.begin(); it != j.end(); ++it) {
    Label l = [&] {
      try {
        return key_label(it.key());
      } catch (const SchemaError&) {
        fail(at(path, it.key()), "key is not a label");
      }
    }();
    auto i = domain.find(l);
    if (!i) fail(at(path, it.key()), "key is not in the domain");
    if (out[*i]) fail(at(path, it.key()), "duplicate key");
    out[*i] = &it.value();
  }
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (!out[i]) fail(at(path, key_of(domain[i])), "missing entry");
  }
  return out;
}

Label member(const Json& j, const FinSet& s, const std::string& path, const char* what) {
  Label l = label_from_json(j, path);
  if (!s.contains(l)) fail(path, l.to_string() + " is not a " + what);
  return l;
}

FinSet element_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of labels");
  std::vector<Label> elems;
  std::set<Label> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    Label l = label_from_json(j[i], at(path, i));
    if (!seen.insert(l).second) fail(at(path, i), "duplicate element " + l.to_string());
    elems.push_back(std::move(l));
  }
  return FinSet::of(std::move(elems));
}

Json element_json(const FinSet& s) {
  Json a = Json::array();
  for (const Label& l : s) a.push_back(to_json(l));
  return a;
}

// {"on_position": {I: J}, "on_direction": {I: {j: d}}} of a morphism.
Json mor_tables(const PolyMor& m) {
  Json pos = Json::object(), dir = Json::object();
  const FinSet& P = m.dom().positions();
  for (std::size_t i = 0; i < P.size(); ++i) {
    pos[key_of(P[i])] = to_json(m.on_position(i));
    Json row = Json::object();
    const FinSet cod_dirs = m.cod_directions(i);
    const FinSet& dom_dirs = m.dom().directions(i);
    for (std::size_t k = 0; k < cod_dirs.size(); ++k) row[key_of(cod_dirs[k])] = to_json(dom_dirs[m.sharp(i)[k]]);
    dir[key_of(P[i])] = std::move(row);
  }
  return Json{{"on_position", std::move(pos)}, {"on_direction", std::move(dir)}};
}

PolyMor mor_from_tables(const Json& j, const Poly& dom, const Poly& cod, const std::string& path) {
  const Json& pos = field(j, "on_position", path);
  const Json& dir = field(j, "on_direction", path);
  const FinSet& P = dom.positions();
  auto pos_entries = read_map(pos, P, at(path, "on_position"));
  auto dir_entries = read_map(dir, P, at(path, "on_direction"));
  std::vector<Label> images;
  std::vector<std::vector<std::size_t>> sharp;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const std::string ppath = at(at(path, "on_position"), key_of(P[i]));
    Label J = label_from_json(*pos_entries[i], ppath);
    if (!cod.has_position(J)) fail(ppath, J.to_string() + " is not a position of the codomain");
    const FinSet cod_dirs = cod.directions(J);
    const std::string dpath = at(at(path, "on_direction"), key_of(P[i]));
    auto entries = read_map(*dir_entries[i], cod_dirs, dpath);
    std::vector<std::size_t> row;
    for (std::size_t k = 0; k < cod_dirs.size(); ++k) {
      Label d = member(*entries[k], dom.directions(i), at(dpath, key_of(cod_dirs[k])), "direction of the domain");
      row.push_back(dom.directions(i).index_of(d));
    }
    images.push_back(std::move(J));
    sharp.push_back(std::move(row));
  }
  return PolyMor(dom, cod, std::move(images), std::move(sharp));
}

Comonoid comonoid_field(const Json& j, const char* name, const std::string& path, const Resolver& resolve) {
  const Json& v = field(j, name, path);
  if (v.is_string()) {
    const std::string ref = v.get<std::string>();
    Json doc = [&] {
      try {
        return resolve(ref);
      } catch (const DomainError& e) {
        fail(at(path, name), "in " + ref + ": " + e.what());
      }
    }();
    return comonoid_from_json(doc, at(path, name) + "<" + ref + ">", resolve);
  }
  return comonoid_from_json(v, at(path, name), resolve);
}

void require_comonoid(const Comonoid& c, const std::string& path) {
  Verdict v = comonoid_check(c);
  if (!v.ok()) throw DomainError(path + ": not a comonoid: " + v.summary());
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ":" + e.path(), e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << dump(j);
}

Resolver file_resolver(const std::string& base_dir) {
  return [base_dir](const std::string& ref) {
    std::filesystem::path p(ref);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return read_file(p.string());
  };
}

Resolver no_references() {
  return [](const std::string& ref) -> Json { throw SchemaError("/", "unexpected reference " + ref); };
}

std::string kind_of(const Json& j) {
  const Json& k = field(j, "kind", "");
  if (!k.is_string()) fail("/kind", "expected a string");
  return k.get<std::string>();
}

Json to_json(const Label& l) {
  switch (l.kind()) {
    case Label::Kind::Int:
      return Json(l.as_int());
    case Label::Kind::Str:
      return Json(l.as_str());
    case Label::Kind::List: {
      Json a = Json::array();
      for (const Label& x : l.items()) a.push_back(to_json(x));
      return a;
    }
  }
  return Json();
}

Label label_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) fail(path, "integer out of range");
    return Label(static_cast<std::int64_t>(v));
  }
  if (j.is_number_integer()) return Label(j.get<std::int64_t>());
  if (j.is_string()) return Label(j.get<std::string>());
  if (j.is_array()) {
    Label::List items;
    for (std::size_t i = 0; i < j.size(); ++i) items.push_back(label_from_json(j[i], at(path, i)));
    return Label::list(std::move(items));
  }
  fail(path, "a label must be an integer, a string or an array of labels");
}

std::string key_of(const Label& l) { return to_json(l).dump(); }

Json to_json(const FinSet& s) { return Json{{"kind", "finset"}, {"elements", element_json(s)}}; }

FinSet finset_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "finset", path);
  expect_fields(j, {"kind", "elements"}, path);
  return element_array(field(j, "elements", path), at(path, "elements"));
}

Json to_json(const FinFn& f) {
  Json map = Json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) map[key_of(f.dom()[i])] = to_json(f.cod()[f(i)]);
  return Json{{"kind", "finfn"}, {"dom", element_json(f.dom())}, {"cod", element_json(f.cod())}, {"map", map}};
}

FinFn finfn_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "finfn", path);
  expect_fields(j, {"kind", "dom", "cod", "map"}, path);
  FinSet dom = element_array(field(j, "dom", path), at(path, "dom"));
  FinSet cod = element_array(field(j, "cod", path), at(path, "cod"));
  auto entries = read_map(field(j, "map", path), dom, at(path, "map"));
  std::vector<std::size_t> table;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    table.push_back(cod.index_of(member(*entries[i], cod, at(at(path, "map"), key_of(dom[i])), "codomain element")));
  }
  return FinFn(dom, cod, std::move(table));
}

Json to_json(const FinCat& c) {
  Json src = Json::object(), tgt = Json::object(), id = Json::object(), compose = Json::array();
  for (std::size_t m = 0; m < c.morphisms().size(); ++m) {
    src[key_of(c.morphisms()[m])] = to_json(c.objects()[c.src()(m)]);
    tgt[key_of(c.morphisms()[m])] = to_json(c.objects()[c.tgt()(m)]);
  }
  for (std::size_t o = 0; o < c.objects().size(); ++o) id[key_of(c.objects()[o])] = to_json(c.morphisms()[c.id()(o)]);
  for (const auto& [g, f, gf] : c.compose_table()) compose.push_back(Json::array({to_json(g), to_json(f), to_json(gf)}));
  return Json{{"kind", "fincat"}, {"objects", element_json(c.objects())}, {"morphisms", element_json(c.morphisms())},
              {"src", src}, {"tgt", tgt}, {"id", id}, {"compose", compose}};
}

FinCat fincat_from_json(const Json& j, const std::string& path, bool check) {
  expect_kind(j, "fincat", path);
  expect_fields(j, {"kind", "objects", "morphisms", "src", "tgt", "id", "compose"}, path);
  FinSet objs = element_array(field(j, "objects", path), at(path, "objects"));
  FinSet mors = element_array(field(j, "morphisms", path), at(path, "morphisms"));
  auto fn = [&](const char* name, const FinSet& dom, const FinSet& cod, const char* what) {
    auto entries = read_map(field(j, name, path), dom, at(path, name));
    std::vector<std::size_t> table;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      table.push_back(cod.index_of(member(*entries[i], cod, at(at(path, name), key_of(dom[i])), what)));
    }
    return FinFn(dom, cod, std::move(table));
  };
  FinFn src = fn("src", mors, objs, "object");
  FinFn tgt = fn("tgt", mors, objs, "object");
  FinFn id = fn("id", objs, mors, "morphism");

  const Json& comp = field(j, "compose", path);
  const std::string cpath = at(path, "compose");
  if (!comp.is_array()) fail(cpath, "expected an array of [g, f, g∘f] triples");
  std::vector<std::array<Label, 3>> table;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const Json& t = comp[i];
    if (!t.is_array() || t.size() != 3) fail(at(cpath, i), "expected a triple [g, f, g∘f]");
    std::array<Label, 3> entry;
    for (std::size_t k = 0; k < 3; ++k) entry[k] = member(t[k], mors, at(at(cpath, i), k), "morphism");
    const std::size_t g = mors.index_of(entry[0]), f = mors.index_of(entry[1]);
    if (tgt(f) != src(g)) fail(at(cpath, i), "pair " + Label::pair(entry[0], entry[1]).to_string() + " is not composable");
    if (!seen.insert({g, f}).second) fail(at(cpath, i), "duplicate entry for " + Label::pair(entry[0], entry[1]).to_string());
    table.push_back(std::move(entry));
  }
  for (std::size_t f = 0; f < mors.size(); ++f) {
    for (std::size_t g = 0; g < mors.size(); ++g) {
      if (tgt(f) == src(g) && !seen.count({g, f})) {
        fail(cpath, "missing entry for the composable pair [g, f] = " + Label::pair(mors[g], mors[f]).to_string());
      }
    }
  }
  FinCat c = FinCat::make(objs, mors, src, tgt, id, table);
  if (!check) return c;
  Verdict v = c.validate();
  if (!v.ok()) throw DomainError((path.empty() ? std::string("fincat") : path) + ": not a category: " + v.summary());
  return c;
}

Json to_json(const psh::Presheaf& x) {
  const FinCat& c = x.base();
  Json at_j = Json::object(), action = Json::object();
  for (std::size_t o = 0; o < c.objects().size(); ++o) at_j[key_of(c.objects()[o])] = element_json(x.at(o));
  for (std::size_t m = 0; m < c.morphisms().size(); ++m) {
    Json row = Json::object();
    const FinFn& a = x.action(m);
    for (std::size_t i = 0; i < a.dom().size(); ++i) row[key_of(a.dom()[i])] = to_json(a.cod()[a(i)]);
    action[key_of(c.morphisms()[m])] = std::move(row);
  }
  return Json{{"kind", "presheaf"}, {"base", to_json(c)}, {"at", at_j}, {"action", action}};
}

psh::Presheaf presheaf_from_json(const Json& j, const std::string& path, bool check) {
  expect_kind(j, "presheaf", path);
  expect_fields(j, {"kind", "base", "at", "action"}, path);
  auto base = std::make_shared<const FinCat>(fincat_from_json(field(j, "base", path), at(path, "base")));
  const FinSet& objs = base->objects();
  const FinSet& mors = base->morphisms();
  auto at_entries = read_map(field(j, "at", path), objs, at(path, "at"));
  std::vector<FinSet> sets;
  for (std::size_t o = 0; o < objs.size(); ++o) {
    sets.push_back(element_array(*at_entries[o], at(at(path, "at"), key_of(objs[o]))));
  }
  auto act_entries = read_map(field(j, "action", path), mors, at(path, "action"));
  std::vector<FinFn> actions;
  for (std::size_t m = 0; m < mors.size(); ++m) {
    const FinSet& dom = sets[base->tgt()(m)];
    const FinSet& cod = sets[base->src()(m)];
    const std::string mpath = at(at(path, "action"), key_of(mors[m]));
    auto entries = read_map(*act_entries[m], dom, mpath);
    std::vector<std::size_t> table;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      table.push_back(cod.index_of(member(*entries[i], cod, at(mpath, key_of(dom[i])), "element at the source")));
    }
    actions.emplace_back(dom, cod, std::move(table));
  }
  psh::Presheaf x(base, std::move(sets), std::move(actions));
  if (!check) return x;
  Verdict v = x.validate();
  if (!v.ok()) throw DomainError((path.empty() ? std::string("presheaf") : path) + ": not a presheaf: " + v.summary());
  return x;
}

Json to_json(const psh::PshMor& f) {
  const FinCat& c = f.dom().base();
  Json comps = Json::object();
  for (std::size_t o = 0; o < c.objects().size(); ++o) {
    Json row = Json::object();
    const FinFn& a = f.at(o);
    for (std::size_t i = 0; i < a.dom().size(); ++i) row[key_of(a.dom()[i])] = to_json(a.cod()[a(i)]);
    comps[key_of(c.objects()[o])] = std::move(row);
  }
  return Json{{"kind", "pshmor"}, {"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"components", comps}};
}

psh::PshMor pshmor_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "pshmor", path);
  expect_fields(j, {"kind", "dom", "cod", "components"}, path);
  psh::Presheaf dom = presheaf_from_json(field(j, "dom", path), at(path, "dom"));
  psh::Presheaf cod = presheaf_from_json(field(j, "cod", path), at(path, "cod"));
  if (!(dom.base() == cod.base())) fail(at(path, "cod"), "base differs from the domain's base");
  {
    // Share one base object between the two sides.
    std::vector<FinFn> actions;
    for (std::size_t m = 0; m < dom.base().morphisms().size(); ++m) actions.push_back(cod.action(m));
    cod = psh::Presheaf(dom.base_ptr(), cod.components(), std::move(actions));
  }
  const FinSet& objs = dom.base().objects();
  auto entries = read_map(field(j, "components", path), objs, at(path, "components"));
  std::vector<FinFn> comps;
  for (std::size_t o = 0; o < objs.size(); ++o) {
    const std::string opath = at(at(path, "components"), key_of(objs[o]));
    auto row = read_map(*entries[o], dom.at(o), opath);
    std::vector<std::size_t> table;
    for (std::size_t i = 0; i < dom.at(o).size(); ++i) {
      table.push_back(cod.at(o).index_of(member(*row[i], cod.at(o), at(opath, key_of(dom.at(o)[i])), "element of the codomain")));
    }
    comps.emplace_back(dom.at(o), cod.at(o), std::move(table));
  }
  psh::PshMor f(dom, cod, std::move(comps));
  Verdict v = f.validate();
  if (!v.ok()) throw DomainError((path.empty() ? std::string("pshmor") : path) + ": not natural: " + v.summary());
  return f;
}

Json to_json(const Poly& p) {
  Json dirs = Json::object();
  const FinSet& P = p.positions();
  for (std::size_t i = 0; i < P.size(); ++i) dirs[key_of(P[i])] = element_json(p.directions(i));
  return Json{{"kind", "poly"}, {"positions", element_json(P)}, {"directions", dirs}};
}

Poly poly_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "poly", path);
  expect_fields(j, {"kind", "positions", "directions"}, path);
  FinSet P = element_array(field(j, "positions", path), at(path, "positions"));
  auto entries = read_map(field(j, "directions", path), P, at(path, "directions"));
  std::vector<FinSet> dirs;
  for (std::size_t i = 0; i < P.size(); ++i) {
    dirs.push_back(element_array(*entries[i], at(at(path, "directions"), key_of(P[i]))));
  }
  return Poly::make(P, std::move(dirs));
}

Json to_json(const PolyMor& m) {
  Json j = mor_tables(m);
  j["kind"] = "polymor";
  j["dom"] = to_json(m.dom());
  j["cod"] = to_json(m.cod());
  return j;
}

PolyMor polymor_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "polymor", path);
  expect_fields(j, {"kind", "dom", "cod", "on_position", "on_direction"}, path);
  Poly dom = poly_from_json(field(j, "dom", path), at(path, "dom"));
  Poly cod = poly_from_json(field(j, "cod", path), at(path, "cod"));
  return mor_from_tables(j, dom, cod, path);
}

Json to_json(const Comonoid& c) {
  return Json{{"kind", "comonoid"}, {"carrier", to_json(c.carrier)}, {"counit", mor_tables(c.counit)},
              {"comult", mor_tables(c.comult)}};
}

Comonoid comonoid_from_json(const Json& j, const std::string& path, const Resolver&) {
  expect_kind(j, "comonoid", path);
  expect_fields(j, {"kind", "carrier", "counit", "comult"}, path);
  Poly c = poly_from_json(field(j, "carrier", path), at(path, "carrier"));
  PolyMor counit = mor_from_tables(field(j, "counit", path), c, Poly::y(), at(path, "counit"));
  PolyMor comult = mor_from_tables(field(j, "comult", path), c, compose_tri(c, c), at(path, "comult"));
  return {c, counit, comult};
}

Json to_json(const Bicomodule& b) {
  return Json{{"kind", "bicomodule"},           {"left", to_json(b.c)},
              {"right", to_json(b.d)},          {"carrier", to_json(b.m)},
              {"left_coaction", mor_tables(b.left)}, {"right_coaction", mor_tables(b.right)}};
}

Bicomodule bicomodule_from_json(const Json& j, const std::string& path, const Resolver& resolve) {
  expect_kind(j, "bicomodule", path);
  expect_fields(j, {"kind", "left", "right", "carrier", "left_coaction", "right_coaction"}, path);
  Bicomodule b;
  b.c = comonoid_field(j, "left", path, resolve);
  b.d = comonoid_field(j, "right", path, resolve);
  require_comonoid(b.c, at(path, "left"));
  require_comonoid(b.d, at(path, "right"));
  b.m = poly_from_json(field(j, "carrier", path), at(path, "carrier"));
  b.left = mor_from_tables(field(j, "left_coaction", path), b.m, compose_tri(b.c.carrier, b.m), at(path, "left_coaction"));
  b.right =
      mor_from_tables(field(j, "right_coaction", path), b.m, compose_tri(b.m, b.d.carrier), at(path, "right_coaction"));
  Verdict v = bicomodule_check(b);
  if (!v.ok()) throw DomainError((path.empty() ? std::string("bicomodule") : path) + ": not a bicomodule: " + v.summary());
  return b;
}

Json to_json(const TypedPoly& t) {
  Json tgt = Json::object(), src = Json::object();
  const FinSet& P = t.m.positions();
  for (std::size_t i = 0; i < P.size(); ++i) {
    tgt[key_of(P[i])] = to_json(t.tgt(P[i]));
    Json row = Json::object();
    for (const Label& d : t.m.directions(i)) row[key_of(d)] = to_json(t.src(Label::pair(P[i], d)));
    src[key_of(P[i])] = std::move(row);
  }
  return Json{{"kind", "typedpoly"}, {"carrier", to_json(t.m)}, {"C", element_json(t.tgt.cod())},
              {"D", element_json(t.src.cod())}, {"tgt", tgt}, {"src", src}};
}

TypedPoly typed_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "typedpoly", path);
  expect_fields(j, {"kind", "carrier", "C", "D", "tgt", "src"}, path);
  Poly m = poly_from_json(field(j, "carrier", path), at(path, "carrier"));
  FinSet C = element_array(field(j, "C", path), at(path, "C"));
  FinSet D = element_array(field(j, "D", path), at(path, "D"));
  const FinSet& P = m.positions();
  auto tgt_entries = read_map(field(j, "tgt", path), P, at(path, "tgt"));
  auto src_entries = read_map(field(j, "src", path), P, at(path, "src"));
  std::map<Label, Label> src_of;
  std::vector<std::size_t> tgt_table;
  for (std::size_t i = 0; i < P.size(); ++i) {
    tgt_table.push_back(C.index_of(member(*tgt_entries[i], C, at(at(path, "tgt"), key_of(P[i])), "type in C")));
    const std::string rpath = at(at(path, "src"), key_of(P[i]));
    auto row = read_map(*src_entries[i], m.directions(i), rpath);
    for (std::size_t k = 0; k < m.directions(i).size(); ++k) {
      const Label& d = m.directions(i)[k];
      src_of[Label::pair(P[i], d)] = member(*row[k], D, at(rpath, key_of(d)), "type in D");
    }
  }
  FinSet stars = p_star(m).poly.positions();
  FinFn src = FinFn::from_labels(stars, D, [&](const Label& Id) { return src_of.at(Id); });
  TypedPoly t{m, src, FinFn(P, C, std::move(tgt_table))};
  typed_check(t);
  return t;
}

Json to_json(const Coalgebra& x) {
  Json k1 = Json::object(), action = Json::object();
  for (const Label& s : x.S) {
    k1[key_of(s)] = to_json(x.kappa1(s));
    Json row = Json::object();
    for (const Label& f : x.c.carrier.directions(x.kappa1(s))) row[key_of(f)] = to_json(x.act(s, f));
    action[key_of(s)] = std::move(row);
  }
  return Json{{"kind", "coalgebra"}, {"comonoid", to_json(x.c)}, {"elements", element_json(x.S)},
              {"kappa1", k1}, {"action", action}};
}

Coalgebra coalgebra_from_json(const Json& j, const std::string& path, const Resolver& resolve) {
  expect_kind(j, "coalgebra", path);
  expect_fields(j, {"kind", "comonoid", "elements", "kappa1", "action"}, path);
  Comonoid c = comonoid_field(j, "comonoid", path, resolve);
  FinSet S = element_array(field(j, "elements", path), at(path, "elements"));
  const FinSet& C = c.carrier.positions();
  auto k1 = read_map(field(j, "kappa1", path), S, at(path, "kappa1"));
  auto acts = read_map(field(j, "action", path), S, at(path, "action"));
  std::vector<std::size_t> k1_table;
  std::map<std::pair<Label, Label>, Label> act;
  for (std::size_t i = 0; i < S.size(); ++i) {
    Label x = member(*k1[i], C, at(at(path, "kappa1"), key_of(S[i])), "position of the comonoid");
    k1_table.push_back(C.index_of(x));
    const FinSet dirs = c.carrier.directions(x);
    const std::string rpath = at(at(path, "action"), key_of(S[i]));
    auto row = read_map(*acts[i], dirs, rpath);
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      act[{S[i], dirs[k]}] = member(*row[k], S, at(rpath, key_of(dirs[k])), "element");
    }
  }
  FinFn kappa1(S, C, std::move(k1_table));
  return make_coalgebra(c, S, kappa1, [&](const Label& s, const Label& f) { return act.at({s, f}); });
}

Json roundtrip(const Json& j, const Resolver& resolve) {
  const std::string kind = kind_of(j);
  if (kind == "finset") return to_json(finset_from_json(j));
  if (kind == "finfn") return to_json(finfn_from_json(j));
  if (kind == "fincat") return to_json(fincat_from_json(j));
  if (kind == "presheaf") return to_json(presheaf_from_json(j));
  if (kind == "pshmor") return to_json(pshmor_from_json(j));
  if (kind == "poly") return to_json(poly_from_json(j));
  if (kind == "polymor") return to_json(polymor_from_json(j));
  if (kind == "comonoid") return to_json(comonoid_from_json(j, "", resolve));
  if (kind == "typedpoly") return to_json(typed_from_json(j));
  if (kind == "bicomodule") {
    Json out = to_json(bicomodule_from_json(j, "", resolve));
    for (const char* name : {"left", "right"}) {
      if (j.at(name).is_string()) out[name] = j.at(name);
    }
    return out;
  }
  if (kind == "coalgebra") {
    Json out = to_json(coalgebra_from_json(j, "", resolve));
    if (j.at("comonoid").is_string()) out["comonoid"] = j.at("comonoid");
    return out;
  }
  fail("/kind", "unknown kind \"" + kind + "\"");
}

}  // namespace polycalc::io
