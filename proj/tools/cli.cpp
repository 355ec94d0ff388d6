#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>

#include "polycalc/bicomodule.hpp"
#include "polycalc/budget.hpp"
#include "polycalc/coalgebra.hpp"
#include "polycalc/comonoid.hpp"
#include "polycalc/error.hpp"
#include "polycalc/functor.hpp"
#include "polycalc/harness.hpp"
#include "polycalc/io.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly_ops.hpp"
#include "polycalc/presheaf.hpp"
#include "polycalc/slice.hpp"
#include "polycalc/structures.hpp"

namespace polycalc::cli {
namespace {

using io::Json;
using io::to_json;

/// Wrong file count or conflicting modes (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Doc {
  std::string path;
  Json json;
  io::Resolver resolve;
  std::string kind() const { return io::kind_of(json); }
};

Doc load(const std::string& path) {
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return {path, io::read_file(path), io::file_resolver(dir.empty() ? "." : dir)};
}

// Prefix schema paths with the file they came from.
template <class F>
auto in_file(const Doc& d, F&& f) {
  try {
    return f();
  } catch (const SchemaError& e) {
    throw SchemaError(d.path + ":" + e.path(), std::string(e.what()).substr(e.path().size() + 2));
  }
}

Poly as_poly(const Doc& d) { return in_file(d, [&] { return io::poly_from_json(d.json); }); }
PolyMor as_mor(const Doc& d) { return in_file(d, [&] { return io::polymor_from_json(d.json); }); }
FinSet as_set(const Doc& d) { return in_file(d, [&] { return io::finset_from_json(d.json); }); }
FinFn as_fn(const Doc& d) { return in_file(d, [&] { return io::finfn_from_json(d.json); }); }
FinCat as_cat(const Doc& d) { return in_file(d, [&] { return io::fincat_from_json(d.json); }); }
psh::PshMor as_pshmor(const Doc& d) { return in_file(d, [&] { return io::pshmor_from_json(d.json); }); }
Comonoid as_comonoid(const Doc& d) { return in_file(d, [&] { return io::comonoid_from_json(d.json, "", d.resolve); }); }
Bicomodule as_bicomod(const Doc& d) { return in_file(d, [&] { return io::bicomodule_from_json(d.json, "", d.resolve); }); }
TypedPoly as_typed(const Doc& d) { return in_file(d, [&] { return io::typed_from_json(d.json); }); }
Coalgebra as_coalg(const Doc& d) { return in_file(d, [&] { return io::coalgebra_from_json(d.json, "", d.resolve); }); }

/// The same morphism viewed between given (possibly symbolic) polynomials
/// with the same position and direction labels.
PolyMor retarget(const PolyMor& m, const Poly& dom, const Poly& cod, const std::string& what) {
  const FinSet& P = dom.positions();
  if (!(P == m.dom().positions())) throw DomainError(what + ": the domain does not have the expected positions");
  std::vector<Label> pos;
  std::vector<std::vector<std::size_t>> sharp;
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (!(dom.directions(i) == m.dom().directions(i))) {
      throw DomainError(what + ": directions at " + P[i].to_string() + " differ from the expected domain");
    }
    const Label& J = m.on_position(i);
    if (!cod.has_position(J) || !(cod.directions(J) == m.cod_directions(i))) {
      throw DomainError(what + ": " + J.to_string() + " is not a position of the expected codomain");
    }
    pos.push_back(J);
    sharp.push_back(m.sharp(i));
  }
  return PolyMor(dom, cod, std::move(pos), std::move(sharp));
}

Json report(const Verdict& v) {
  Json viol = Json::array();
  for (const Violation& x : v.violations()) viol.push_back(Json{{"law", x.law}, {"witness", x.witness}});
  return Json{{"kind", "report"}, {"ok", v.ok()}, {"violations", viol}};
}

Json pullback_json(const Pullback& p) {
  return Json{{"object", to_json(p.object)}, {"p1", to_json(p.p1)}, {"p2", to_json(p.p2)}};
}

Json opfib_json(const Opfibration& o, const Comonoid& base) {
  return Json{{"kind", "opfibration"}, {"base", to_json(base)}, {"elements", to_json(o.elements)},
              {"total", to_json(o.total)}, {"proj", to_json(o.proj)}};
}

Opfibration opfib_from(const Doc& d, Comonoid& base) {
  return in_file(d, [&] {
    const Json& j = d.json;
    if (io::kind_of(j) != "opfibration") throw SchemaError("/kind", "expected \"opfibration\"");
    for (auto it = j.begin(); it != j.end(); ++it) {
      static const std::set<std::string> allowed{"kind", "base", "elements", "total", "proj"};
      if (!allowed.count(it.key())) throw SchemaError("/" + it.key(), "unknown field");
    }
    base = io::comonoid_from_json(j.at("base"), "/base", d.resolve);
    Opfibration o;
    o.elements = io::fincat_from_json(j.at("elements"), "/elements");
    o.total = io::comonoid_from_json(j.at("total"), "/total", d.resolve);
    o.proj = retarget(io::polymor_from_json(j.at("proj"), "/proj"), o.total.carrier, base.carrier, "proj");
    return o;
  });
}

// {"kind":"diagram","nodes":[poly...],"edges":[{"src":i,"tgt":j,"mor":polymor}...]}
Diagram diagram_from(const Doc& d) {
  return in_file(d, [&] {
    const Json& j = d.json;
    if (io::kind_of(j) != "diagram") throw SchemaError("/kind", "expected \"diagram\"");
    Diagram g;
    const Json& nodes = j.at("nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) g.nodes.push_back(io::poly_from_json(nodes[i], "/nodes/" + std::to_string(i)));
    const Json& edges = j.at("edges");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::string path = "/edges/" + std::to_string(e);
      const std::size_t s = edges[e].at("src").get<std::size_t>(), t = edges[e].at("tgt").get<std::size_t>();
      if (s >= g.nodes.size() || t >= g.nodes.size()) throw SchemaError(path, "node index out of range");
      PolyMor m = io::polymor_from_json(edges[e].at("mor"), path + "/mor");
      g.edges.push_back({s, t, retarget(m, g.nodes[s], g.nodes[t], "edge " + std::to_string(e))});
    }
    return g;
  });
}

/// Parsed command line of one subcommand.
struct Invocation {
  std::string subcommand;
  std::vector<std::string> files;
  std::map<std::string, bool> modes;
  bool count_only = false;
  bool general = false;
  std::string output;
  harness::Config cfg;
  bool serial = false;

  std::string mode() const {
    std::string chosen;
    for (const auto& [flag, set] : modes) {
      if (!set) continue;
      if (!chosen.empty()) throw UsageError(subcommand + ": " + chosen + " and " + flag + " are exclusive");
      chosen = flag;
    }
    return chosen;
  }
  std::vector<Doc> docs(std::size_t n, const std::string& what) const {
    if (files.size() != n) {
      throw UsageError(subcommand + (mode().empty() ? "" : " " + mode()) + ": expected " + what + " (" +
                       std::to_string(n) + " file" + (n == 1 ? "" : "s") + "), got " + std::to_string(files.size()));
    }
    std::vector<Doc> out;
    for (const auto& f : files) out.push_back(load(f));
    return out;
  }
};

struct Result {
  std::string text;
  bool ok = true;
};

Result doc(const Json& j) { return {io::dump(j), true}; }
Result checked(const Verdict& v) { return {io::dump(report(v)), v.ok()}; }

Result cmd_compose(const Invocation& in) {
  if (in.mode() == "--unit") {
    in.docs(0, "no files");
    return doc(to_json(Poly::y()));
  }
  auto d = in.docs(2, "p q or φ ψ");
  if (d[0].kind() == "polymor") return doc(to_json(mor_compose(as_mor(d[0]), as_mor(d[1]))));
  return doc(to_json(compose_tri(as_poly(d[0]), as_poly(d[1])).materialized()));
}

Result cmd_tensor(const Invocation& in) {
  auto d = in.docs(2, "p q or φ ψ");
  if (d[0].kind() == "polymor") return doc(to_json(tensor(as_mor(d[0]), as_mor(d[1])).materialize()));
  return doc(to_json(tensor(as_poly(d[0]), as_poly(d[1])).materialized()));
}

Result cmd_interchange(const Invocation& in) {
  auto d = in.docs(4, "p1 p2 q1 q2");
  return doc(to_json(interchange(as_poly(d[0]), as_poly(d[1]), as_poly(d[2]), as_poly(d[3])).materialize()));
}

Result cmd_closure(const Invocation& in) {
  const std::string m = in.mode();
  if (m == "--transpose") {
    auto d = in.docs(3, "φ: p ⊗ q → r, p, q");
    Poly p = as_poly(d[1]), q = as_poly(d[2]);
    PolyMor phi = as_mor(d[0]);
    return doc(to_json(closure_transpose(retarget(phi, tensor(p, q), phi.cod(), "φ"), p, q)));
  }
  if (m == "--untranspose") {
    auto d = in.docs(3, "ψ: p → [q, r], q, r");
    Poly q = as_poly(d[1]), r = as_poly(d[2]);
    PolyMor psi = as_mor(d[0]);
    return doc(to_json(closure_untranspose(retarget(psi, psi.dom(), closure(q, r), "ψ"), q, r)));
  }
  if (m == "--tri-lax") {
    auto d = in.docs(4, "p1 q1 p2 q2");
    return doc(to_json(closure_tri_lax(as_poly(d[0]), as_poly(d[1]), as_poly(d[2]), as_poly(d[3]))));
  }
  auto d = in.docs(2, "p q");
  Poly p = as_poly(d[0]), q = as_poly(d[1]);
  if (m == "--eval") return doc(to_json(closure_eval(p, q).materialize()));
  if (m == "--pair") return doc(to_json(closure_pair(p, q)));
  return doc(to_json(closure(p, q)));
}

Result cmd_coclosure(const Invocation& in) {
  const std::string m = in.mode();
  if (m == "--transpose") {
    auto d = in.docs(3, "ψ: p → r ◁ q, r, q");
    Poly r = as_poly(d[1]), q = as_poly(d[2]);
    PolyMor psi = as_mor(d[0]);
    return doc(to_json(rc_transpose(retarget(psi, psi.dom(), compose_tri(r, q), "ψ"), q)));
  }
  if (m == "--untranspose") {
    auto d = in.docs(3, "φ: ⟨p|q⟩ → r, p, q");
    Poly p = as_poly(d[1]), q = as_poly(d[2]);
    PolyMor phi = as_mor(d[0]);
    return doc(to_json(rc_untranspose(retarget(phi, right_coclosure(p, q), phi.cod(), "φ"), p, q)));
  }
  if (m == "--tensor-map") {
    auto d = in.docs(4, "p1 q1 p2 q2");
    return doc(to_json(coclosure_tensor_map(as_poly(d[0]), as_poly(d[1]), as_poly(d[2]), as_poly(d[3]))));
  }
  auto d = in.docs(2, "p q");
  return doc(to_json(right_coclosure(as_poly(d[0]), as_poly(d[1]))));
}

Result cmd_frown(const Invocation& in) {
  const std::string m = in.mode();
  if (m == "--transpose") {
    auto d = in.docs(3, "ψ: p → q ◁ r, q, r");
    Poly q = as_poly(d[1]), r = as_poly(d[2]);
    PolyMor psi = as_mor(d[0]);
    FrownTranspose t = frown_transpose(retarget(psi, psi.dom(), compose_tri(q, r), "ψ"));
    return doc(Json{{"kind", "frown-transpose"}, {"f", to_json(t.f)}, {"map", to_json(t.map)}});
  }
  if (m == "--untranspose") {
    auto d = in.docs(4, "p f q φ");
    Poly p = as_poly(d[0]), q = as_poly(d[2]);
    FinFn f = as_fn(d[1]);
    PolyMor phi = as_mor(d[3]);
    return doc(to_json(frown_untranspose(p, f, q, retarget(phi, frown(p, f, q), phi.cod(), "φ"))));
  }
  if (m == "--tensor-iso") {
    auto d = in.docs(6, "p1 f1 q1 p2 f2 q2");
    return doc(to_json(frown_tensor_iso(as_poly(d[0]), as_fn(d[1]), as_poly(d[2]), as_poly(d[3]), as_fn(d[4]),
                                        as_poly(d[5]))));
  }
  auto d = in.docs(3, "p f q");
  return doc(to_json(frown(as_poly(d[0]), as_fn(d[1]), as_poly(d[2]))));
}

Result cmd_homs(const Invocation& in) {
  const std::string m = in.mode();
  if (m == "--classify") {
    auto d = in.docs(1, "φ");
    Classification c = classify(as_mor(d[0]));
    return doc(Json{{"kind", "classification"}, {"cartesian", c.cartesian}, {"vertical", c.vertical}, {"iso", c.iso}});
  }
  if (m == "--factorize") {
    auto d = in.docs(1, "φ");
    VertCart f = vert_cart_factorize(as_mor(d[0]));
    return doc(Json{{"kind", "factorization"},
                    {"middle", to_json(f.middle)},
                    {"vertical", to_json(f.vertical)},
                    {"cartesian", to_json(f.cartesian)}});
  }
  if (m == "--limit") {
    auto d = in.docs(1, "a diagram");
    Limit l = cartesian_limit(diagram_from(d[0]));
    Json legs = Json::array();
    for (const PolyMor& leg : l.legs) legs.push_back(to_json(leg));
    return doc(Json{{"kind", "limit"}, {"object", to_json(l.object)}, {"legs", legs}, {"coherent", l.coherent}});
  }
  auto d = in.docs(2, "p q");
  Poly p = as_poly(d[0]), q = as_poly(d[1]);
  if (m == "--iso") {
    auto iso = iso_check(p, q);
    return doc(iso ? to_json(*iso) : Json(nullptr));
  }
  if (in.count_only) return {std::to_string(hom_count(p, q)) + "\n", true};
  Json mors = Json::array();
  for (const PolyMor& phi : hom_enumerate(p, q)) mors.push_back(to_json(phi));
  return doc(Json{{"kind", "homset"}, {"count", mors.size()}, {"morphisms", mors}});
}

Result cmd_eval(const Invocation& in) {
  const std::string m = in.mode();
  if (m == "--strength") {
    auto d = in.docs(3, "p A B");
    return doc(to_json(strength(as_poly(d[0]), as_set(d[1]), as_set(d[2]))));
  }
  if (m == "--scalar") {
    auto d = in.docs(2, "A q");
    return doc(to_json(scalar(as_set(d[0]), as_poly(d[1]))));
  }
  if (m == "--total") {
    auto d = in.docs(1, "p");
    PStar s = p_star(as_poly(d[0]));
    return doc(Json{{"kind", "pstar"}, {"poly", to_json(s.poly)}, {"proj", to_json(s.proj)}});
  }
  if (m == "--pullback") {
    auto d = in.docs(2, "f g");
    Json j = pullback_json(pullback(as_fn(d[0]), as_fn(d[1])));
    j["kind"] = "pullback";
    return doc(j);
  }
  if (m == "--pi") {
    auto d = in.docs(2, "f g");
    if (d[0].kind() == "pshmor") {
      psh::DependentProduct pi = psh::presheaf_pi(as_pshmor(d[0]), as_pshmor(d[1]));
      return doc(Json{{"kind", "presheaf-pi"}, {"object", to_json(pi.object)}, {"proj", to_json(pi.proj)}});
    }
    DependentProduct pi = pi_finset(as_fn(d[0]), as_fn(d[1]));
    return doc(Json{{"kind", "dependent-product"}, {"object", to_json(pi.object)}, {"proj", to_json(pi.proj)}});
  }
  if (m == "--distributivity") {
    auto d = in.docs(2, "f g");
    DistributivityPullback dp = distributivity_pullback(as_fn(d[0]), as_fn(d[1]));
    return doc(Json{{"kind", "distributivity-pullback"},
                    {"pi", {{"object", to_json(dp.pi.object)}, {"proj", to_json(dp.pi.proj)}}},
                    {"delta", pullback_json(dp.delta)},
                    {"counit", to_json(dp.counit)}});
  }
  auto d = in.docs(2, "p X, p h, or φ X");
  if (d[0].kind() == "polymor") return doc(to_json(eval_nat(as_mor(d[0]), as_set(d[1]))));
  Poly p = as_poly(d[0]);
  if (d[1].kind() == "finfn") return doc(to_json(eval_functor_map(p, as_fn(d[1]))));
  return doc(to_json(eval_functor(p, as_set(d[1]))));
}

Result cmd_cat2com(const Invocation& in) {
  const std::string m = in.mode();
  if (m == "--discrete") return doc(to_json(discrete_comonoid(as_set(in.docs(1, "A")[0]))));
  if (m == "--pstar") return doc(to_json(pstar_comonoid(as_poly(in.docs(1, "p")[0]))));
  if (m == "--selfclosure") return doc(to_json(selfclosure_comonoid(as_poly(in.docs(1, "p")[0]))));
  return doc(to_json(cat_to_comonoid(as_cat(in.docs(1, "a category")[0]))));
}

Result cmd_com2cat(const Invocation& in) {
  const std::string m = in.mode();
  if (m == "--check") return checked(comonoid_check(as_comonoid(in.docs(1, "a comonoid")[0])));
  if (m == "--validate") {
    auto d = in.docs(1, "a category or presheaf");
    if (d[0].kind() == "presheaf") {
      return checked(in_file(d[0], [&] { return io::presheaf_from_json(d[0].json, "", false); }).validate());
    }
    return checked(in_file(d[0], [&] { return io::fincat_from_json(d[0].json, "", false); }).validate());
  }
  return doc(to_json(comonoid_to_cat(as_comonoid(in.docs(1, "a comonoid")[0]))));
}

Result cmd_cofunctor_check(const Invocation& in) {
  auto d = in.docs(3, "φ c d");
  Comonoid c = as_comonoid(d[1]), e = as_comonoid(d[2]);
  PolyMor phi = retarget(as_mor(d[0]), c.carrier, e.carrier, "φ");
  CofunctorReport r = cofunctor_check(phi, c, e);
  Json j{{"kind", "cofunctor-report"},
         {"homomorphism", report(r.homomorphism)},
         {"cofunctor", report(r.cofunctor)},
         {"agree", r.agree()}};
  return {io::dump(j), r.agree() && r.homomorphism.ok()};
}

Result cmd_coalg_check(const Invocation& in) { return checked(coalg_check(as_coalg(in.docs(1, "a coalgebra")[0]))); }

Result cmd_opfib(const Invocation& in) {
  if (in.mode() == "--inverse") {
    Comonoid base;
    Opfibration o = opfib_from(in.docs(1, "an opfibration")[0], base);
    return doc(to_json(opfib_to_coalg(o, base)));
  }
  Coalgebra x = as_coalg(in.docs(1, "a coalgebra")[0]);
  return doc(opfib_json(coalg_to_opfib(x), x.c));
}

Result cmd_typed_compose(const Invocation& in) {
  const std::string m = in.mode();
  if (m == "--to-bicomod") return doc(to_json(bicomod_from_typed(as_typed(in.docs(1, "a typed polynomial")[0]))));
  if (m == "--from-bicomod") return doc(to_json(typed_from_bicomod(as_bicomod(in.docs(1, "a bicomodule")[0]))));
  auto d = in.docs(2, "p q");
  return doc(to_json(typed_compose(as_typed(d[0]), as_typed(d[1]))));
}

Result cmd_bicomod_compose(const Invocation& in) {
  const std::string m = in.mode();
  if (m == "--check") return checked(bicomodule_check(as_bicomod(in.docs(1, "a bicomodule")[0])));
  if (m == "--check-left" || m == "--check-right") {
    // Shape-check the coaction only: the file's other laws are reported, not enforced.
    auto d = in.docs(1, "a bicomodule");
    const Json& j = d[0].json;
    return in_file(d[0], [&] {
      const bool left = m == "--check-left";
      auto side_comonoid = [&](const char* name) {
        const Json& v = j.at(name);
        return io::comonoid_from_json(v.is_string() ? d[0].resolve(v.get<std::string>()) : v, std::string("/") + name,
                                      d[0].resolve);
      };
      Comonoid c = side_comonoid(left ? "left" : "right");
      Poly carrier = io::poly_from_json(j.at("carrier"), "/carrier");
      Json coaction = j.at(left ? "left_coaction" : "right_coaction");
      PolyMor k = io::polymor_from_json(coaction, left ? "/left_coaction" : "/right_coaction");
      Poly cod = left ? compose_tri(c.carrier, carrier) : compose_tri(carrier, c.carrier);
      return checked(comodule_check(c, retarget(k, carrier, cod, "coaction"), left ? Side::Left : Side::Right));
    });
  }
  auto d = in.docs(2, "m n");
  return doc(to_json(bicomod_compose(as_bicomod(d[0]), as_bicomod(d[1]), in.general)));
}

Result cmd_migrate(const Invocation& in) {
  if (in.mode() == "--hom") {
    auto d = in.docs(4, "m x y h");
    return doc(to_json(migrate_hom(as_bicomod(d[0]), as_coalg(d[1]), as_coalg(d[2]), as_fn(d[3]))));
  }
  auto d = in.docs(2, "m x");
  return doc(to_json(migrate(as_bicomod(d[0]), as_coalg(d[1]))));
}

Result cmd_laws(const Invocation& in) {
  in.docs(0, "no files");
  auto cases = harness::build_corpus(in.cfg);
  auto records = harness::run(cases, in.cfg, in.serial ? harness::Mode::Serial : harness::Mode::Parallel);
  return {harness::report(records, in.cfg), harness::summarize(records).fail == 0};
}

Result cmd_roundtrip(const Invocation& in) {
  auto d = in.docs(1, "a document");
  return doc(in_file(d[0], [&] { return io::roundtrip(d[0].json, d[0].resolve); }));
}

using Handler = Result (*)(const Invocation&);

struct Registered {
  Route route;
  Handler handler;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r{
      {{"compose", "p q → p ◁ q;  φ ψ → ψ ∘ φ;  --unit → y",
        {{"compose_tri", ""}, {"mor_compose", ""}, {"identity_y", "--unit"}}},
       cmd_compose},
      {{"tensor", "p q → p ⊗ q;  φ ψ → φ ⊗ ψ", {{"tensor", ""}}}, cmd_tensor},
      {{"interchange", "p1 p2 q1 q2 → (p1◁p2)⊗(q1◁q2) → (p1⊗q1)◁(p2⊗q2)", {{"interchange", ""}}}, cmd_interchange},
      {{"closure", "p q → [p,q];  --eval p q;  --pair p q;  --transpose φ p q;  --untranspose ψ q r;  --tri-lax p1 q1 p2 q2",
        {{"closure", ""},
         {"closure_eval", "--eval"},
         {"closure_pair", "--pair"},
         {"closure_transpose", "--transpose"},
         {"closure_untranspose", "--untranspose"},
         {"closure_tri_lax", "--tri-lax"}}},
       cmd_closure},
      {{"coclosure", "p q → ⟨p|q⟩;  --transpose ψ r q;  --untranspose φ p q;  --tensor-map p1 q1 p2 q2",
        {{"right_coclosure", ""},
         {"rc_transpose", "--transpose"},
         {"rc_untranspose", "--untranspose"},
         {"coclosure_tensor_map", "--tensor-map"}}},
       cmd_coclosure},
      {{"frown", "p f q → p ⌢_f q;  --transpose ψ q r;  --untranspose p f q φ;  --tensor-iso p1 f1 q1 p2 f2 q2",
        {{"frown", ""},
         {"frown_transpose", "--transpose"},
         {"frown_untranspose", "--untranspose"},
         {"frown_tensor_iso", "--tensor-iso"}}},
       cmd_frown},
      {{"homs", "p q → Hom(p, q) [--count-only];  --classify φ;  --factorize φ;  --iso p q;  --limit diagram",
        {{"hom_enumerate", ""},
         {"classify", "--classify"},
         {"vert_cart_factorize", "--factorize"},
         {"iso_check", "--iso"},
         {"cartesian_limit", "--limit"}}},
       cmd_homs},
      {{"eval",
        "p X → P(p)(X);  p h → P(p)(h);  φ X → P(φ)_X;  --strength p A B;  --scalar A q;  --total p;  "
        "--pullback f g;  --pi f g (finfn or pshmor);  --distributivity f g",
        {{"eval_functor", ""},
         {"eval_functor_mor", ""},
         {"eval_nat", ""},
         {"strength", "--strength"},
         {"scalar", "--scalar"},
         {"p_star", "--total"},
         {"pullback", "--pullback"},
         {"pi_finset", "--pi"},
         {"presheaf_pi", "--pi"},
         {"distributivity_pullback", "--distributivity"}}},
       cmd_eval},
      {{"cat2com", "category → comonoid;  --discrete A;  --pstar p;  --selfclosure p",
        {{"cat_to_comonoid", ""},
         {"discrete_comonoid", "--discrete"},
         {"pstar_comonoid", "--pstar"},
         {"selfclosure_comonoid", "--selfclosure"}}},
       cmd_cat2com},
      {{"com2cat", "comonoid → category;  --check comonoid;  --validate category-or-presheaf",
        {{"comonoid_to_cat", ""},
         {"comonoid_check", "--check"},
         {"fincat_validate", "--validate"},
         {"presheaf_validate", "--validate"}}},
       cmd_com2cat},
      {{"cofunctor-check", "φ c d → homomorphism and cofunctor reports", {{"cofunctor_check", ""}}}, cmd_cofunctor_check},
      {{"coalg-check", "coalgebra → report", {{"coalg_check", ""}}}, cmd_coalg_check},
      {{"opfib", "coalgebra → discrete opfibration;  --inverse opfibration",
        {{"coalg_to_opfib", ""}, {"opfib_to_coalg", "--inverse"}}},
       cmd_opfib},
      {{"typed-compose", "p q → p ∘ q;  --to-bicomod t;  --from-bicomod b",
        {{"typed_compose", ""}, {"bicomod_from_typed", "--to-bicomod"}, {"typed_from_bicomod", "--from-bicomod"}}},
       cmd_typed_compose},
      {{"bicomod-compose", "m n → m ◁_d n [--general];  --check b;  --check-left b;  --check-right b",
        {{"bicomod_compose", ""},
         {"bicomodule_check", "--check"},
         {"comodule_check", "--check-left"},
         {"comodule_check", "--check-right"}}},
       cmd_bicomod_compose},
      {{"migrate", "m x → m ◁_d x;  --hom m x y h", {{"migrate", ""}, {"migrate_hom", "--hom"}}}, cmd_migrate},
      {{"laws", "run the law harness: --seed --max-pos --max-dir --budget --suites --only --mutant --serial",
        {{"laws_run", ""}}},
       cmd_laws},
      {{"roundtrip", "document → canonical document", {{"io_roundtrip", ""}}}, cmd_roundtrip},
  };
  return r;
}

/// Registers every subcommand on `app`; `invocations` receives one slot per subcommand.
void build(CLI::App& app, std::map<std::string, Invocation>& invocations) {
  app.require_subcommand(1);
  for (const Registered& reg : registry()) {
    const std::string name(reg.route.subcommand);
    Invocation& in = invocations[name];
    in.subcommand = name;
    in.cfg.budget = Budget::current();
    CLI::App* sub = app.add_subcommand(name, std::string(reg.route.usage));
    sub->add_option("files", in.files, "input documents");
    sub->add_option("-o,--output", in.output, "write the result to FILE instead of stdout");
    sub->add_option("--budget", in.cfg.budget, "candidate budget (default: POLYCALC_BUDGET or 1000000)")
        ->check(CLI::PositiveNumber);
    std::set<std::string> flags;
    for (const Entry& e : reg.route.entries)
      if (!e.flag.empty()) flags.insert(std::string(e.flag));
    for (const std::string& f : flags) {
      in.modes[f] = false;
      sub->add_flag(f, in.modes[f]);
    }
    if (name == "homs") sub->add_flag("--count-only", in.count_only, "print |Hom(p, q)| only");
    if (name == "bicomod-compose") {
      sub->add_flag("--general", in.general, "allow non-cartesian coactions (checked after the fact)");
    }
    if (name == "laws") {
      sub->add_option("--seed", in.cfg.seed);
      sub->add_option("--max-pos", in.cfg.max_positions);
      sub->add_option("--max-dir", in.cfg.max_directions);
      sub->add_option("--suites", in.cfg.suites)->delimiter(',');
      sub->add_option("--only", in.cfg.only, "keep cases whose id starts with this prefix");
      sub->add_flag("--mutant", in.cfg.inject_mutant, "add the mutant comonoid fixture");
      sub->add_flag("--serial", in.serial, "run cases on one thread");
    }
  }
}

}  // namespace

const std::vector<Route>& routes() {
  static const std::vector<Route> r = [] {
    std::vector<Route> out;
    for (const Registered& reg : registry()) out.push_back(reg.route);
    return out;
  }();
  return r;
}

const std::vector<std::string_view>& library_ops() {
  static const std::vector<std::string_view> ops{
      // base-cats
      "pullback", "pi_finset", "distributivity_pullback", "presheaf_pi", "fincat_validate", "presheaf_validate",
      // poly-core
      "identity_y", "mor_compose", "classify", "vert_cart_factorize", "compose_tri", "tensor", "eval_functor",
      "eval_functor_mor", "eval_nat", "strength", "scalar", "p_star", "cartesian_limit", "iso_check", "hom_enumerate",
      // poly-structures
      "interchange", "closure", "closure_eval", "closure_pair", "closure_transpose", "closure_untranspose",
      "right_coclosure", "rc_transpose", "rc_untranspose", "frown", "frown_transpose", "frown_untranspose",
      "closure_tri_lax", "coclosure_tensor_map", "frown_tensor_iso",
      // comonoid-cat
      "comonoid_check", "cat_to_comonoid", "comonoid_to_cat", "cofunctor_check", "discrete_comonoid",
      "pstar_comonoid", "selfclosure_comonoid",
      // coalg-bicomod
      "coalg_check", "coalg_to_opfib", "opfib_to_coalg", "comodule_check", "bicomodule_check", "bicomod_from_typed",
      "typed_from_bicomod", "typed_compose", "bicomod_compose", "migrate", "migrate_hom"};
  return ops;
}

std::string self_test() {
  std::string problems;
  const std::set<std::string_view> tool_ops{"laws_run", "io_roundtrip"};
  std::map<std::string_view, std::set<std::string_view>> owners;
  for (const Route& r : routes())
    for (const Entry& e : r.entries) owners[e.op].insert(r.subcommand);
  for (std::string_view op : library_ops()) {
    auto it = owners.find(op);
    if (it == owners.end()) problems += std::string(op) + " is not reachable\n";
    else if (it->second.size() != 1) problems += std::string(op) + " is reachable from several subcommands\n";
  }
  for (const auto& [op, subs] : owners) {
    const bool known = tool_ops.count(op) ||
                       std::find(library_ops().begin(), library_ops().end(), op) != library_ops().end();
    if (!known) problems += std::string(op) + " is not an operation\n";
  }
  CLI::App app;
  std::map<std::string, Invocation> invocations;
  build(app, invocations);
  for (const Route& r : routes()) {
    CLI::App* sub = app.get_subcommand(std::string(r.subcommand));
    for (const Entry& e : r.entries) {
      if (e.flag.empty()) continue;
      try {
        sub->get_option(std::string(e.flag));
      } catch (const CLI::Error&) {
        problems += std::string(r.subcommand) + " lacks " + std::string(e.flag) + "\n";
      }
    }
  }
  return problems;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Polynomial functors, comonoids and bicomodules over finite sets", "polycalc");
  bool want_self_test = false;
  app.add_flag("--self-test", want_self_test, "check that the dispatch table covers every operation once");
  std::map<std::string, Invocation> invocations;
  build(app, invocations);
  app.require_subcommand(0, 1);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "polycalc: " << e.what() << "\n";
    return 2;
  }
  if (want_self_test) {
    const std::string problems = self_test();
    if (!problems.empty()) {
      err << problems;
      return 1;
    }
    out << "dispatch: " << library_ops().size() << " operations over " << routes().size()
        << " subcommands, each reachable exactly once\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    err << "polycalc: a subcommand is required\n" << app.help();
    return 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  const Invocation& in = invocations.at(name);
  Handler handler = nullptr;
  for (const Registered& reg : registry())
    if (reg.route.subcommand == name) handler = reg.handler;
  try {
    Result r;
    {
      ScopedBudget scope(in.cfg.budget);
      r = handler(in);
    }
    if (in.output.empty()) {
      out << r.text;
    } else {
      std::ofstream f(in.output, std::ios::binary);
      if (!f) throw DomainError("cannot write " + in.output);
      f << r.text;
    }
    return r.ok ? 0 : 1;
  } catch (const UsageError& e) {
    err << "polycalc: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "polycalc " << name << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace polycalc::cli
