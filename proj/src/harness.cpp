#include "polycalc/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "polycalc/bicomodule.hpp"
#include "polycalc/coalgebra.hpp"
#include "polycalc/corpus.hpp"
#include "polycalc/error.hpp"
#include "polycalc/functor.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly_ops.hpp"
#include "polycalc/psh_poly.hpp"
#include "polycalc/slice.hpp"
#include "polycalc/structures.hpp"

namespace polycalc::harness {
namespace {

using io::Json;
using io::to_json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Builder {
 public:
  Builder(const Config& cfg, std::vector<Case>& out) : cfg_(cfg), out_(out) {}

  const Config& cfg() const { return cfg_; }
  std::size_t P() const { return cfg_.max_positions; }
  std::size_t D() const { return cfg_.max_directions; }
  /// Bounds for suites that build threefold products.
  std::size_t P2() const { return std::min<std::size_t>(cfg_.max_positions, 2); }
  std::size_t D2() const { return std::min<std::size_t>(cfg_.max_directions, 2); }

  corpus::Rng rng(const std::string& group, std::size_t index) const {
    return corpus::Rng(splitmix64(splitmix64(cfg_.seed ^ fnv1a(group)) + index));
  }

  void add(const std::string& suite, const std::string& group, std::size_t index, Json inputs,
           std::function<Verdict()> check) {
    char num[16];
    std::snprintf(num, sizeof num, "%04zu", index);
    out_.push_back({suite, suite + "/" + group + "/" + num, std::move(inputs), std::move(check)});
  }

 private:
  const Config& cfg_;
  std::vector<Case>& out_;
};

void expect(Verdict& v, bool ok, const std::string& law, const std::string& witness) {
  if (!ok) v.fail(law, witness);
}

void expect_eq(Verdict& v, const PolyMor& a, const PolyMor& b, const std::string& law) {
  if (!(a == b)) v.fail(law, first_difference(a, b));
}

PolyMor start(const Poly& p) { return PolyMor::identity(p.materialized()); }

Poly P(const std::string& s) { return Poly::parse(s); }

// ---------------------------------------------------------------- monoidal

Verdict functor_oracle(const Poly& p, const Poly& q) {
  Verdict v;
  for (std::uint64_t n = 0; n <= 3; ++n) {
    std::uint64_t inner = 0, expected = 0;
    for (std::size_t a : q.arities()) inner = sat_add(inner, sat_pow(n, a));
    for (std::size_t a : p.arities()) expected = sat_add(expected, sat_pow(inner, a));
    Budget::charge(sat_mul(expected, 2), "functor oracle");
    const FinSet x = FinSet::range(n);
    const FinSet lhs = eval_functor(compose_tri(p, q), x);
    const FinSet rhs = eval_functor(p, eval_functor(q, x));
    const std::string at = "|X| = " + std::to_string(n);
    expect(v, lhs.size() == expected, "size of P(p◁q)(X)",
           at + ": " + std::to_string(lhs.size()) + " vs " + std::to_string(expected));
    expect(v, rhs.size() == expected, "size of P(p)(P(q)(X))",
           at + ": " + std::to_string(rhs.size()) + " vs " + std::to_string(expected));
    std::set<Label> image;
    for (const Label& e : lhs) {
      const Label u = unfold_composite(q, e);
      if (!rhs.contains(u)) {
        v.fail("canonical bijection", at + ": " + e.to_string() + " unfolds outside P(p)(P(q)(X))");
        break;
      }
      if (!(fold_composite(u) == e)) {
        v.fail("canonical bijection", at + ": fold does not invert unfold at " + e.to_string());
        break;
      }
      image.insert(u);
    }
    expect(v, image.size() == rhs.size(), "canonical bijection", at + ": not a bijection");
    if (!v.ok()) return v;
  }
  return v;
}

Verdict monoidal_triple(const Poly& p, const Poly& q, const Poly& r, const Poly& s) {
  Verdict v;
  const Poly y = Poly::y();
  // ◁ structure.
  for (const Poly& x : {p, q, r}) {
    PolyMor l = tri_left_unitor(x).materialize();
    PolyMor rr = tri_right_unitor(x).materialize();
    expect(v, l.is_iso(), "◁ left unitor iso", x.to_string());
    expect(v, rr.is_iso(), "◁ right unitor iso", x.to_string());
    expect_eq(v, then(l, tri_left_unitor_inv(x)), start(l.dom()), "◁ left unitor inverse");
    expect_eq(v, then(tri_left_unitor_inv(x).materialize(), tri_left_unitor(x)), start(x), "◁ left unitor inverse");
    expect_eq(v, then(rr, tri_right_unitor_inv(x)), start(rr.dom()), "◁ right unitor inverse");
    expect_eq(v, then(tri_right_unitor_inv(x).materialize(), tri_right_unitor(x)), start(x), "◁ right unitor inverse");
  }
  PolyMor al = tri_associator(p, q, r).materialize();
  expect(v, al.is_iso(), "◁ associator iso", "");
  expect_eq(v, then(al, tri_associator_inv(p, q, r)), start(al.dom()), "◁ associator inverse");
  expect_eq(v, then(tri_associator_inv(p, q, r).materialize(), tri_associator(p, q, r)),
            start(compose_tri(p, compose_tri(q, r))), "◁ associator inverse");
  {
    PolyMor st = start(compose_tri(compose_tri(p, y), r));
    PolyMor lhs = then(then(st, tri_associator(p, y, r)), tri(lazy_identity(p), tri_left_unitor(r)));
    PolyMor rhs = then(st, tri(tri_right_unitor(p), lazy_identity(r)));
    expect_eq(v, lhs, rhs, "◁ triangle");
  }
  {
    PolyMor st = start(compose_tri(compose_tri(compose_tri(p, q), r), s));
    PolyMor top = then(then(st, tri_associator(compose_tri(p, q), r, s)), tri_associator(p, q, compose_tri(r, s)));
    PolyMor bottom = then(then(then(st, tri(tri_associator(p, q, r), lazy_identity(s))),
                               tri_associator(p, compose_tri(q, r), s)),
                          tri(lazy_identity(p), tri_associator(q, r, s)));
    expect_eq(v, top, bottom, "◁ pentagon");
  }
  // ⊗ structure.
  PolyMor sig = braiding(p, q).materialize();
  expect(v, sig.is_iso(), "braiding iso", "");
  expect_eq(v, then(sig, braiding(q, p)), start(tensor(p, q)), "braiding symmetry");
  PolyMor lu = tensor_left_unitor(p).materialize();
  expect(v, lu.is_iso(), "⊗ left unitor iso", "");
  expect_eq(v, then(lu, tensor_left_unitor_inv(p)), start(lu.dom()), "⊗ left unitor inverse");
  PolyMor ru = tensor_right_unitor(p).materialize();
  expect(v, ru.is_iso(), "⊗ right unitor iso", "");
  expect_eq(v, then(ru, tensor_right_unitor_inv(p)), start(ru.dom()), "⊗ right unitor inverse");
  PolyMor ta = tensor_associator(p, q, r).materialize();
  expect(v, ta.is_iso(), "⊗ associator iso", "");
  expect_eq(v, then(ta, tensor_associator_inv(p, q, r)), start(ta.dom()), "⊗ associator inverse");
  {
    PolyMor st = start(tensor(tensor(p, q), r));
    PolyMor lhs =
        then(then(then(st, tensor_associator(p, q, r)), braiding(p, tensor(q, r))), tensor_associator(q, r, p));
    PolyMor rhs = then(then(then(st, tensor(braiding(p, q), lazy_identity(r))), tensor_associator(q, p, r)),
                       tensor(lazy_identity(q), braiding(p, r)));
    expect_eq(v, lhs, rhs, "hexagon");
  }
  return v;
}

void suite_monoidal(Builder& b) {
  for (std::size_t i = 0; i < 240; ++i) {
    auto rng = b.rng("monoidal/functor", i);
    Poly p = corpus::random_poly(rng, b.P(), b.D());
    Poly q = corpus::random_poly(rng, b.P(), b.D());
    b.add("monoidal", "functor", i, Json{{"p", to_json(p)}, {"q", to_json(q)}}, [p, q] { return functor_oracle(p, q); });
  }
  for (std::size_t i = 0; i < 100; ++i) {
    auto rng = b.rng("monoidal/triple", i);
    Poly p = corpus::random_poly(rng, b.P2(), b.D2());
    Poly q = corpus::random_poly(rng, b.P2(), b.D2());
    Poly r = corpus::random_poly(rng, b.P2(), b.D2());
    // The pentagon's fourth factor has at most one position.
    Poly s = corpus::random_poly(rng, std::min<std::size_t>(b.P(), 1), b.D2());
    b.add("monoidal", "triple", i, Json{{"p", to_json(p)}, {"q", to_json(q)}, {"r", to_json(r)}, {"s", to_json(s)}},
          [p, q, r, s] { return monoidal_triple(p, q, r, s); });
  }
}

// ---------------------------------------------------------------- duoidal

// Morphisms x → x2, at most three of them, spread over the canonical order.
std::vector<PolyMor> some_homs(const Poly& x, const Poly& x2) {
  auto all = hom_enumerate(x, x2);
  if (all.size() <= 3) return all;
  return {all.front(), all[all.size() / 2], all.back()};
}

Verdict duoidal_case(const std::vector<Poly>& ps) {
  const Poly &p1 = ps[0], &p2 = ps[1], &q1 = ps[2], &q2 = ps[3], &p1b = ps[4], &q2b = ps[5], &r1 = ps[6],
             &r2 = ps[7], &p3 = ps[8], &q3 = ps[9];
  Verdict v;
  PolyMor z = interchange(p1, p2, q1, q2).materialize();
  expect(v, classify(z).cartesian, "interchange is cartesian", "");
  for (std::size_t i = 0; i < z.dom().position_count(); ++i) {
    const Label& src = z.dom().positions()[i];
    const Label& img = z.on_position(i);
    const bool ok = img.at(0) == Label::pair(src.at(0).at(0), src.at(1).at(0)) &&
                    img.at(1).size() == src.at(0).at(1).size() * src.at(1).at(1).size();
    if (!ok) {
      v.fail("interchange on positions", src.to_string() + " ↦ " + img.to_string());
      break;
    }
  }
  {
    PolyMor st = start(tensor(compose_tri(p1, p2), compose_tri(q1, q2)));
    for (const PolyMor& f : some_homs(p1, p1b))
      for (const PolyMor& g : some_homs(q2, q2b)) {
        LazyMor idp2 = lazy_identity(p2), idq1 = lazy_identity(q1);
        PolyMor lhs = then(then(st, tensor(tri(LazyMor::of(f), idp2), tri(idq1, LazyMor::of(g)))),
                           interchange(p1b, p2, q1, q2b));
        PolyMor rhs = then(then(st, interchange(p1, p2, q1, q2)),
                           tri(tensor(LazyMor::of(f), idq1), tensor(idp2, LazyMor::of(g))));
        expect_eq(v, lhs, rhs, "interchange naturality");
      }
  }
  {
    PolyMor st = start(tensor(tensor(compose_tri(p1, p2), compose_tri(q1, q2)), compose_tri(r1, r2)));
    PolyMor lhs = then(then(then(st, tensor(interchange(p1, p2, q1, q2), lazy_identity(compose_tri(r1, r2)))),
                            interchange(tensor(p1, q1), tensor(p2, q2), r1, r2)),
                       tri(tensor_associator(p1, q1, r1), tensor_associator(p2, q2, r2)));
    PolyMor rhs =
        then(then(then(st, tensor_associator(compose_tri(p1, p2), compose_tri(q1, q2), compose_tri(r1, r2))),
                  tensor(lazy_identity(compose_tri(p1, p2)), interchange(q1, q2, r1, r2))),
             interchange(p1, p2, tensor(q1, r1), tensor(q2, r2)));
    expect_eq(v, lhs, rhs, "interchange and ⊗ associator");
  }
  {
    Poly l = compose_tri(compose_tri(p1, p2), p3), r = compose_tri(compose_tri(q1, q2), q3);
    PolyMor st = start(tensor(l, r));
    PolyMor lhs = then(then(then(st, interchange(compose_tri(p1, p2), p3, compose_tri(q1, q2), q3)),
                            tri(interchange(p1, p2, q1, q2), lazy_identity(tensor(p3, q3)))),
                       tri_associator(tensor(p1, q1), tensor(p2, q2), tensor(p3, q3)));
    PolyMor rhs = then(then(then(st, tensor(tri_associator(p1, p2, p3), tri_associator(q1, q2, q3))),
                            interchange(p1, compose_tri(p2, p3), q1, compose_tri(q2, q3))),
                       tri(lazy_identity(tensor(p1, q1)), interchange(p2, p3, q2, q3)));
    expect_eq(v, lhs, rhs, "interchange and ◁ associator");
  }
  return v;
}

void suite_duoidal(Builder& b) {
  static const char* names[] = {"p1", "p2", "q1", "q2", "p1'", "q2'", "r1", "r2", "p3", "q3"};
  for (std::size_t i = 0; i < 50; ++i) {
    auto rng = b.rng("duoidal/quadruple", i);
    std::vector<Poly> ps;
    for (int k = 0; k < 8; ++k) ps.push_back(corpus::random_poly(rng, b.P2(), b.D2()));
    for (int k = 0; k < 2; ++k) ps.push_back(corpus::random_poly(rng, std::min<std::size_t>(b.P(), 1), b.D2()));
    Json in = Json::object();
    for (std::size_t k = 0; k < ps.size(); ++k) in[names[k]] = to_json(ps[k]);
    b.add("duoidal", "quadruple", i, std::move(in), [ps] { return duoidal_case(ps); });
  }
}

// ---------------------------------------------------------------- closure

const std::vector<std::string>& pool() {
  static const std::vector<std::string> p{"0", "1", "y", "y+1", "2y", "y^2"};
  return p;
}

Verdict closure_triple(const Poly& p, const Poly& q, const Poly& r) {
  Verdict v;
  auto left = hom_enumerate(tensor(p, q), r);
  auto right = hom_enumerate(p, closure(q, r));
  expect(v, left.size() == right.size(), "hom-set sizes",
         std::to_string(left.size()) + " vs " + std::to_string(right.size()));
  for (const PolyMor& phi : left) {
    PolyMor t = closure_transpose(phi, p, q);
    expect_eq(v, closure_untranspose(t, q, r), phi, "untranspose ∘ transpose");
    PolyMor via = then(then(then(start(tensor(p, q)), braiding(p, q)), tensor(lazy_identity(q), LazyMor::of(t))),
                       closure_eval(q, r));
    expect_eq(v, via, phi, "evaluation recovers the morphism");
    if (!v.ok()) return v;
  }
  for (const PolyMor& psi : right) {
    expect_eq(v, closure_transpose(closure_untranspose(psi, q, r), p, q), psi, "transpose ∘ untranspose");
    if (!v.ok()) return v;
  }
  return v;
}

Verdict closure_triangles(const Poly& p, const Poly& q) {
  Verdict v;
  PolyMor eta = closure_pair(p, q);
  PolyMor first = then(start(tensor(p, q)), tensor(lazy_identity(p), LazyMor::of(eta)));
  expect_eq(v, then(first, closure_eval(p, tensor(p, q))), start(tensor(p, q)), "triangle ev ∘ (p ⊗ η)");
  Poly c = closure(p, q);
  PolyMor eta_c = closure_pair(p, c);
  PolyMor ev = closure_eval(p, q).materialize();
  expect_eq(v, mor_compose(eta_c, closure_map(p, ev)), PolyMor::identity(c), "triangle [p, ev] ∘ η");
  return v;
}

void suite_closure(Builder& b) {
  const auto& names = pool();
  std::size_t i = 0;
  for (const auto& a : names)
    for (const auto& c : names)
      for (const auto& d : names) {
        Poly p = P(a), q = P(c), r = P(d);
        b.add("closure", "adjunction", i++, Json{{"p", a}, {"q", c}, {"r", d}},
              [p, q, r] { return closure_triple(p, q, r); });
      }
  i = 0;
  for (const auto& a : names)
    for (const auto& c : names) {
      Poly p = P(a), q = P(c);
      b.add("closure", "triangle", i++, Json{{"p", a}, {"q", c}}, [p, q] { return closure_triangles(p, q); });
    }
}

// ---------------------------------------------------------------- coclosure

Verdict coclosure_triple(const Poly& p, const Poly& q, const Poly& r) {
  Verdict v;
  auto left = hom_enumerate(p, compose_tri(r, q));
  auto right = hom_enumerate(right_coclosure(p, q), r);
  expect(v, left.size() == right.size(), "right coclosure hom-set sizes",
         std::to_string(left.size()) + " vs " + std::to_string(right.size()));
  for (const PolyMor& psi : left) expect_eq(v, rc_untranspose(rc_transpose(psi, q), p, q), psi, "rc round trip");
  for (const PolyMor& phi : right) expect_eq(v, rc_transpose(rc_untranspose(phi, p, q), q), phi, "rc round trip");
  if (!v.ok()) return v;

  std::map<std::vector<std::size_t>, std::size_t> by_f;
  for (const PolyMor& psi : hom_enumerate(p, compose_tri(q, r))) {
    FrownTranspose t = frown_transpose(psi);
    ++by_f[t.f.table()];
    expect_eq(v, frown_untranspose(p, t.f, q, t.map), psi, "frown round trip");
  }
  for (const FinFn& f : all_functions(p.positions(), q.positions())) {
    auto homs = hom_enumerate(frown(p, f, q), r);
    const std::size_t n = by_f.count(f.table()) ? by_f.at(f.table()) : 0;
    expect(v, n == homs.size(), "frown partition",
           "f = " + to_json(f)["map"].dump() + ": " + std::to_string(n) + " vs " +
               std::to_string(homs.size()));
    for (const PolyMor& phi : homs) {
      FrownTranspose t = frown_transpose(frown_untranspose(p, f, q, phi));
      expect(v, t.f == f, "frown index recovered", "");
      expect_eq(v, t.map, phi, "frown round trip");
    }
    if (!v.ok()) return v;
  }
  return v;
}

void suite_coclosure(Builder& b) {
  const auto& names = pool();
  std::size_t i = 0;
  for (const auto& a : names)
    for (const auto& c : names)
      for (const auto& d : names) {
        Poly p = P(a), q = P(c), r = P(d);
        b.add("coclosure", "adjunction", i++, Json{{"p", a}, {"q", c}, {"r", d}},
              [p, q, r] { return coclosure_triple(p, q, r); });
      }
}

// ---------------------------------------------------------------- comonoid

Verdict category_round_trip(const FinCat& cat) {
  Verdict v;
  v.merge(cat.validate(), "category: ");
  if (!v.ok()) return v;
  Comonoid c = cat_to_comonoid(cat);
  v.merge(comonoid_check(c));
  if (!v.ok()) return v;
  expect(v, comonoid_to_cat(c) == cat, "round trip category", "comonoid_to_cat(cat_to_comonoid(C)) differs from C");
  Comonoid again = cat_to_comonoid(comonoid_to_cat(c));
  expect(v, again.carrier == c.carrier && again.counit == c.counit && again.comult == c.comult,
         "round trip comonoid", "cat_to_comonoid(comonoid_to_cat(c)) differs from c");
  return v;
}

Poly arrow_carrier() { return Poly::make(FinSet::of({"a", "b"}), {FinSet::of({"id_a", "f"}), FinSet::of({"id_b"})}); }

Verdict law_equivalence() {
  Verdict v;
  Poly c = arrow_carrier();
  for (const PolyMor& e : hom_enumerate(c, Poly::y()))
    for (const PolyMor& d : hom_enumerate(c, compose_tri(c, c))) {
      Comonoid cand{c, e, d};
      const bool laws = comonoid_check(cand).ok();
      const bool cat = internal_category_check(translate_comonoid(cand)).ok();
      if (laws != cat) {
        v.fail("law equivalence", "ε = " + mor_label(e).to_string() + ", δ = " + mor_label(d).to_string());
        return v;
      }
    }
  return v;
}

Verdict cofunctor_equivalence(const Comonoid& c, const Comonoid& d) {
  Verdict v;
  for (const PolyMor& phi : hom_enumerate(c.carrier, d.carrier)) {
    CofunctorReport r = cofunctor_check(phi, c, d);
    if (!r.agree()) {
      v.fail("cofunctor equivalence", mor_label(phi).to_string() + ": homomorphism " + r.homomorphism.summary() +
                                          ", cofunctor " + r.cofunctor.summary());
      return v;
    }
  }
  return v;
}

Verdict canonical_comonoids(const Poly& p) {
  Verdict v;
  v.merge(comonoid_check(discrete_comonoid(p.positions())), "discrete: ");
  v.merge(comonoid_check(pstar_comonoid(p)), "p_*: ");
  v.merge(comonoid_check(selfclosure_comonoid(p)), "⟨p|p⟩: ");
  return v;
}

void suite_comonoid(Builder& b) {
  const auto cats = corpus::category_corpus(b.cfg().seed, 50);
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const FinCat cat = cats[i];
    b.add("comonoid", "category", i, Json{{"category", to_json(cat)}}, [cat] { return category_round_trip(cat); });
  }
  b.add("comonoid", "law-equivalence", 0, Json{{"carrier", to_json(arrow_carrier())}}, [] { return law_equivalence(); });
  const std::vector<std::pair<std::string, FinCat>> fixed{{"walking-arrow", FinCat::walking_arrow()},
                                                          {"parallel-pair", FinCat::parallel_pair()}};
  std::size_t i = 0;
  for (const auto& [cn, cc] : fixed)
    for (const auto& [dn, dc] : fixed) {
      Comonoid c = cat_to_comonoid(cc), d = cat_to_comonoid(dc);
      b.add("comonoid", "cofunctor", i++, Json{{"c", cn}, {"d", dn}}, [c, d] { return cofunctor_equivalence(c, d); });
    }
  for (std::size_t k = 0; k < 20; ++k) {
    auto rng = b.rng("comonoid/canonical", k);
    Poly p = corpus::random_poly(rng, b.P2(), b.D2());
    b.add("comonoid", "canonical", k, Json{{"p", to_json(p)}}, [p] { return canonical_comonoids(p); });
  }
  if (b.cfg().inject_mutant) {
    Comonoid m = mutant_comonoid();
    b.add("comonoid", "mutant", 0, Json{{"comonoid", to_json(m)}}, [m] { return comonoid_check(m); });
  }
}

// ---------------------------------------------------------------- coalgebra

Comonoid arrow() { return cat_to_comonoid(FinCat::walking_arrow()); }

// X(f): X(a) → X(b) on the walking arrow.
psh::Presheaf arrow_copresheaf(const FinSet& xa, const FinSet& xb, const std::vector<std::size_t>& f) {
  FinCatPtr base = copresheaf_base(arrow());
  std::vector<FinSet> at(2);
  at[base->objects().index_of("a")] = xa;
  at[base->objects().index_of("b")] = xb;
  std::vector<FinFn> act;
  for (const Label& m : base->morphisms()) {
    if (m == Label("f")) act.emplace_back(xa, xb, f);
    else act.push_back(FinFn::identity(m == Label("id_a") ? xa : xb));
  }
  return psh::Presheaf(base, at, act);
}

std::vector<psh::Presheaf> arrow_copresheaves(std::size_t n) {
  std::vector<psh::Presheaf> out;
  for (std::size_t na = 0; na <= n; ++na)
    for (std::size_t nb = 0; na + nb <= n; ++nb)
      for (const FinFn& f : all_functions(FinSet::range(na), FinSet::range(nb)))
        out.push_back(arrow_copresheaf(FinSet::range(na), FinSet::range(nb), f.table()));
  return out;
}

// Every candidate (κ1, κ♯) on {0..n-1}.
std::vector<Coalgebra> all_structures(const Comonoid& c, std::size_t n) {
  std::vector<Coalgebra> out;
  const FinSet S = FinSet::range(n);
  for (const FinFn& kappa1 : all_functions(S, c.carrier.positions())) {
    const FinSet dom = action_domain(c, kappa1);
    for (const FinFn& ks : all_functions(dom, S)) out.push_back({c, S, kappa1, ks});
  }
  return out;
}

bool same(const Coalgebra& a, const Coalgebra& b) {
  return a.S == b.S && a.kappa1 == b.kappa1 && a.kappa_sharp == b.kappa_sharp;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// The coalgebra and copresheaf sides agree on x: opfibration and copresheaf round trips.
void coalgebra_round_trips(Verdict& v, const Coalgebra& x) {
  const std::string w = "S = " + to_json(x.S)["elements"].dump();
  expect(v, same(opfib_to_coalg(coalg_to_opfib(x), x.c), x), "opfibration round trip", w);
  psh::Presheaf X = coalg_to_copresheaf(x);
  expect(v, X.validate().ok(), "copresheaf valid", w);
  expect(v, X.total_size() == x.S.size(), "copresheaf size", w);
  Coalgebra again = copresheaf_to_coalg(x.c, X);
  FinFn relabel = FinFn::from_labels(x.S, again.S, [&](const Label& s) { return Label::pair(x.kappa1(s), s); });
  expect(v, relabel.bijective() && is_coalgebra_hom(x, again, relabel), "copresheaf round trip", w);
}

Verdict coalgebra_exhaustive(std::size_t n) {
  Verdict v;
  Comonoid c = arrow();
  std::uint64_t expected = 0, found = 0;
  for (std::uint64_t k = 0; k <= n; ++k) expected += binomial(n, k) * sat_pow(n - k, k);
  for (const Coalgebra& x : all_structures(c, n)) {
    if (!coalg_check(x).ok()) continue;
    ++found;
    coalgebra_round_trips(v, x);
  }
  expect(v, found == expected, "coalgebra count", std::to_string(found) + " vs " + std::to_string(expected));
  for (const psh::Presheaf& X : arrow_copresheaves(n)) {
    if (X.total_size() != n) continue;
    expect(v, psh::find_iso(X, coalg_to_copresheaf(copresheaf_to_coalg(c, X))).has_value(),
           "copresheaf round trip", io::to_json(X).dump());
  }
  return v;
}

psh::PshMor as_natural(const Coalgebra& a, const Coalgebra& b, const FinFn& h) {
  psh::Presheaf X = coalg_to_copresheaf(a), Y = coalg_to_copresheaf(b);
  std::vector<FinFn> comps;
  for (std::size_t o = 0; o < X.components().size(); ++o) {
    comps.push_back(FinFn::from_labels(X.at(o), Y.at(o), [&](const Label& s) { return h(s); }));
  }
  return psh::PshMor(X, Y, comps);
}

Verdict coalgebra_homsets() {
  Verdict v;
  Comonoid c = arrow();
  std::vector<Coalgebra> all;
  for (std::size_t n = 0; n <= 3; ++n)
    for (const Coalgebra& x : all_structures(c, n))
      if (coalg_check(x).ok()) all.push_back(x);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      auto maps = coalgebra_homs(all[i], all[j]);
      auto nats = psh::homs(coalg_to_copresheaf(all[i]), coalg_to_copresheaf(all[j]));
      std::set<std::size_t> hit;
      for (const FinFn& h : maps) {
        auto it = std::find(nats.begin(), nats.end(), as_natural(all[i], all[j], h));
        if (it != nats.end()) hit.insert(static_cast<std::size_t>(it - nats.begin()));
      }
      if (maps.size() != nats.size() || hit.size() != nats.size()) {
        v.fail("hom-set bijection", "coalgebras " + std::to_string(i) + " and " + std::to_string(j) + ": " +
                                        std::to_string(maps.size()) + " maps vs " + std::to_string(nats.size()) +
                                        " natural transformations");
        return v;
      }
    }
  return v;
}

Verdict coalgebra_random(const Coalgebra& x) {
  Verdict v;
  v.merge(coalg_check(x));
  if (!v.ok()) return v;
  coalgebra_round_trips(v, x);
  for (const Label& pos : x.c.carrier.positions()) v.merge(coalg_check(representable_coalgebra(x.c, pos)), "representable: ");
  return v;
}

void suite_coalgebra(Builder& b) {
  for (std::size_t n = 0; n <= 3; ++n) {
    b.add("coalgebra", "exhaustive", n, Json{{"comonoid", "walking-arrow"}, {"size", n}},
          [n] { return coalgebra_exhaustive(n); });
  }
  b.add("coalgebra", "homsets", 0, Json{{"comonoid", "walking-arrow"}, {"max_size", 3}},
        [] { return coalgebra_homsets(); });
  const auto cats = corpus::category_corpus(b.cfg().seed, 24);
  for (std::size_t i = 0; i < cats.size(); ++i) {
    auto rng = b.rng("coalgebra/random", i);
    Coalgebra x = corpus::random_coalgebra(rng, cat_to_comonoid(cats[i]), 2);
    b.add("coalgebra", "random", i, Json{{"coalgebra", to_json(x)}}, [x] { return coalgebra_random(x); });
  }
}

// ---------------------------------------------------------------- bicomodule

bool typed_equal(const TypedPoly& a, const TypedPoly& b) { return a.m == b.m && a.src == b.src && a.tgt == b.tgt; }

bool typed_isomorphic(const TypedPoly& a, const TypedPoly& b) {
  auto iso = typed_iso(a, b);
  return iso && iso->is_iso() && is_typed_hom(*iso, a, b);
}

Verdict identity_bicomodule_case(const Comonoid& c) {
  Verdict v;
  Bicomodule id = identity_bicomodule(c);
  v.merge(bicomodule_check(id));
  return v;
}

Verdict typed_bicomodule_case(const TypedPoly& t, const TypedPoly& u) {
  Verdict v;
  Bicomodule bt = bicomod_from_typed(t), bu = bicomod_from_typed(u);
  v.merge(bicomodule_check(bt));
  if (!v.ok()) return v;
  expect(v, bt.left.is_cartesian() && bt.right.is_cartesian(), "typed coactions are cartesian", "");
  expect(v, typed_equal(typed_from_bicomod(bt), t), "typed round trip", "");
  if (!(bt.c.carrier == bu.c.carrier) || !(bt.d.carrier == bu.d.carrier)) return v;
  PolyMor phi = PolyMor::identity(bt.c.carrier), psi = PolyMor::identity(bt.d.carrier);
  for (const PolyMor& g : hom_enumerate(t.m, u.m)) {
    if (bicomodule_hom_check(g, bt, bu, phi, psi).ok() != is_typed_hom(g, t, u)) {
      v.fail("bicomodule maps are typed maps", mor_label(g).to_string());
      break;
    }
  }
  return v;
}

Verdict general_composite_case() {
  Verdict v;
  Bicomodule id = identity_bicomodule(arrow());
  bool refused = false;
  try {
    bicomod_compose(id, id);
  } catch (const DomainError&) {
    refused = true;
  }
  expect(v, refused, "non-cartesian composite refused", "");
  Bicomodule general = bicomod_compose(id, id, true);
  v.merge(bicomodule_check(general));
  expect(v, iso_check(general.m, id.m).has_value(), "identity composite", "c ◁_c c is not isomorphic to c");
  return v;
}

void suite_bicomodule(Builder& b) {
  const auto cats = corpus::category_corpus(b.cfg().seed, 12);
  for (std::size_t i = 0; i < cats.size(); ++i) {
    Comonoid c = cat_to_comonoid(cats[i]);
    b.add("bicomodule", "identity", i, Json{{"category", to_json(cats[i])}},
          [c] { return identity_bicomodule_case(c); });
  }
  for (std::size_t i = 0; i < 20; ++i) {
    auto rng = b.rng("bicomodule/typed", i);
    const FinSet C = FinSet::range(1 + rng() % 2), D = FinSet::range(1 + rng() % 2);
    TypedPoly t = corpus::random_typed(rng, C, D, b.P2(), b.D2());
    TypedPoly u = corpus::random_typed(rng, C, D, b.P2(), b.D2());
    b.add("bicomodule", "typed", i, Json{{"t", to_json(t)}, {"u", to_json(u)}},
          [t, u] { return typed_bicomodule_case(t, u); });
  }
  b.add("bicomodule", "general", 0, Json{{"bicomodule", "identity on the walking arrow"}},
        [] { return general_composite_case(); });
}

// ---------------------------------------------------------------- typed

// F_t(X) over C for a family X over D: Σ_{I over c} Π_d |X(src(I, d))|.
std::vector<std::uint64_t> slice_functor(const TypedPoly& t, const std::vector<std::uint64_t>& family) {
  std::vector<std::uint64_t> out(t.tgt.cod().size(), 0);
  for (std::size_t I = 0; I < t.m.positions().size(); ++I) {
    std::uint64_t prod = 1;
    for (const Label& d : t.m.directions(I)) prod *= family[t.src.cod().index_of(t.src(Label::pair(t.m.positions()[I], d)))];
    out[t.tgt(I)] += prod;
  }
  return out;
}

Verdict typed_compose_case(const TypedPoly& p, const TypedPoly& q) {
  Verdict v;
  Bicomodule bp = bicomod_from_typed(p), bq = bicomod_from_typed(q);
  Bicomodule composite = bicomod_compose(bp, bq);
  v.merge(bicomodule_check(composite), "composite: ");
  if (!v.ok()) return v;
  TypedPoly typed = typed_compose(p, q);
  TypedPoly read = typed_from_bicomod(composite);
  expect(v, typed_isomorphic(read, typed), "bicomodule composite ≅ typed composite", "");
  expect(v, typed_equal(read, typed), "bicomodule composite = typed composite", "");
  expect(v, typed_isomorphic(typed_from_bicomod(bicomod_compose(bp, identity_bicomodule(bp.d))), p), "right unit", "");
  expect(v, typed_isomorphic(typed_from_bicomod(bicomod_compose(identity_bicomodule(bp.c), bp)), p), "left unit", "");
  const std::size_t ne = q.src.cod().size();
  for (const FinFn& fam : all_functions(FinSet::range(ne), FinSet::range(3))) {
    std::vector<std::uint64_t> family(fam.table().begin(), fam.table().end());
    if (slice_functor(typed, family) != slice_functor(p, slice_functor(q, family))) {
      v.fail("slice functor of the composite", "family " + io::to_json(fam).dump());
      break;
    }
  }
  return v;
}

Verdict typed_assoc_case(const TypedPoly& p, const TypedPoly& q, const TypedPoly& r) {
  Verdict v;
  Bicomodule bp = bicomod_from_typed(p), bq = bicomod_from_typed(q), br = bicomod_from_typed(r);
  TypedPoly left = typed_from_bicomod(bicomod_compose(bicomod_compose(bp, bq), br));
  TypedPoly right = typed_from_bicomod(bicomod_compose(bp, bicomod_compose(bq, br)));
  expect(v, typed_isomorphic(left, right), "associativity up to typed iso", "");
  return v;
}

void suite_typed(Builder& b) {
  for (std::size_t i = 0; i < 30; ++i) {
    auto rng = b.rng("typed/compose", i);
    const FinSet C = FinSet::range(1 + rng() % 2), D = FinSet::range(1 + rng() % 2), E = FinSet::range(1 + rng() % 2);
    TypedPoly p = corpus::random_typed(rng, C, D, b.P(), std::min<std::size_t>(b.D(), 2));
    TypedPoly q = corpus::random_typed(rng, D, E, b.P(), std::min<std::size_t>(b.D(), 2));
    b.add("typed", "compose", i, Json{{"p", to_json(p)}, {"q", to_json(q)}}, [p, q] { return typed_compose_case(p, q); });
  }
  for (std::size_t i = 0; i < 10; ++i) {
    auto rng = b.rng("typed/assoc", i);
    const FinSet two = FinSet::range(2);
    TypedPoly p = corpus::random_typed(rng, two, two, b.P2(), b.D2());
    TypedPoly q = corpus::random_typed(rng, two, two, b.P2(), b.D2());
    TypedPoly r = corpus::random_typed(rng, two, two, b.P2(), b.D2());
    b.add("typed", "assoc", i, Json{{"p", to_json(p)}, {"q", to_json(q)}, {"r", to_json(r)}},
          [p, q, r] { return typed_assoc_case(p, q, r); });
  }
}

// ---------------------------------------------------------------- migrate

Verdict yoneda_case(const Coalgebra& x) {
  Verdict v;
  Comonoid c = arrow();
  Bicomodule m = bicomod_from_coalgebra(representable_coalgebra(c, "a"));
  v.merge(bicomodule_check(m), "y^{c[a]}: ");
  Coalgebra mx = migrate(m, x);
  v.merge(coalg_check(mx), "migrated: ");
  if (!v.ok()) return v;
  const std::size_t a = c.carrier.positions().index_of("a");
  const std::size_t fiber = x.kappa1.fiber(a).size();
  expect(v, mx.S.size() == fiber, "|migrate| = |X(a)|", std::to_string(mx.S.size()) + " vs " + std::to_string(fiber));
  const std::size_t id_a = m.m.directions(Label::unit()).index_of("id_a");
  std::set<Label> seen;
  for (const Label& sigma : mx.S) {
    const Label& s = sigma.at(1).at(id_a);
    expect(v, x.kappa1(s) == Label("a"), "evaluation at id_a lands in X(a)", sigma.to_string());
    seen.insert(s);
  }
  expect(v, seen.size() == mx.S.size(), "evaluation at id_a is injective", "");
  return v;
}

Verdict formula_case(const Bicomodule& b, const Coalgebra& x) {
  Verdict v;
  v.merge(bicomodule_check(b));
  if (!v.ok()) return v;
  Coalgebra positions = left_coalgebra(b);
  Coalgebra mx = migrate(b, x);
  v.merge(coalg_check(mx), "migrated: ");
  for (const Label& I : b.c.carrier.positions()) {
    std::size_t lhs = 0, rhs = 0;
    for (const Label& sigma : mx.S) lhs += mx.kappa1(sigma) == I;
    for (const Label& pos : b.m.positions()) {
      if (positions.kappa1(pos) == I) rhs += coalgebra_homs(fiber_coalgebra(b, pos), x).size();
    }
    expect(v, lhs == rhs, "Σ |Hom(m[x], X)| formula",
           "over " + I.to_string() + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs));
  }
  return v;
}

Verdict pullback_case(const Coalgebra& a, const Coalgebra& bb, const Coalgebra& z, const FinFn& f, const FinFn& g) {
  Verdict v;
  Comonoid c = arrow();
  Bicomodule id = identity_bicomodule(c);
  Bicomodule yoneda = bicomod_from_coalgebra(representable_coalgebra(c, "b"));
  CoalgebraPullback pb = coalgebra_pullback(a, bb, z, f, g);
  v.merge(coalg_check(pb.object), "pullback: ");
  for (const Bicomodule* bm : {&id, &yoneda}) {
    const std::string which = bm == &id ? "identity: " : "representable: ";
    Coalgebra mp = migrate(*bm, pb.object);
    Coalgebra ma = migrate(*bm, a), mb = migrate(*bm, bb), mz = migrate(*bm, z);
    FinFn mf = migrate_hom(*bm, a, z, f), mg = migrate_hom(*bm, bb, z, g);
    CoalgebraPullback after = coalgebra_pullback(ma, mb, mz, mf, mg);
    FinFn p1 = migrate_hom(*bm, pb.object, a, pb.p1), p2 = migrate_hom(*bm, pb.object, bb, pb.p2);
    FinFn cmp = FinFn::from_labels(mp.S, after.object.S, [&](const Label& s) { return Label::pair(p1(s), p2(s)); });
    expect(v, cmp.bijective() && is_coalgebra_hom(mp, after.object, cmp), which + "pullback preserved", "");
    expect(v, then(p1, mf) == then(p2, mg), which + "functoriality on the square", "");
    expect(v, migrate_hom(*bm, a, a, FinFn::identity(a.S)) == FinFn::identity(ma.S), which + "identities preserved", "");
  }
  return v;
}

Verdict migrate_identity_case() {
  Verdict v;
  Comonoid c = arrow();
  Bicomodule id = identity_bicomodule(c);
  for (const psh::Presheaf& X : arrow_copresheaves(3)) {
    Coalgebra x = copresheaf_to_coalg(c, X);
    Coalgebra mx = migrate(id, x);
    bool iso = false;
    for (const FinFn& h : coalgebra_homs(mx, x)) iso = iso || h.bijective();
    expect(v, coalg_check(mx).ok() && iso, "identity migration ≅ id", io::to_json(X).dump());
    if (!v.ok()) break;
  }
  return v;
}

void suite_migrate(Builder& b) {
  Comonoid c = arrow();
  for (std::size_t i = 0; i < 12; ++i) {
    auto rng = b.rng("migrate/yoneda", i);
    Coalgebra x = corpus::random_coalgebra(rng, c, 3);
    b.add("migrate", "yoneda", i, Json{{"x", to_json(x)}}, [x] { return yoneda_case(x); });
  }
  for (std::size_t i = 0; i < 12; ++i) {
    auto rng = b.rng("migrate/formula", i);
    Bicomodule bm;
    std::string which;
    switch (i % 4) {
      case 0:
        bm = identity_bicomodule(c), which = "identity";
        break;
      case 1:
        bm = bicomod_from_coalgebra(representable_coalgebra(c, "a")), which = "y^{c[a]}";
        break;
      case 2:
        bm = bicomod_from_coalgebra(representable_coalgebra(c, "b")), which = "y^{c[b]}";
        break;
      default: {
        Coalgebra r = corpus::random_coalgebra(rng, c, 2);
        bm = bicomod_from_coalgebra(r), which = io::to_json(r).dump();
      }
    }
    Coalgebra x = corpus::random_coalgebra(rng, c, 2);
    b.add("migrate", "formula", i, Json{{"bicomodule", which}, {"x", to_json(x)}},
          [bm, x] { return formula_case(bm, x); });
  }
  Coalgebra terminal = copresheaf_to_coalg(c, arrow_copresheaf(FinSet::unit(), FinSet::unit(), {0}));
  for (std::size_t i = 0; i < 8; ++i) {
    auto rng = b.rng("migrate/pullback", i);
    // Redraw until both legs exist; the draw sequence is part of the seed contract.
    for (;;) {
      Coalgebra a = corpus::random_coalgebra(rng, c, 2);
      Coalgebra bb = corpus::random_coalgebra(rng, c, 2);
      Coalgebra z = rng() % 2 ? terminal : corpus::random_coalgebra(rng, c, 2);
      auto fs = coalgebra_homs(a, z), gs = coalgebra_homs(bb, z);
      if (fs.empty() || gs.empty()) continue;
      FinFn f = fs[rng() % fs.size()];
      FinFn g = gs[rng() % gs.size()];
      b.add("migrate", "pullback", i,
            Json{{"a", to_json(a)}, {"b", to_json(bb)}, {"z", to_json(z)}, {"f", to_json(f)}, {"g", to_json(g)}},
            [a, bb, z, f, g] { return pullback_case(a, bb, z, f, g); });
      break;
    }
  }
  b.add("migrate", "identity", 0, Json{{"comonoid", "walking-arrow"}, {"max_size", 3}},
        [] { return migrate_identity_case(); });
}

// ---------------------------------------------------------------- presheaf

bool psh_iso(const psh::Polynomial& p, const psh::Polynomial& q) {
  auto found = psh::find_poly_iso(p, q);
  return found && found->first.is_iso() && found->second.is_iso() &&
         psh::then(found->first, q.proj) == psh::then(p.proj, found->second);
}

Verdict psh_unit_assoc(const psh::Polynomial& p, const psh::Polynomial& q, const psh::Polynomial& r) {
  Verdict v;
  psh::Polynomial y = psh::linear(p.proj.dom().base_ptr());
  expect(v, psh_iso(psh::compose(y, p).poly, p), "y ◁ p ≅ p", "");
  expect(v, psh_iso(psh::compose(p, y).poly, p), "p ◁ y ≅ p", "");
  psh::Polynomial left = psh::compose(psh::compose(p, q).poly, r).poly;
  psh::Polynomial right = psh::compose(p, psh::compose(q, r).poly).poly;
  expect(v, psh_iso(left, right), "(p ◁ q) ◁ r ≅ p ◁ (q ◁ r)", "");
  return v;
}

Verdict psh_pi_homs(const psh::PshMor& f, const psh::PshMor& g, const std::vector<psh::Presheaf>& probes) {
  Verdict v;
  psh::DependentProduct pi = psh::presheaf_pi(f, g);
  v.merge(pi.object.validate(), "Π_f Z: ");
  v.merge(pi.proj.validate(), "Π_f Z → X: ");
  for (const psh::Presheaf& w : probes) {
    std::uint64_t rhs = 0;
    for (const psh::PshMor& sigma : psh::homs(w, f.cod())) {
      psh::Pullback d = psh::pullback(sigma, f);
      rhs += psh::count_homs(d.object, g.dom(), std::make_pair(d.p2, g));
    }
    auto taus = psh::homs(w, pi.object);
    expect(v, taus.size() == rhs, "|Hom(W, Π_f Z)| = Σ_σ |Hom_Y(Δ_σ Y, Z)|",
           std::to_string(taus.size()) + " vs " + std::to_string(rhs));
    for (const psh::PshMor& tau : taus) {
      psh::PiTranspose t = psh::pi_untranspose(pi, tau);
      if (!(psh::then(t.gamma, g) == t.pulled.p2) || !(psh::pi_transpose(pi, t.sigma, t.gamma) == tau)) {
        v.fail("Π transposes are mutually inverse", "");
        return v;
      }
    }
  }
  return v;
}

Verdict finset_pi_case(const FinFn& f, const FinFn& g, const FinFn& d) {
  Verdict v;
  DistributivityPullback dp = distributivity_pullback(f, g);
  expect(v, then(dp.counit, g) == dp.delta.p2, "distributivity square over B", "");
  expect(v, then(dp.delta.p1, dp.pi.proj) == then(dp.delta.p2, f), "distributivity pullback square", "");
  const DependentProduct& pi = dp.pi;
  Pullback dd = pullback(d, f);
  auto left = slice_homs(dd.p2, g);
  auto right = slice_homs(d, pi.proj);
  expect(v, left.size() == right.size(), "|Hom_B(Δ_f D, Z)| = |Hom_A(D, Π_f Z)|",
         std::to_string(left.size()) + " vs " + std::to_string(right.size()));
  for (const FinFn& h : left) {
    FinFn k = pi_transpose(f, g, d, h);
    expect(v, then(k, pi.proj) == d && pi_untranspose(f, g, d, k) == h, "Δ ⊣ Π transposes", "");
  }
  for (const FinFn& k : right) expect(v, pi_transpose(f, g, d, pi_untranspose(f, g, d, k)) == k, "Δ ⊣ Π transposes", "");
  return v;
}

FinFn random_fn(corpus::Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> t(n);
  for (auto& x : t) x = rng() % m;
  return FinFn(FinSet::range(n), FinSet::range(m), t);
}

void suite_presheaf(Builder& b) {
  const std::vector<std::pair<std::string, FinCatPtr>> bases{
      {"walking-arrow", std::make_shared<const FinCat>(FinCat::walking_arrow())},
      {"parallel-pair", std::make_shared<const FinCat>(FinCat::parallel_pair())}};
  for (const auto& [name, base] : bases) {
    for (std::size_t i = 0; i < 8; ++i) {
      auto rng = b.rng("presheaf/unit-assoc/" + name, i);
      psh::Polynomial p = corpus::random_psh_poly(rng, base, 2);
      psh::Polynomial q = corpus::random_psh_poly(rng, base, 2);
      psh::Polynomial r = corpus::random_psh_poly(rng, base, 1);
      Json in{{"base", name},
              {"p", {to_json(p.total()), to_json(p.positions())}},
              {"q", {to_json(q.total()), to_json(q.positions())}},
              {"r", {to_json(r.total()), to_json(r.positions())}}};
      b.add("presheaf", "unit-assoc-" + name, i, std::move(in), [p, q, r] { return psh_unit_assoc(p, q, r); });
    }
    for (std::size_t i = 0; i < 6; ++i) {
      auto rng = b.rng("presheaf/pi/" + name, i);
      for (;;) {
        psh::Polynomial f = corpus::random_psh_poly(rng, base, 2);
        psh::Presheaf z = corpus::random_presheaf(rng, base, 2);
        auto maps = psh::homs(z, f.total());
        if (maps.empty()) continue;
        psh::PshMor g = maps[rng() % maps.size()];
        std::vector<psh::Presheaf> probes;
        for (int k = 0; k < 3; ++k) probes.push_back(corpus::random_presheaf(rng, base, 2));
        Json in{{"base", name},
                {"Y", to_json(f.total())},
                {"X", to_json(f.positions())},
                {"Z", to_json(z)},
                {"probes", {to_json(probes[0]), to_json(probes[1]), to_json(probes[2])}}};
        psh::PshMor fm = f.proj;
        b.add("presheaf", "pi-" + name, i, std::move(in), [fm, g, probes] { return psh_pi_homs(fm, g, probes); });
        break;
      }
    }
  }
  for (std::size_t i = 0; i < 40; ++i) {
    auto rng = b.rng("presheaf/finset-pi", i);
    const std::size_t na = 1 + rng() % 2, nb = rng() % 4, nz = nb == 0 ? 0 : rng() % 4, nd = rng() % 3;
    FinFn f = random_fn(rng, nb, na);
    FinFn g = nb == 0 ? FinFn(FinSet(), FinSet(), {}) : random_fn(rng, nz, nb);
    FinFn d = random_fn(rng, nd, na);
    b.add("presheaf", "finset-pi", i, Json{{"f", to_json(f)}, {"g", to_json(g)}, {"d", to_json(d)}},
          [f, g, d] { return finset_pi_case(f, g, d); });
  }
}

using SuiteFn = void (*)(Builder&);
const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s{
      {"monoidal", suite_monoidal},     {"duoidal", suite_duoidal}, {"closure", suite_closure},
      {"coclosure", suite_coclosure},   {"comonoid", suite_comonoid}, {"coalgebra", suite_coalgebra},
      {"bicomodule", suite_bicomodule}, {"typed", suite_typed},     {"migrate", suite_migrate},
      {"presheaf", suite_presheaf}};
  return s;
}

Record run_one(const Case& c, const Config& cfg) {
  Record r{c.suite, c.id, Status::Pass, Json(), fnv1a(c.inputs.dump())};
  auto failed = [&](const std::string& law, const std::string& detail) {
    r.status = Status::Fail;
    r.witness = Json{{"case", c.id}, {"seed", cfg.seed}, {"inputs", c.inputs}, {"law", law}, {"detail", detail}};
  };
  try {
    ScopedBudget scope(cfg.budget);
    Verdict v = c.check();
    if (!v.ok()) failed(v.violations().front().law, v.violations().front().witness);
  } catch (const BudgetExceeded& e) {
    r.status = Status::SkippedBudget;
    r.witness = Json{{"detail", e.what()}};
  } catch (const std::exception& e) {
    failed("exception", e.what());
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    return n;
  }();
  return names;
}

void validate(const Config& cfg) {
  if (cfg.budget == 0) throw DomainError("harness: budget must be positive");
  for (const std::string& s : cfg.suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw DomainError("harness: unknown suite \"" + s + "\"");
    }
  }
}

std::vector<Case> build_corpus(const Config& cfg) {
  validate(cfg);
  // Generation is bounded by construction; the configured budget governs the checks only,
  // so the corpus does not depend on it.
  ScopedBudget unlimited(std::numeric_limits<std::uint64_t>::max());
  std::vector<Case> out;
  Builder b(cfg, out);
  for (const auto& [name, fn] : suites()) {
    if (!cfg.suites.empty() && std::find(cfg.suites.begin(), cfg.suites.end(), name) == cfg.suites.end()) continue;
    fn(b);
  }
  if (!cfg.only.empty()) {
    std::erase_if(out, [&](const Case& c) { return c.id.rfind(cfg.only, 0) != 0; });
  }
  return out;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::SkippedBudget:
      return "skipped-budget";
  }
  return "?";
}

std::vector<Record> run(const std::vector<Case>& cases, const Config& cfg, Mode mode) {
  std::vector<Record> out(cases.size());
  const auto n = static_cast<std::ptrdiff_t>(cases.size());
  if (mode == Mode::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = run_one(cases[i], cfg);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = run_one(cases[i], cfg);
  }
  return out;
}

Summary summarize(const std::vector<Record>& records) {
  Summary s;
  s.corpus_digest = fnv1a("");
  for (const Record& r : records) {
    switch (r.status) {
      case Status::Pass:
        ++s.pass;
        break;
      case Status::Fail:
        ++s.fail;
        break;
      case Status::SkippedBudget:
        ++s.skipped;
        break;
    }
    s.corpus_digest = fnv1a(hex(r.digest), s.corpus_digest);
  }
  return s;
}

std::string report(const std::vector<Record>& records, const Config& cfg) {
  std::string out;
  for (const Record& r : records) {
    Json line{{"suite", r.suite}, {"case", r.id}, {"status", status_name(r.status)}, {"digest", hex(r.digest)}};
    if (!r.witness.is_null()) line["witness"] = r.witness;
    out += line.dump() + "\n";
  }
  const Summary s = summarize(records);
  Json suites = Json::array();
  for (const std::string& name : cfg.suites.empty() ? suite_names() : cfg.suites) suites.push_back(name);
  Json footer{{"summary",
               {{"cases", records.size()}, {"pass", s.pass}, {"fail", s.fail}, {"skipped-budget", s.skipped}}},
              {"corpus_digest", hex(s.corpus_digest)},
              {"config",
               {{"seed", cfg.seed},
                {"max_positions", cfg.max_positions},
                {"max_directions", cfg.max_directions},
                {"budget", cfg.budget},
                {"suites", suites},
                {"mutant", cfg.inject_mutant},
                {"only", cfg.only}}}};
  out += footer.dump() + "\n";
  return out;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h) {
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Comonoid mutant_comonoid() {
  Comonoid c = cat_to_comonoid(FinCat::walking_arrow());
  auto is_id = [](const Label& m) { return m == Label("id_a") || m == Label("id_b"); };
  c.comult = PolyMor::from_functions(
      c.carrier, compose_tri(c.carrier, c.carrier),
      [](const Label& x) {
        if (x == Label("b")) return Label::pair("b", Label::list({"b"}));
        return Label::pair("a", Label::list({"a", "b"}));
      },
      [&](const Label&, const Label& de) {
        if (is_id(de.at(1))) return de.at(0);
        if (is_id(de.at(0))) return de.at(1);
        return de.at(0);
      });
  return c;
}

}  // namespace polycalc::harness
