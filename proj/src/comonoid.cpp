#include "polycalc/comonoid.hpp"

#include <set>

#include "polycalc/error.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly_ops.hpp"
#include "polycalc/structures.hpp"

namespace polycalc {
namespace {

void check_shape(const Comonoid& c) {
  if (!(c.counit.dom() == c.carrier) || !(c.counit.cod() == Poly::y())) {
    throw DomainError("counit must be a morphism carrier → y");
  }
  if (!(c.comult.dom() == c.carrier) || !(c.comult.cod() == compose_tri(c.carrier, c.carrier))) {
    throw DomainError("comultiplication must be a morphism carrier → carrier ◁ carrier");
  }
}

// Category operations read straight off (ε, δ) at the level of direction labels.
struct Ops {
  const Comonoid& c;
  Label identity(const Label& x) const { return c.counit.on_direction(x, Label::unit()); }
  Label target(const Label& x, const Label& f) const {
    const Label J = c.comult.on_position(x);
    return J.at(1).at(c.carrier.directions(x).index_of(f, "direction"));
  }
  // f out of x, then g out of its target.
  Label compose(const Label& x, const Label& f, const Label& g) const {
    return c.comult.on_direction(x, Label::pair(f, g));
  }
};

void law(Verdict& v, const char* name, const PolyMor& lhs, const PolyMor& rhs) {
  const std::string diff = first_difference(lhs, rhs);
  if (!diff.empty()) v.fail(name, diff);
}

}  // namespace

Verdict comonoid_check(const Comonoid& c) {
  check_shape(c);
  const Poly& p = c.carrier;
  const LazyMor id = lazy_identity(p);
  const LazyMor delta = LazyMor::of(c.comult);
  Verdict v;
  law(v, "left-counit", then(c.comult, tri(LazyMor::of(c.counit), id)), tri_left_unitor_inv(p).materialize());
  law(v, "right-counit", then(c.comult, tri(id, LazyMor::of(c.counit))), tri_right_unitor_inv(p).materialize());
  law(v, "coassociativity", then(then(c.comult, tri(delta, id)), tri_associator(p, p, p)),
      then(c.comult, tri(id, delta)));
  return v;
}

Comonoid cat_to_comonoid(const FinCat& cat) {
  const FinSet& objs = cat.objects();
  const FinSet& mors = cat.morphisms();
  std::vector<FinSet> dirs;
  for (std::size_t x = 0; x < objs.size(); ++x) {
    std::vector<Label> out;
    for (std::size_t m : cat.out_of(x)) out.push_back(mors[m]);
    dirs.push_back(FinSet::of(std::move(out)));
  }
  Poly carrier = Poly::make(objs, dirs);
  std::vector<Label> unit_pos(objs.size());
  std::vector<std::vector<std::size_t>> unit_sharp;
  for (std::size_t x = 0; x < objs.size(); ++x) unit_sharp.push_back({dirs[x].index_of(mors[cat.id()(x)])});
  PolyMor counit(carrier, Poly::y(), std::move(unit_pos), std::move(unit_sharp));

  PolyMor comult = PolyMor::from_functions(
      carrier, compose_tri(carrier, carrier),
      [&](const Label& x) {
        Label::List targets;
        for (const Label& f : dirs[objs.index_of(x)]) targets.push_back(objs[cat.tgt()(mors.index_of(f))]);
        return Label::pair(x, Label::list(std::move(targets)));
      },
      [&](const Label&, const Label& fg) {
        return mors[cat.comp(mors.index_of(fg.at(1)), mors.index_of(fg.at(0)))];
      });
  return {carrier, counit, comult};
}

Translation translate_comonoid(const Comonoid& c) {
  check_shape(c);
  const Poly& p = c.carrier;
  const FinSet& objs = p.positions();
  Translation out;
  for (std::size_t x = 0; x < objs.size(); ++x) {
    if (!(c.comult.on_position(x).at(0) == objs[x])) {
      out.position_fixing = false;
      out.witness = objs[x].to_string() + " is sent to " + c.comult.on_position(x).to_string();
      return out;
    }
  }
  // Morphism labels: the directions themselves when globally distinct.
  std::set<Label> seen;
  bool distinct = true;
  for (std::size_t x = 0; x < objs.size() && distinct; ++x) {
    for (const Label& d : p.directions(x)) distinct = distinct && seen.insert(d).second;
  }
  out.distinct = distinct;
  auto name = [&](const Label& x, const Label& d) { return distinct ? d : Label::pair(x, d); };

  std::vector<Label> mor_labels;
  for (std::size_t x = 0; x < objs.size(); ++x) {
    for (const Label& d : p.directions(x)) mor_labels.push_back(name(objs[x], d));
  }
  FinSet mors = FinSet::of(std::move(mor_labels));
  std::vector<std::size_t> src(mors.size()), tgt(mors.size()), id(objs.size());
  std::vector<std::array<Label, 3>> table;
  Ops ops{c};
  for (std::size_t x = 0; x < objs.size(); ++x) {
    id[x] = mors.index_of(name(objs[x], ops.identity(objs[x])));
    for (const Label& f : p.directions(x)) {
      const std::size_t m = mors.index_of(name(objs[x], f));
      const Label y = ops.target(objs[x], f);
      src[m] = x;
      tgt[m] = objs.index_of(y, "target");
      for (const Label& g : p.directions(y)) {
        table.push_back({name(y, g), name(objs[x], f), name(objs[x], ops.compose(objs[x], f, g))});
      }
    }
  }
  out.cat = FinCat::make(objs, mors, FinFn(mors, objs, src), FinFn(mors, objs, tgt), FinFn(objs, mors, id), table);
  return out;
}

Verdict internal_category_check(const Translation& t) {
  Verdict v;
  if (!t.position_fixing) {
    v.fail("position-fixing", t.witness);
    return v;
  }
  v.merge(t.cat.validate());
  return v;
}

FinCat comonoid_to_cat(const Comonoid& c) {
  Verdict laws = comonoid_check(c);
  if (!laws.ok()) throw DomainError("not a comonoid: " + laws.summary());
  Translation t = translate_comonoid(c);
  Verdict v = internal_category_check(t);
  if (!v.ok()) throw DomainError("translated category is invalid: " + v.summary());
  return t.cat;
}

CofunctorReport cofunctor_check(const PolyMor& phi, const Comonoid& c, const Comonoid& d) {
  if (!(phi.dom() == c.carrier) || !(phi.cod() == d.carrier)) {
    throw DomainError("cofunctor_check: morphism does not run between the comonoid carriers");
  }
  CofunctorReport r;
  law(r.homomorphism, "counit", then(phi, d.counit), c.counit);
  law(r.homomorphism, "comultiplication", then(phi, d.comult), then(c.comult, tri(phi, phi)));

  Ops oc{c}, od{d};
  const FinSet& objs = c.carrier.positions();
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const Label& x = objs[i];
    const Label fx = phi.on_position(i);
    if (!(phi.on_direction(x, od.identity(fx)) == oc.identity(x))) {
      r.cofunctor.fail("identity", x.to_string());
    }
    for (const Label& y1 : d.carrier.directions(fx)) {
      const Label lifted = phi.on_direction(x, y1);
      const Label x2 = oc.target(x, lifted);
      if (!(phi.on_position(x2) == od.target(fx, y1))) {
        r.cofunctor.fail("target", x.to_string() + " along " + y1.to_string());
        continue;
      }
      for (const Label& z1 : d.carrier.directions(od.target(fx, y1))) {
        const Label lhs = phi.on_direction(x, od.compose(fx, y1, z1));
        const Label rhs = oc.compose(x, lifted, phi.on_direction(x2, z1));
        if (!(lhs == rhs)) {
          r.cofunctor.fail("composition", x.to_string() + " along " + y1.to_string() + " then " + z1.to_string());
        }
      }
    }
  }
  return r;
}

Comonoid discrete_comonoid(const FinSet& a) {
  Poly carrier = Poly::monomial(a, FinSet::unit());
  std::vector<Label> unit_pos(a.size());
  PolyMor counit(carrier, Poly::y(), std::move(unit_pos), std::vector<std::vector<std::size_t>>(a.size(), {0}));
  PolyMor comult = PolyMor::from_functions(
      carrier, compose_tri(carrier, carrier), [](const Label& x) { return Label::pair(x, Label::list({x})); },
      [](const Label&, const Label&) { return Label::unit(); });
  return {carrier, counit, comult};
}

Comonoid pstar_comonoid(const Poly& p) {
  Poly carrier = p_star(p).poly;
  PolyMor counit = PolyMor::from_functions(
      carrier, Poly::y(), [](const Label&) { return Label::unit(); },
      [](const Label& Id, const Label&) { return Id.at(1); });
  PolyMor comult = PolyMor::from_functions(
      carrier, compose_tri(carrier, carrier),
      [&](const Label& Id) {
        Label::List targets;
        for (const Label& e : carrier.directions(Id)) targets.push_back(Label::pair(Id.at(0), e));
        return Label::pair(Id, Label::list(std::move(targets)));
      },
      [](const Label&, const Label& ef) { return ef.at(1); });
  return {carrier, counit, comult};
}

Comonoid selfclosure_comonoid(const Poly& p) {
  Poly carrier = right_coclosure(p, p);
  auto identity_at = [&](const Label& I) {
    const FinSet ds = p.directions(I);
    return Label::pair(I, Label::list(Label::List(ds.begin(), ds.end())));
  };
  PolyMor counit = PolyMor::from_functions(
      carrier, Poly::y(), [](const Label&) { return Label::unit(); },
      [&](const Label& I, const Label&) { return identity_at(I); });
  PolyMor comult = PolyMor::from_functions(
      carrier, compose_tri(carrier, carrier),
      [&](const Label& I) {
        Label::List targets;
        for (const Label& Jh : carrier.directions(I)) targets.push_back(Jh.at(0));
        return Label::pair(I, Label::list(std::move(targets)));
      },
      [&](const Label&, const Label& fg) {
        // f = [J, h: p[J] → p[I]], g = [K, g: p[K] → p[J]]; composite [K, h ∘ g].
        const Label& J = fg.at(0).at(0);
        const Label& h = fg.at(0).at(1);
        const FinSet pj = p.directions(J);
        Label::List hg;
        for (const Label& e : fg.at(1).at(1).items()) hg.push_back(h.at(pj.index_of(e, "direction")));
        return Label::pair(fg.at(1).at(0), Label::list(std::move(hg)));
      });
  return {carrier, counit, comult};
}

}  // namespace polycalc
