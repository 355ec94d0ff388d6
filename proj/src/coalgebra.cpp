#include "polycalc/coalgebra.hpp"

#include <functional>

#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"
#include "polycalc/functor.hpp"
#include "polycalc/poly_ops.hpp"
#include "polycalc/slice.hpp"

namespace polycalc {
namespace {

// Target of the direction f at x, read off δ₁.
const Label& target(const Comonoid& c, const Label& x, const Label& f) {
  return c.comult.on_position(x).at(1).at(c.carrier.directions(x).index_of(f, "direction"));
}

FinFn star_projection(const Comonoid& c) {
  const FinSet stars = p_star(c.carrier).poly.positions();
  return FinFn::from_labels(stars, c.carrier.positions(), [](const Label& xf) { return xf.at(0); });
}

void require_valid(const Coalgebra& x, const char* what) {
  Verdict v = coalg_check(x);
  if (!v.ok()) throw DomainError(std::string(what) + ": not a coalgebra: " + v.summary());
}

}  // namespace

const Label& Coalgebra::act(const Label& s, const Label& f) const {
  return kappa_sharp(Label::pair(s, Label::pair(kappa1(s), f)));
}

Label Coalgebra::coaction(const Label& s) const {
  const Label& x = kappa1(s);
  Label::List out;
  for (const Label& f : c.carrier.directions(x)) out.push_back(act(s, f));
  return Label::pair(x, Label::list(std::move(out)));
}

FinSet action_domain(const Comonoid& c, const FinFn& kappa1) {
  return pullback(kappa1, star_projection(c)).object;
}

Coalgebra make_coalgebra(const Comonoid& c, const FinSet& S, const FinFn& kappa1,
                         const std::function<Label(const Label&, const Label&)>& act) {
  FinSet dom = action_domain(c, kappa1);
  FinFn sharp = FinFn::from_labels(dom, S, [&](const Label& sxf) { return act(sxf.at(0), sxf.at(1).at(1)); });
  return {c, S, kappa1, sharp};
}

Verdict coalg_check(const Coalgebra& x) {
  Verdict v;
  if (!(x.kappa1.dom() == x.S) || !(x.kappa1.cod() == x.c.carrier.positions())) {
    v.fail("typing", "κ1 must be a function S → C");
    return v;
  }
  if (!(x.kappa_sharp.dom() == action_domain(x.c, x.kappa1)) || !(x.kappa_sharp.cod() == x.S)) {
    v.fail("typing", "κ♯ must be a function S ×_C C_* → S");
    return v;
  }
  auto kappa = [&](const Label& s) { return x.coaction(s); };
  for (const Label& s : x.S) {
    const Label k = kappa(s);
    const Label counit = functor_apply(x.c.counit, k);
    if (!(counit.at(1).at(0) == s)) {
      v.fail("counit", s.to_string() + " acts by the identity to " + counit.at(1).at(0).to_string());
    }
    const Label lhs = unfold_composite(x.c.carrier, functor_apply(x.c.comult, k));
    const Label rhs = functor_map(kappa, k);
    if (!(lhs == rhs)) v.fail("comultiplication", s.to_string() + ": " + lhs.to_string() + " vs " + rhs.to_string());
  }
  return v;
}

bool is_coalgebra_hom(const Coalgebra& a, const Coalgebra& b, const FinFn& h) {
  if (!(h.dom() == a.S) || !(h.cod() == b.S)) return false;
  for (const Label& s : a.S) {
    const Label image = h(s);
    if (!(b.coaction(image) == functor_map([&](const Label& t) { return h(t); }, a.coaction(s)))) return false;
  }
  return true;
}

std::vector<FinFn> coalgebra_homs(const Coalgebra& a, const Coalgebra& b) {
  // A map must preserve κ1, so each s only ranges over the matching fiber of b.
  std::vector<std::vector<std::size_t>> options(a.S.size());
  std::uint64_t candidates = 1;
  for (std::size_t i = 0; i < a.S.size(); ++i) {
    for (std::size_t j = 0; j < b.S.size(); ++j) {
      if (a.kappa1(a.S[i]) == b.kappa1(b.S[j])) options[i].push_back(j);
    }
    candidates = sat_mul(candidates, options[i].size());
  }
  Budget::charge(candidates, "coalgebra_homs");
  std::vector<FinFn> out;
  std::vector<std::size_t> table(a.S.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.S.size()) {
      FinFn h(a.S, b.S, table);
      if (is_coalgebra_hom(a, b, h)) out.push_back(std::move(h));
      return;
    }
    for (std::size_t j : options[i]) {
      table[i] = j;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

Coalgebra representable_coalgebra(const Comonoid& c, const Label& x) {
  const FinSet S = c.carrier.directions(x);
  FinFn kappa1 = FinFn::from_labels(S, c.carrier.positions(), [&](const Label& f) { return target(c, x, f); });
  return make_coalgebra(c, S, kappa1, [&](const Label& f, const Label& g) {
    return c.comult.on_direction(x, Label::pair(f, g));
  });
}

Opfibration coalg_to_opfib(const Coalgebra& x) {
  require_valid(x, "coalg_to_opfib");
  const Comonoid& c = x.c;
  std::vector<Label> mor;
  for (const Label& s : x.S) {
    for (const Label& f : c.carrier.directions(x.kappa1(s))) mor.push_back(Label::pair(s, f));
  }
  FinSet mors = FinSet::of(std::move(mor));
  FinFn src = FinFn::from_labels(mors, x.S, [](const Label& sf) { return sf.at(0); });
  FinFn tgt = FinFn::from_labels(mors, x.S, [&](const Label& sf) { return x.act(sf.at(0), sf.at(1)); });
  FinFn id = FinFn::from_labels(x.S, mors, [&](const Label& s) {
    return Label::pair(s, c.counit.on_direction(x.kappa1(s), Label::unit()));
  });
  std::vector<std::array<Label, 3>> table;
  for (const Label& sf : mors) {
    const Label& s = sf.at(0);
    const Label& t = x.act(s, sf.at(1));
    for (const Label& g : c.carrier.directions(x.kappa1(t))) {
      const Label fg = c.comult.on_direction(x.kappa1(s), Label::pair(sf.at(1), g));
      table.push_back({Label::pair(t, g), sf, Label::pair(s, fg)});
    }
  }
  Opfibration o;
  o.elements = FinCat::make(x.S, mors, src, tgt, id, table);
  o.total = cat_to_comonoid(o.elements);
  o.proj = PolyMor::from_functions(
      o.total.carrier, c.carrier, [&](const Label& s) { return x.kappa1(s); },
      [](const Label& s, const Label& f) { return Label::pair(s, f); });
  return o;
}

Coalgebra opfib_to_coalg(const Opfibration& o, const Comonoid& c) {
  if (!(o.proj.dom() == o.total.carrier) || !(o.proj.cod() == c.carrier)) {
    throw DomainError("opfib_to_coalg: projection does not run from the total comonoid to c");
  }
  if (!o.proj.is_cartesian()) throw DomainError("opfib_to_coalg: projection is not cartesian");
  CofunctorReport r = cofunctor_check(o.proj, o.total, c);
  if (!r.cofunctor.ok()) throw DomainError("opfib_to_coalg: projection is not a cofunctor: " + r.cofunctor.summary());
  const FinSet& S = o.total.carrier.positions();
  FinFn kappa1 = FinFn::from_labels(S, c.carrier.positions(), [&](const Label& s) { return o.proj.on_position(s); });
  return make_coalgebra(c, S, kappa1, [&](const Label& s, const Label& f) {
    return target(o.total, s, o.proj.on_direction(s, f));
  });
}

FinCatPtr copresheaf_base(const Comonoid& c) {
  Translation t = translate_comonoid(c);
  Verdict v = internal_category_check(t);
  if (!v.ok()) throw DomainError("copresheaf_base: not a category: " + v.summary());
  return std::make_shared<const FinCat>(t.cat.opposite());
}

Coalgebra copresheaf_to_coalg(const Comonoid& c, const psh::Presheaf& x) {
  Translation t = translate_comonoid(c);
  if (!(x.base() == t.cat.opposite())) throw DomainError("copresheaf_to_coalg: copresheaf is on another category");
  Verdict v = x.validate();
  if (!v.ok()) throw DomainError("copresheaf_to_coalg: invalid copresheaf: " + v.summary());
  const FinSet& objs = c.carrier.positions();
  std::vector<Label> elems;
  for (std::size_t o = 0; o < objs.size(); ++o) {
    for (const Label& e : x.at(o)) elems.push_back(Label::pair(objs[o], e));
  }
  FinSet S = FinSet::of(std::move(elems));
  FinFn kappa1 = FinFn::from_labels(S, objs, [](const Label& xe) { return xe.at(0); });
  const FinSet& mors = t.cat.morphisms();
  return make_coalgebra(c, S, kappa1, [&](const Label& xe, const Label& f) {
    const Label m = t.distinct ? f : Label::pair(xe.at(0), f);
    return Label::pair(target(c, xe.at(0), f), x.action(mors.index_of(m, "morphism"))(xe.at(1)));
  });
}

psh::Presheaf coalg_to_copresheaf(const Coalgebra& x) {
  require_valid(x, "coalg_to_copresheaf");
  Translation t = translate_comonoid(x.c);
  auto base = std::make_shared<const FinCat>(t.cat.opposite());
  const FinSet& objs = t.cat.objects();
  std::vector<FinSet> at;
  for (const Label& o : objs) {
    std::vector<Label> fiber;
    for (const Label& s : x.S) {
      if (x.kappa1(s) == o) fiber.push_back(s);
    }
    at.push_back(FinSet::from_sorted(std::move(fiber)));
  }
  std::vector<FinFn> action;
  for (std::size_t m = 0; m < t.cat.morphisms().size(); ++m) {
    const Label& name = t.cat.morphisms()[m];
    const Label f = t.distinct ? name : name.at(1);
    action.push_back(FinFn::from_labels(at[t.cat.src()(m)], at[t.cat.tgt()(m)],
                                        [&](const Label& s) { return x.act(s, f); }));
  }
  return psh::Presheaf(base, std::move(at), std::move(action));
}

CoalgebraPullback coalgebra_pullback(const Coalgebra& a, const Coalgebra& b, const Coalgebra& c, const FinFn& f,
                                     const FinFn& g) {
  if (!is_coalgebra_hom(a, c, f) || !is_coalgebra_hom(b, c, g)) {
    throw DomainError("coalgebra_pullback: legs are not coalgebra maps");
  }
  Pullback pb = pullback(f, g);
  FinFn kappa1 = FinFn::from_labels(pb.object, a.c.carrier.positions(),
                                    [&](const Label& st) { return a.kappa1(st.at(0)); });
  Coalgebra obj = make_coalgebra(a.c, pb.object, kappa1, [&](const Label& st, const Label& h) {
    return Label::pair(a.act(st.at(0), h), b.act(st.at(1), h));
  });
  return {obj, pb.p1, pb.p2};
}

}  // namespace polycalc
