#include "polycalc/psh_poly.hpp"

#include <functional>
#include <string>

#include "polycalc/error.hpp"

namespace polycalc::psh {
namespace {

// Componentwise map between presheaves given on labels; naturality is the caller's claim.
PshMor on_labels(const Presheaf& dom, const Presheaf& cod, const std::function<Label(std::size_t, const Label&)>& f) {
  std::vector<FinFn> comps;
  for (std::size_t a = 0; a < dom.components().size(); ++a) {
    comps.push_back(FinFn::from_labels(dom.at(a), cod.at(a), [&](const Label& x) { return f(a, x); }));
  }
  return PshMor(dom, cod, std::move(comps));
}

void check_map(Verdict& v, const char* name, const PshMor& m) {
  Verdict n = m.validate();
  v.merge(n, std::string(name) + " ");
}

}  // namespace

Polynomial linear(const FinCatPtr& base) { return {PshMor::identity(terminal(base))}; }

Polynomial monomial(const Presheaf& a) { return {PshMor::identity(a)}; }

Composite compose(const Polynomial& p, const Polynomial& q) {
  Composite c;
  c.qp = product(q.positions(), p.total());
  c.pi = presheaf_pi(p.proj, c.qp.p2);
  c.to_q = then(c.pi.counit, c.qp.p1);
  c.total = pullback(c.to_q, q.proj);
  c.poly = {then(c.total.p1, c.pi.delta.p1)};
  return c;
}

Polynomial tensor(const Polynomial& p, const Polynomial& q) {
  Product tot = product(p.total(), q.total());
  Product pos = product(p.positions(), q.positions());
  return {on_labels(tot.object, pos.object, [&](std::size_t a, const Label& ee) {
    return Label::pair(p.proj.at(a)(ee.at(0)), q.proj.at(a)(ee.at(1)));
  })};
}

FinCatPtr arrow_base(const FinCat& a) {
  return std::make_shared<const FinCat>(FinCat::product(a, FinCat::walking_arrow()));
}

Presheaf arrow_presheaf(const PshMor& m, const FinCatPtr& arrow) {
  const Presheaf& X = m.dom();
  const Presheaf& Y = m.cod();
  const FinCat& base = X.base();
  std::vector<FinSet> at(arrow->objects().size());
  for (std::size_t o = 0; o < arrow->objects().size(); ++o) {
    const Label& xo = arrow->objects()[o];
    const std::size_t x = base.objects().index_of(xo.at(0), "object");
    at[o] = xo.at(1) == Label("b") ? X.at(x) : Y.at(x);
  }
  std::vector<FinFn> act;
  for (const Label& mn : arrow->morphisms()) {
    const std::size_t k = base.morphisms().index_of(mn.at(0), "morphism");
    const Label& n = mn.at(1);
    if (n == Label("id_a")) act.push_back(Y.action(k));
    else if (n == Label("id_b")) act.push_back(X.action(k));
    else act.push_back(then(X.action(k), m.at(base.src()(k))));
  }
  return Presheaf(arrow, std::move(at), std::move(act));
}

std::optional<std::pair<PshMor, PshMor>> find_poly_iso(const Polynomial& p, const Polynomial& q) {
  const FinCat& base = p.positions().base();
  FinCatPtr arrow = arrow_base(base);
  auto iso = find_iso(arrow_presheaf(p.proj, arrow), arrow_presheaf(q.proj, arrow));
  if (!iso) return std::nullopt;
  std::vector<FinFn> tot, pos;
  for (std::size_t x = 0; x < base.objects().size(); ++x) {
    tot.push_back(iso->at(arrow->objects().index_of(Label::pair(base.objects()[x], "b"))));
    pos.push_back(iso->at(arrow->objects().index_of(Label::pair(base.objects()[x], "a"))));
  }
  return std::make_pair(PshMor(p.total(), q.total(), std::move(tot)),
                        PshMor(p.positions(), q.positions(), std::move(pos)));
}

Verdict validate(const PolyMorphism& m) {
  Verdict v;
  if (!(m.on_pos.dom() == m.dom.positions()) || !(m.on_pos.cod() == m.cod.positions())) {
    v.fail("typing", "positions map");
    return v;
  }
  Pullback pb = pullback(m.on_pos, m.cod.proj);
  if (!(m.sharp.dom() == pb.object) || !(m.sharp.cod() == m.dom.total())) {
    v.fail("typing", "directions map");
    return v;
  }
  check_map(v, "positions", m.on_pos);
  check_map(v, "directions", m.sharp);
  if (!(then(m.sharp, m.dom.proj) == pb.p1)) v.fail("over-positions", "φ♯ does not commute with the projections");
  return v;
}

FinCat component(const InternalCategory& c, std::size_t a) {
  std::vector<std::array<Label, 3>> table;
  for (const Label& fg : c.comp.dom().at(a)) table.push_back({fg.at(1), fg.at(0), c.comp.at(a)(fg)});
  return FinCat::make(c.ob.at(a), c.mor.at(a), c.src.at(a), c.tgt.at(a), c.id.at(a), table);
}

Verdict validate(const InternalCategory& c) {
  Verdict v;
  auto typed = [&](const PshMor& m, const Presheaf& d, const Presheaf& e) { return m.dom() == d && m.cod() == e; };
  if (!typed(c.src, c.mor, c.ob) || !typed(c.tgt, c.mor, c.ob) || !typed(c.id, c.ob, c.mor)) {
    v.fail("typing", "source, target or identity map has the wrong domain or codomain");
    return v;
  }
  check_map(v, "src", c.src);
  check_map(v, "tgt", c.tgt);
  check_map(v, "id", c.id);
  // Composable pairs only form a presheaf once src and tgt are natural.
  if (!v.ok()) return v;
  if (!typed(c.comp, pullback(c.tgt, c.src).object, c.mor)) {
    v.fail("typing", "composition is not defined on the composable pairs");
    return v;
  }
  check_map(v, "comp", c.comp);
  const FinCat& base = c.ob.base();
  for (std::size_t a = 0; a < base.objects().size(); ++a) {
    v.merge(component(c, a).validate(), "at " + base.objects()[a].to_string() + " ");
  }
  return v;
}

Comonoid internal_to_comonoid(const InternalCategory& c) {
  Comonoid m;
  m.carrier = {c.src};
  const FinCatPtr& base = c.ob.base_ptr();
  const Presheaf& C = c.ob;

  Polynomial y = linear(base);
  PshMor bang = to_terminal(C);
  Pullback unit_pb = pullback(bang, y.proj);
  m.counit = {m.carrier, y, bang,
              on_labels(unit_pb.object, c.mor, [&](std::size_t a, const Label& xs) { return c.id.at(a)(xs.at(0)); })};

  m.square = compose(m.carrier, m.carrier);
  const DependentProduct& pi = m.square.pi;
  // δ1 is the transpose of y ↦ (t y, y) over the identity of C.
  Pullback pulled = pullback(PshMor::identity(C), c.src);
  PshMor gamma = on_labels(pulled.object, m.square.qp.object, [&](std::size_t a, const Label& xy) {
    return Label::pair(c.tgt.at(a)(xy.at(1)), xy.at(1));
  });
  PshMor delta1 = pi_transpose(pi, PshMor::identity(C), gamma);
  Pullback comult_pb = pullback(delta1, m.square.poly.proj);
  // [x, [[π, y], e]] ↦ k(y, e).
  PshMor sharp = on_labels(comult_pb.object, c.mor, [&](std::size_t a, const Label& l) {
    const Label& ye = l.at(1);
    return c.comp.at(a)(Label::pair(ye.at(0).at(1), ye.at(1)));
  });
  m.comult = {m.carrier, m.square.poly, delta1, sharp};
  return m;
}

InternalCategory comonoid_to_internal(const Comonoid& m) {
  InternalCategory c;
  c.src = m.carrier.proj;
  c.ob = m.carrier.positions();
  c.mor = m.carrier.total();
  const Presheaf& C = c.ob;

  c.id = on_labels(C, c.mor, [&](std::size_t a, const Label& x) {
    return m.counit.sharp.at(a)(Label::pair(x, m.counit.cod.total().at(a)[0]));
  });

  PiTranspose t = pi_untranspose(m.square.pi, m.comult.on_pos);
  if (!(t.sigma == PshMor::identity(C))) {
    throw DomainError("comultiplication moves positions, so it has no target map");
  }
  c.tgt = on_labels(c.mor, C, [&](std::size_t a, const Label& y) {
    return t.gamma.at(a)(Label::pair(c.src.at(a)(y), y)).at(0);
  });

  Pullback composable = pullback(c.tgt, c.src);
  c.comp = on_labels(composable.object, c.mor, [&](std::size_t a, const Label& ye) {
    const Label& x = c.src.at(a)(ye.at(0));
    const Label& pos = m.comult.on_pos.at(a)(x);
    return m.comult.sharp.at(a)(Label::pair(x, Label::pair(Label::pair(pos, ye.at(0)), ye.at(1))));
  });
  return c;
}

}  // namespace polycalc::psh
