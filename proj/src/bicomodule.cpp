#include "polycalc/bicomodule.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"
#include "polycalc/functor.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly_ops.hpp"

namespace polycalc {
namespace {

void law(Verdict& v, const std::string& name, const PolyMor& lhs, const PolyMor& rhs) {
  const std::string diff = first_difference(lhs, rhs);
  if (!diff.empty()) v.fail(name, diff);
}

bool same_comonoid(const Comonoid& a, const Comonoid& b) {
  return a.carrier == b.carrier && a.counit == b.counit && a.comult == b.comult;
}

bool is_discrete(const Comonoid& c) {
  return same_comonoid(c, discrete_comonoid(c.carrier.positions()));
}

Label identity_pos(const Label& x) { return x; }

}  // namespace

Verdict comodule_check(const Comonoid& c, const PolyMor& coaction, Side side) {
  const Poly& m = coaction.dom();
  const Poly& p = c.carrier;
  const LazyMor idm = lazy_identity(m);
  const LazyMor idc = lazy_identity(p);
  const LazyMor k = LazyMor::of(coaction);
  Verdict v;
  if (side == Side::Left) {
    if (!(coaction.cod() == compose_tri(p, m))) throw DomainError("left coaction must be a morphism m → c ◁ m");
    law(v, "left counit", then(coaction, tri(LazyMor::of(c.counit), idm)), tri_left_unitor_inv(m).materialize());
    law(v, "left coassociativity", then(then(coaction, tri(LazyMor::of(c.comult), idm)), tri_associator(p, p, m)),
        then(coaction, tri(idc, k)));
  } else {
    if (!(coaction.cod() == compose_tri(m, p))) throw DomainError("right coaction must be a morphism m → m ◁ d");
    law(v, "right counit", then(coaction, tri(idm, LazyMor::of(c.counit))), tri_right_unitor_inv(m).materialize());
    law(v, "right coassociativity", then(then(coaction, tri(k, idc)), tri_associator(m, p, p)),
        then(coaction, tri(idm, LazyMor::of(c.comult))));
  }
  return v;
}

Verdict bicomodule_check(const Bicomodule& b) {
  if (!(b.left.dom() == b.m) || !(b.right.dom() == b.m)) throw DomainError("coactions must start at the bicomodule");
  Verdict v;
  v.merge(comodule_check(b.c, b.left, Side::Left));
  v.merge(comodule_check(b.d, b.right, Side::Right));
  law(v, "compatibility",
      then(then(b.right, tri(LazyMor::of(b.left), lazy_identity(b.d.carrier))),
           tri_associator(b.c.carrier, b.m, b.d.carrier)),
      then(b.left, tri(lazy_identity(b.c.carrier), LazyMor::of(b.right))));
  if (v.ok()) {
    v.merge(coalg_check(left_coalgebra(b)), "induced left coalgebra ");
    v.merge(coalg_check(right_coalgebra(b)), "induced right coalgebra ");
  }
  return v;
}

Bicomodule identity_bicomodule(const Comonoid& c) { return {c, c, c.carrier, c.comult, c.comult}; }

Coalgebra left_coalgebra(const Bicomodule& b) {
  const FinSet& S = b.m.positions();
  FinFn kappa1 = FinFn::from_labels(S, b.c.carrier.positions(),
                                    [&](const Label& I) { return b.left.on_position(I).at(0); });
  return make_coalgebra(b.c, S, kappa1, [&](const Label& I, const Label& f) {
    const Label& xJ = b.left.on_position(I);
    return xJ.at(1).at(b.c.carrier.directions(xJ.at(0)).index_of(f, "direction"));
  });
}

Coalgebra right_coalgebra(const Bicomodule& b) {
  const FinSet S = p_star(b.m).poly.positions();
  for (const Label& I : b.m.positions()) {
    if (!(b.right.on_position(I).at(0) == I)) {
      throw DomainError("right coaction moves position " + I.to_string());
    }
  }
  auto type = [&](const Label& I, const Label& e) {
    return b.right.on_position(I).at(1).at(b.m.directions(I).index_of(e, "direction"));
  };
  FinFn kappa1 = FinFn::from_labels(S, b.d.carrier.positions(),
                                    [&](const Label& Ie) { return type(Ie.at(0), Ie.at(1)); });
  return make_coalgebra(b.d, S, kappa1, [&](const Label& Ie, const Label& g) {
    return Label::pair(Ie.at(0), b.right.on_direction(Ie.at(0), Label::pair(Ie.at(1), g)));
  });
}

Coalgebra fiber_coalgebra(const Bicomodule& b, const Label& pos) {
  const Label& J = b.right.on_position(pos);
  if (!(J.at(0) == pos)) throw DomainError("right coaction moves position " + pos.to_string());
  const FinSet S = b.m.directions(pos);
  FinFn kappa1 = FinFn::from_labels(S, b.d.carrier.positions(),
                                    [&](const Label& e) { return J.at(1).at(S.index_of(e)); });
  return make_coalgebra(b.d, S, kappa1,
                        [&](const Label& e, const Label& g) { return b.right.on_direction(pos, Label::pair(e, g)); });
}

Verdict bicomodule_hom_check(const PolyMor& gamma, const Bicomodule& b, const Bicomodule& b2, const PolyMor& phi,
                             const PolyMor& psi) {
  if (!(gamma.dom() == b.m) || !(gamma.cod() == b2.m)) throw DomainError("homomorphism must run between the bicomodules");
  if (!(phi.dom() == b.c.carrier) || !(phi.cod() == b2.c.carrier) || !(psi.dom() == b.d.carrier) ||
      !(psi.cod() == b2.d.carrier)) {
    throw DomainError("cofunctors must run between the comonoids of the bicomodules");
  }
  Verdict v;
  law(v, "left square", then(b.left, tri(phi, gamma)), then(gamma, b2.left));
  law(v, "right square", then(b.right, tri(gamma, psi)), then(gamma, b2.right));
  return v;
}

void typed_check(const TypedPoly& t) {
  if (!(t.tgt.dom() == t.m.positions())) throw DomainError("typed polynomial: tgt must be defined on the positions");
  if (!(t.src.dom() == p_star(t.m).poly.positions())) {
    throw DomainError("typed polynomial: src must be defined on the total space [I, e]");
  }
}

TypedPoly typed_identity(const FinSet& C) {
  Poly m = Poly::monomial(C, FinSet::unit());
  FinFn src = FinFn::from_labels(p_star(m).poly.positions(), C, [](const Label& xe) { return xe.at(0); });
  return {m, src, FinFn::identity(C)};
}

Bicomodule bicomod_from_typed(const TypedPoly& t) {
  typed_check(t);
  Comonoid c = discrete_comonoid(t.tgt.cod());
  Comonoid d = discrete_comonoid(t.src.cod());
  PolyMor left = PolyMor::from_functions(
      t.m, compose_tri(c.carrier, t.m), [&](const Label& I) { return Label::pair(t.tgt(I), Label::list({I})); },
      [](const Label&, const Label& de) { return de.at(1); });
  PolyMor right = PolyMor::from_functions(
      t.m, compose_tri(t.m, d.carrier),
      [&](const Label& I) {
        Label::List types;
        for (const Label& e : t.m.directions(I)) types.push_back(t.src(Label::pair(I, e)));
        return Label::pair(I, Label::list(std::move(types)));
      },
      [](const Label&, const Label& ed) { return ed.at(0); });
  return {c, d, t.m, left, right};
}

TypedPoly typed_from_bicomod(const Bicomodule& b) {
  if (!is_discrete(b.c) || !is_discrete(b.d)) throw DomainError("typed_from_bicomod: comonoids must be discrete");
  Verdict v = bicomodule_check(b);
  if (!v.ok()) throw DomainError("typed_from_bicomod: not a bicomodule: " + v.summary());
  FinFn tgt = FinFn::from_labels(b.m.positions(), b.c.carrier.positions(),
                                 [&](const Label& I) { return b.left.on_position(I).at(0); });
  FinFn src = FinFn::from_labels(p_star(b.m).poly.positions(), b.d.carrier.positions(), [&](const Label& Ie) {
    return b.right.on_position(Ie.at(0)).at(1).at(b.m.directions(Ie.at(0)).index_of(Ie.at(1)));
  });
  return {b.m, src, tgt};
}

bool is_typed_hom(const PolyMor& gamma, const TypedPoly& t, const TypedPoly& t2) {
  if (!(gamma.dom() == t.m) || !(gamma.cod() == t2.m)) return false;
  if (!(t.tgt.cod() == t2.tgt.cod()) || !(t.src.cod() == t2.src.cod())) return false;
  for (const Label& I : t.m.positions()) {
    const Label J = gamma.on_position(I);
    if (!(t2.tgt(J) == t.tgt(I))) return false;
    for (const Label& e : t2.m.directions(J)) {
      if (!(t.src(Label::pair(I, gamma.on_direction(I, e))) == t2.src(Label::pair(J, e)))) return false;
    }
  }
  return true;
}

std::optional<PolyMor> typed_iso(const TypedPoly& t, const TypedPoly& t2) {
  typed_check(t);
  typed_check(t2);
  if (!(t.tgt.cod() == t2.tgt.cod()) || !(t.src.cod() == t2.src.cod())) return std::nullopt;
  // A position's signature: its type and the sorted types of its directions.
  auto signature = [](const TypedPoly& u, const Label& I) {
    std::vector<Label> types;
    for (const Label& e : u.m.directions(I)) types.push_back(u.src(Label::pair(I, e)));
    std::sort(types.begin(), types.end());
    return Label::pair(u.tgt(I), Label::list(std::move(types)));
  };
  const FinSet& P = t.m.positions();
  const FinSet& P2 = t2.m.positions();
  if (P.size() != P2.size()) return std::nullopt;
  std::multimap<Label, Label> free;
  for (const Label& J : P2) free.emplace(signature(t2, J), J);
  std::vector<Label> image;
  std::vector<std::vector<std::size_t>> sharp;
  for (const Label& I : P) {
    auto it = free.find(signature(t, I));
    if (it == free.end()) return std::nullopt;
    const Label J = it->second;
    free.erase(it);
    // Match directions of equal type in canonical order.
    const FinSet dI = t.m.directions(I);
    std::multimap<Label, std::size_t> by_type;
    for (std::size_t k = 0; k < dI.size(); ++k) by_type.emplace(t.src(Label::pair(I, dI[k])), k);
    std::vector<std::size_t> table;
    for (const Label& e : t2.m.directions(J)) {
      auto hit = by_type.find(t2.src(Label::pair(J, e)));
      table.push_back(hit->second);
      by_type.erase(hit);
    }
    image.push_back(J);
    sharp.push_back(std::move(table));
  }
  return PolyMor(t.m, t2.m, std::move(image), std::move(sharp));
}

TypedPoly typed_compose(const TypedPoly& p, const TypedPoly& q) {
  typed_check(p);
  typed_check(q);
  if (!(p.src.cod() == q.tgt.cod())) throw DomainError("typed_compose: middle types differ");
  const FinSet& Q = q.m.positions();
  std::map<Label, FinSet> positions;
  std::map<Label, Label> types;
  for (const Label& I : p.m.positions()) {
    const FinSet dirs = p.m.directions(I);
    std::vector<std::vector<Label>> options;
    std::uint64_t count = 1;
    for (const Label& d : dirs) {
      std::vector<Label> fits;
      for (const Label& J : Q) {
        if (q.tgt(J) == p.src(Label::pair(I, d))) fits.push_back(J);
      }
      count = sat_mul(count, fits.size());
      options.push_back(std::move(fits));
    }
    Budget::charge(count, "typed_compose");
    Label::List chosen(dirs.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == dirs.size()) {
        std::vector<Label> ds;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
          for (const Label& e : q.m.directions(chosen[i])) ds.push_back(Label::pair(dirs[i], e));
        }
        Label pos = Label::pair(I, Label::list(chosen));
        types.emplace(pos, p.tgt(I));
        positions.emplace(std::move(pos), FinSet::from_sorted(std::move(ds)));
        return;
      }
      for (const Label& J : options[k]) {
        chosen[k] = J;
        rec(k + 1);
      }
    };
    rec(0);
  }
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (auto& [k, v] : positions) {
    pos.push_back(k);
    dirs.push_back(v);
  }
  Poly m = Poly::make(FinSet::from_sorted(pos), std::move(dirs));
  FinFn tgt = FinFn::from_labels(m.positions(), p.tgt.cod(), [&](const Label& I) { return types.at(I); });
  FinFn src = FinFn::from_labels(p_star(m).poly.positions(), q.src.cod(), [&](const Label& Xde) {
    const Label& X = Xde.at(0);
    const Label& d = Xde.at(1).at(0);
    const Label& J = X.at(1).at(p.m.directions(X.at(0)).index_of(d));
    return q.src(Label::pair(J, Xde.at(1).at(1)));
  });
  return {m, src, tgt};
}

Bicomodule bicomod_compose(const Bicomodule& mb, const Bicomodule& nb, bool allow_general) {
  if (!same_comonoid(mb.d, nb.c)) throw DomainError("bicomod_compose: the middle comonoids differ");
  const Poly& m = mb.m;
  const Poly& n = nb.m;
  const Poly& d = mb.d.carrier;
  const Poly& e = nb.d.carrier;
  const Poly mn = compose_tri(m, n);
  const bool cartesian = mb.right.is_cartesian() && nb.left.is_cartesian();
  if (!cartesian && !allow_general) {
    throw DomainError(
        "bicomod_compose: the right coaction of the first and the left coaction of the second bicomodule "
        "must be cartesian");
  }
  PolyMor f = then(tri(LazyMor::of(mb.right), lazy_identity(n)), tri_associator(m, d, n)).materialize();
  PolyMor g = tri(lazy_identity(m), LazyMor::of(nb.left)).materialize();

  Poly E;
  PolyMor incl;
  if (cartesian) {
    Diagram diag;
    diag.nodes = {f.dom(), f.cod()};
    diag.edges = {{0, 1, f}, {0, 1, g}};
    Limit lim = cartesian_limit(diag);
    // Positions are tuples [x0, x1] with x1 determined by x0; keep x0.
    const FinSet& lp = lim.object.positions();
    std::vector<Label> pos;
    std::vector<FinSet> dirs;
    std::vector<std::vector<std::size_t>> sharp;
    for (std::size_t i = 0; i < lp.size(); ++i) {
      pos.push_back(lp[i].at(0));
      dirs.push_back(lim.object.directions(i));
      sharp.push_back(lim.legs[0].sharp(i));
    }
    std::vector<Label> img = pos;
    E = Poly::make(FinSet::from_sorted(std::move(pos)), std::move(dirs));
    incl = PolyMor(E, f.dom(), std::move(img), std::move(sharp));
  } else {
    Equalizer eq = equalizer(f, g);
    E = eq.object;
    incl = eq.incl;
  }

  const Comonoid& c = mb.c;
  const LazyMor in = LazyMor::of(incl);
  PolyMor left_up = then(incl, then(tri(LazyMor::of(mb.left), lazy_identity(n)), tri_associator(c.carrier, m, n)));
  PolyMor left = lift_through(left_up, tri(lazy_identity(c.carrier), in), identity_pos);
  PolyMor right_up = then(incl, then(tri(lazy_identity(m), LazyMor::of(nb.right)), tri_associator_inv(m, n, e)));
  // A position of E ◁ e lists one d-type per direction class; read it at the class label.
  auto class_types = [&](const Label& T) {
    const Label& X = T.at(0);
    if (!E.has_position(X)) return T;
    const FinSet all = mn.directions(X);
    Label::List ys;
    for (const Label& k : E.directions(X)) ys.push_back(T.at(1).at(all.index_of(k, "direction")));
    return Label::pair(X, Label::list(std::move(ys)));
  };
  PolyMor right = lift_through(right_up, tri(in, lazy_identity(e)), class_types);

  if (!cartesian) {
    // − ◁ e must carry the equalizer to the equalizer of f ◁ e and g ◁ e.
    const LazyMor ide = lazy_identity(e);
    Equalizer after = equalizer(tri(LazyMor::of(f), ide).materialize(), tri(LazyMor::of(g), ide));
    if (!iso_check(after.object, compose_tri(E, e).materialized())) {
      throw DomainError("bicomod_compose: the equalizer is not preserved by − ◁ e");
    }
  }
  Bicomodule out{c, nb.d, E, left, right};
  Verdict v = bicomodule_check(out);
  if (!v.ok()) throw DomainError("bicomod_compose: composite fails " + v.summary());
  return out;
}

Coalgebra migrate(const Bicomodule& b, const Coalgebra& x) {
  if (!same_comonoid(b.d, x.c)) throw DomainError("migrate: coalgebra is over another comonoid");
  auto kappa = [&](const Label& s) { return x.coaction(s); };
  std::vector<Label> elems;
  for (const Label& I : b.m.positions()) {
    const Label& J = b.right.on_position(I);
    if (!(J.at(0) == I)) continue;
    // s_e must lie over the type of e; the equation below is the full condition.
    const FinSet dirs = b.m.directions(I);
    std::vector<std::vector<Label>> options(dirs.size());
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      for (const Label& s : x.S) {
        if (x.kappa1(s) == J.at(1).at(k)) options[k].push_back(s);
      }
      count = sat_mul(count, options[k].size());
    }
    Budget::charge(count, "migrate");
    Label::List t(dirs.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == dirs.size()) {
        Label sigma = Label::pair(I, Label::list(t));
        if (unfold_composite(b.d.carrier, functor_apply(b.right, sigma)) == functor_map(kappa, sigma)) {
          elems.push_back(std::move(sigma));
        }
        return;
      }
      for (const Label& s : options[k]) {
        t[k] = s;
        rec(k + 1);
      }
    };
    rec(0);
  }
  FinSet S = FinSet::of(std::move(elems));
  FinFn kappa1 = FinFn::from_labels(S, b.c.carrier.positions(),
                                    [&](const Label& sigma) { return b.left.on_position(sigma.at(0)).at(0); });
  return make_coalgebra(b.c, S, kappa1, [&](const Label& sigma, const Label& f) {
    const Label moved = unfold_composite(b.m, functor_apply(b.left, sigma));
    return moved.at(1).at(b.c.carrier.directions(moved.at(0)).index_of(f, "direction"));
  });
}

FinFn migrate_hom(const Bicomodule& m, const Coalgebra& x, const Coalgebra& y, const FinFn& h) {
  if (!is_coalgebra_hom(x, y, h)) throw DomainError("migrate_hom: not a coalgebra map");
  Coalgebra mx = migrate(m, x);
  Coalgebra my = migrate(m, y);
  return FinFn::from_labels(mx.S, my.S, [&](const Label& sigma) {
    return functor_map([&](const Label& s) { return h(s); }, sigma);
  });
}

Bicomodule bicomod_from_coalgebra(const Coalgebra& r) {
  Comonoid c = discrete_comonoid(FinSet::unit());
  Poly m = Poly::make(FinSet::unit(), {r.S});
  PolyMor left = PolyMor::from_functions(
      m, compose_tri(c.carrier, m), [](const Label& I) { return Label::pair(I, Label::list({I})); },
      [](const Label&, const Label& de) { return de.at(1); });
  PolyMor right = PolyMor::from_functions(
      m, compose_tri(m, r.c.carrier),
      [&](const Label& I) {
        Label::List types;
        for (const Label& s : r.S) types.push_back(r.kappa1(s));
        return Label::pair(I, Label::list(std::move(types)));
      },
      [&](const Label&, const Label& sg) { return r.act(sg.at(0), sg.at(1)); });
  return {c, r.c, m, left, right};
}

}  // namespace polycalc
