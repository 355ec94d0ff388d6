#include "polycalc/structures.hpp"

#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly_ops.hpp"

namespace polycalc {

LazyMor interchange(const Poly& p1, const Poly& p2, const Poly& q1, const Poly& q2) {
  Poly dom = tensor(compose_tri(p1, p2), compose_tri(q1, q2));
  Poly cod = compose_tri(tensor(p1, q1), tensor(p2, q2));
  auto pos = [](const Label& P) {
    const Label& IJ = P.at(0);
    const Label& KL = P.at(1);
    auto J = IJ.at(1).items();
    auto L = KL.at(1).items();
    Label::List M;
    M.reserve(J.size() * L.size());
    for (const Label& a : J) {
      for (const Label& b : L) M.push_back(Label::pair(a, b));
    }
    return Label::pair(Label::pair(IJ.at(0), KL.at(0)), Label::list(std::move(M)));
  };
  auto dir = [](const Label&, const Label& d) {
    const Label& ik = d.at(0);
    const Label& ab = d.at(1);
    return Label::pair(Label::pair(ik.at(0), ab.at(0)), Label::pair(ik.at(1), ab.at(1)));
  };
  return {dom, cod, pos, dir};
}

Poly closure(const Poly& p, const Poly& q) {
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  const FinSet& pp = p.positions();
  for_each_hom(p, q, [&](const PolyMor& phi) {
    std::vector<Label> ds;
    for (std::size_t i = 0; i < pp.size(); ++i) {
      for (const Label& j : phi.cod_directions(i)) ds.push_back(Label::pair(pp[i], j));
    }
    pos.push_back(mor_label(phi));
    dirs.push_back(FinSet::from_sorted(std::move(ds)));
    return true;
  });
  return Poly::make(FinSet::from_sorted(std::move(pos)), std::move(dirs));
}

LazyMor closure_eval(const Poly& p, const Poly& q) {
  Poly dom = tensor(p, closure(p, q));
  auto pos = [p](const Label& P) { return P.at(1).at(0).at(p.index_of(P.at(0))); };
  auto dir = [p, q](const Label& P, const Label& j) {
    const std::size_t i = p.index_of(P.at(0));
    const Label& phi = P.at(1);
    const std::size_t jj = q.directions(phi.at(0).at(i)).index_of(j, "direction");
    return Label::pair(phi.at(1).at(i).at(jj), Label::pair(P.at(0), j));
  };
  return {dom, q, pos, dir};
}

PolyMor closure_pair(const Poly& p, const Poly& q) {
  Poly pq = tensor(p, q);
  Poly cod = closure(p, pq);
  auto pos = [p, pq](const Label& J) {
    PolyMor pi = PolyMor::from_functions(
        p, pq, [&J](const Label& I) { return Label::pair(I, J); },
        [](const Label&, const Label& de) { return de.at(0); });
    return mor_label(pi);
  };
  auto dir = [](const Label&, const Label& Ide) { return Ide.at(1).at(1); };
  return PolyMor::from_functions(q, cod, pos, dir);
}

PolyMor closure_transpose(const PolyMor& phi, const Poly& p, const Poly& q) {
  if (!(phi.dom() == tensor(p, q))) throw DomainError("closure_transpose: domain is not p ⊗ q");
  const Poly& r = phi.cod();
  Poly cod = closure(q, r);
  auto pos = [&](const Label& I) {
    PolyMor slice = PolyMor::from_functions(
        q, r, [&](const Label& J) { return phi.on_position(Label::pair(I, J)); },
        [&](const Label& J, const Label& k) { return phi.on_direction(Label::pair(I, J), k).at(1); });
    return mor_label(slice);
  };
  auto dir = [&](const Label& I, const Label& Jk) {
    return phi.on_direction(Label::pair(I, Jk.at(0)), Jk.at(1)).at(0);
  };
  return PolyMor::from_functions(p, cod, pos, dir);
}

PolyMor closure_untranspose(const PolyMor& psi, const Poly& q, const Poly& r) {
  const Poly& p = psi.dom();
  auto pos = [&](const Label& IJ) { return psi.on_position(IJ.at(0)).at(0).at(q.index_of(IJ.at(1))); };
  auto dir = [&](const Label& IJ, const Label& k) {
    const Label L = psi.on_position(IJ.at(0));
    const std::size_t j = q.index_of(IJ.at(1));
    const std::size_t kk = r.directions(L.at(0).at(j)).index_of(k, "direction");
    return Label::pair(psi.on_direction(IJ.at(0), Label::pair(IJ.at(1), k)), L.at(1).at(j).at(kk));
  };
  return PolyMor::from_functions(tensor(p, q), r, pos, dir);
}

PolyMor closure_map(const Poly& p, const PolyMor& chi) {
  const Poly& q = chi.dom();
  Poly dom = closure(p, q);
  Poly cod = closure(p, chi.cod());
  auto pos = [&](const Label& phi) { return mor_label(then(mor_from_label(p, q, phi), chi)); };
  auto dir = [&](const Label& phi, const Label& Ij) {
    const Label& J = phi.at(0).at(p.index_of(Ij.at(0)));
    return Label::pair(Ij.at(0), chi.on_direction(J, Ij.at(1)));
  };
  return PolyMor::from_functions(dom, cod, pos, dir);
}

PolyMor closure_comap(const PolyMor& gamma, const Poly& q) {
  const Poly& p = gamma.dom();
  const Poly& p2 = gamma.cod();
  Poly dom = closure(p2, q);
  Poly cod = closure(p, q);
  auto pos = [&](const Label& phi) { return mor_label(then(gamma, mor_from_label(p2, q, phi))); };
  auto dir = [&](const Label&, const Label& Ij) {
    return Label::pair(gamma.on_position(Ij.at(0)), Ij.at(1));
  };
  return PolyMor::from_functions(dom, cod, pos, dir);
}

Poly right_coclosure(const Poly& p, const Poly& q) {
  const FinSet& pp = p.positions();
  const FinSet& qp = q.positions();
  std::uint64_t total = 0;
  for (std::size_t I = 0; I < pp.size(); ++I) {
    for (std::size_t J = 0; J < qp.size(); ++J) {
      total = sat_add(total, sat_pow(p.directions(I).size(), q.directions(J).size()));
    }
  }
  Budget::charge(total, "right_coclosure");
  std::vector<FinSet> dirs;
  for (std::size_t I = 0; I < pp.size(); ++I) {
    const FinSet& pd = p.directions(I);
    std::vector<Label> ds;
    for (std::size_t J = 0; J < qp.size(); ++J) {
      const std::size_t n = q.directions(J).size();
      if (pd.empty() && n > 0) continue;
      std::vector<std::size_t> odo(n, 0);
      while (true) {
        Label::List h;
        for (std::size_t v : odo) h.push_back(pd[v]);
        ds.push_back(Label::pair(qp[J], Label::list(std::move(h))));
        std::size_t k = n;
        while (k-- > 0) {
          if (++odo[k] < pd.size()) break;
          odo[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
    }
    dirs.push_back(FinSet::from_sorted(std::move(ds)));
  }
  return Poly::make(pp, std::move(dirs));
}

PolyMor rc_transpose(const PolyMor& psi, const Poly& q) {
  const Poly& cod = psi.cod();
  if (!cod.is_composite() || !(cod.right() == q)) throw DomainError("rc_transpose: codomain is not r ◁ q");
  const Poly& r = cod.left();
  const Poly& p = psi.dom();
  auto pos = [&](const Label& I) { return psi.on_position(I).at(0); };
  auto dir = [&](const Label& I, const Label& k) {
    const Label Kf = psi.on_position(I);
    const std::size_t kk = r.directions(Kf.at(0)).index_of(k, "direction");
    const Label& J = Kf.at(1).at(kk);
    Label::List h;
    for (const Label& e : q.directions(J)) h.push_back(psi.on_direction(I, Label::pair(k, e)));
    return Label::pair(J, Label::list(std::move(h)));
  };
  return PolyMor::from_functions(right_coclosure(p, q), r, pos, dir);
}

PolyMor rc_untranspose(const PolyMor& phi, const Poly& p, const Poly& q) {
  if (!(phi.dom() == right_coclosure(p, q))) throw DomainError("rc_untranspose: domain is not ⟨p|q⟩");
  const Poly& r = phi.cod();
  auto pos = [&](const Label& I) {
    Label K = phi.on_position(I);
    Label::List f;
    for (const Label& k : r.directions(K)) f.push_back(phi.on_direction(I, k).at(0));
    return Label::pair(std::move(K), Label::list(std::move(f)));
  };
  auto dir = [&](const Label& I, const Label& ke) {
    const Label Jh = phi.on_direction(I, ke.at(0));
    const std::size_t idx = q.directions(Jh.at(0)).index_of(ke.at(1), "direction");
    return Jh.at(1).at(idx);
  };
  return PolyMor::from_functions(p, compose_tri(r, q), pos, dir);
}

Poly frown(const Poly& p, const FinFn& f, const Poly& q) {
  if (!(f.dom() == p.positions()) || !(f.cod() == q.positions())) {
    throw DomainError("frown: f must map positions of p to positions of q");
  }
  const FinSet& pp = p.positions();
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (std::size_t I = 0; I < pp.size(); ++I) {
    for (const Label& e : q.directions(f(I))) {
      pos.push_back(Label::pair(pp[I], e));
      dirs.push_back(p.directions(I));
    }
  }
  return Poly::make(FinSet::from_sorted(std::move(pos)), std::move(dirs));
}

FrownTranspose frown_transpose(const PolyMor& psi) {
  const Poly& cod = psi.cod();
  if (!cod.is_composite()) throw DomainError("frown_transpose: codomain is not q ◁ r");
  const Poly& q = cod.left();
  const Poly& r = cod.right();
  const Poly& p = psi.dom();
  FinFn f = FinFn::from_labels(p.positions(), q.positions(), [&](const Label& I) { return psi.on_position(I).at(0); });
  auto pos = [&](const Label& Ie) {
    const Label Jg = psi.on_position(Ie.at(0));
    return Jg.at(1).at(q.directions(Jg.at(0)).index_of(Ie.at(1), "direction"));
  };
  auto dir = [&](const Label& Ie, const Label& x) { return psi.on_direction(Ie.at(0), Label::pair(Ie.at(1), x)); };
  PolyMor m = PolyMor::from_functions(frown(p, f, q), r, pos, dir);
  return {std::move(f), std::move(m)};
}

PolyMor frown_untranspose(const Poly& p, const FinFn& f, const Poly& q, const PolyMor& phi) {
  if (!(phi.dom() == frown(p, f, q))) throw DomainError("frown_untranspose: domain is not p ⌢_f q");
  const Poly& r = phi.cod();
  auto pos = [&](const Label& I) {
    const Label& J = f(I);
    Label::List g;
    for (const Label& e : q.directions(J)) g.push_back(phi.on_position(Label::pair(I, e)));
    return Label::pair(J, Label::list(std::move(g)));
  };
  auto dir = [&](const Label& I, const Label& ex) {
    return phi.on_direction(Label::pair(I, ex.at(0)), ex.at(1));
  };
  return PolyMor::from_functions(p, compose_tri(q, r), pos, dir);
}

PolyMor closure_tri_lax(const Poly& p1, const Poly& q1, const Poly& p2, const Poly& q2) {
  Poly c1 = closure(p1, q1);
  Poly c2 = closure(p2, q2);
  Poly x = compose_tri(c1, c2);
  Poly a = compose_tri(p1, p2);
  LazyMor ev = tri(closure_eval(p1, q1), closure_eval(p2, q2));
  LazyMor chain = then(then(braiding(x, a), interchange(p1, p2, c1, c2)), ev);
  PolyMor flat = chain.materialize();
  return closure_transpose(flat, x, a);
}

PolyMor coclosure_tensor_map(const Poly& p1, const Poly& q1, const Poly& p2, const Poly& q2) {
  Poly r1 = right_coclosure(p1, q1);
  Poly r2 = right_coclosure(p2, q2);
  PolyMor eta1 = rc_untranspose(PolyMor::identity(r1), p1, q1);
  PolyMor eta2 = rc_untranspose(PolyMor::identity(r2), p2, q2);
  LazyMor chain = then(tensor(eta1, eta2), interchange(r1, q1, r2, q2));
  return rc_transpose(chain.materialize(), tensor(q1, q2));
}

FinFn position_product(const Poly& p1, const FinFn& f1, const Poly& p2, const FinFn& f2, const Poly& q1,
                       const Poly& q2) {
  return FinFn::from_labels(tensor(p1, p2).positions(), tensor(q1, q2).positions(), [&](const Label& I) {
    return Label::pair(f1(I.at(0)), f2(I.at(1)));
  });
}

PolyMor frown_tensor_iso(const Poly& p1, const FinFn& f1, const Poly& q1, const Poly& p2, const FinFn& f2,
                         const Poly& q2) {
  Poly dom = frown(tensor(p1, p2), position_product(p1, f1, p2, f2, q1, q2), tensor(q1, q2));
  Poly cod = tensor(frown(p1, f1, q1), frown(p2, f2, q2));
  return PolyMor::from_functions(
      dom, cod,
      [](const Label& P) {
        return Label::pair(Label::pair(P.at(0).at(0), P.at(1).at(0)), Label::pair(P.at(0).at(1), P.at(1).at(1)));
      },
      [](const Label&, const Label& d) { return d; });
}

}  // namespace polycalc
