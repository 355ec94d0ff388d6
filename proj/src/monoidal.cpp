#include "polycalc/monoidal.hpp"

#include "polycalc/error.hpp"

namespace polycalc {

Poly tensor(const Poly& p, const Poly& q) { return Poly::tensor_of(p, q); }

LazyMor lazy_identity(const Poly& p) {
  return {p, p, [](const Label& I) { return I; }, [](const Label&, const Label& j) { return j; }};
}

LazyMor tri(const LazyMor& phi, const LazyMor& psi) {
  Poly dom = compose_tri(phi.dom, psi.dom);
  Poly cod = compose_tri(phi.cod, psi.cod);
  auto pos = [phi, psi](const Label& If) {
    const Label& I = If.at(0);
    auto f = If.at(1).items();
    const FinSet pd = phi.dom.directions(I);
    Label I2 = phi.pos(I);
    Label::List f2;
    for (const Label& d2 : phi.cod.directions(I2)) {
      f2.push_back(psi.pos(f[pd.index_of(phi.dir(I, d2), "direction")]));
    }
    return Label::pair(std::move(I2), Label::list(std::move(f2)));
  };
  auto dir = [phi, psi](const Label& If, const Label& de) {
    const Label& I = If.at(0);
    auto f = If.at(1).items();
    const FinSet pd = phi.dom.directions(I);
    Label d = phi.dir(I, de.at(0));
    const Label& J = f[pd.index_of(d, "direction")];
    return Label::pair(std::move(d), psi.dir(J, de.at(1)));
  };
  return {dom, cod, pos, dir};
}

LazyMor tensor(const LazyMor& phi, const LazyMor& psi) {
  Poly dom = tensor(phi.dom, psi.dom);
  Poly cod = tensor(phi.cod, psi.cod);
  return {dom, cod,
          [phi, psi](const Label& IJ) { return Label::pair(phi.pos(IJ.at(0)), psi.pos(IJ.at(1))); },
          [phi, psi](const Label& IJ, const Label& de) {
            return Label::pair(phi.dir(IJ.at(0), de.at(0)), psi.dir(IJ.at(1), de.at(1)));
          }};
}

LazyMor tri_left_unitor(const Poly& p) {
  return {compose_tri(Poly::y(), p), p, [](const Label& P) { return P.at(1).at(0); },
          [](const Label&, const Label& e) { return Label::pair(Label::unit(), e); }};
}

LazyMor tri_left_unitor_inv(const Poly& p) {
  return {p, compose_tri(Poly::y(), p), [](const Label& J) { return Label::pair(Label::unit(), Label::list({J})); },
          [](const Label&, const Label& ue) { return ue.at(1); }};
}

LazyMor tri_right_unitor(const Poly& p) {
  return {compose_tri(p, Poly::y()), p, [](const Label& P) { return P.at(0); },
          [](const Label&, const Label& d) { return Label::pair(d, Label::unit()); }};
}

LazyMor tri_right_unitor_inv(const Poly& p) {
  return {p, compose_tri(p, Poly::y()),
          [p](const Label& I) {
            return Label::pair(I, Label::list(Label::List(p.directions(I).size(), Label::unit())));
          },
          [](const Label&, const Label& du) { return du.at(0); }};
}

LazyMor tri_associator(const Poly& p, const Poly& q, const Poly& r) {
  Poly dom = compose_tri(compose_tri(p, q), r);
  Poly cod = compose_tri(p, compose_tri(q, r));
  // [[I, f], g] ↦ [I, [[f_k, g restricted to the k-th block]...]]; blocks follow q[f_k].
  auto pos = [q](const Label& P) {
    const Label& If = P.at(0);
    auto f = If.at(1).items();
    auto g = P.at(1).items();
    Label::List F;
    std::size_t off = 0;
    for (const Label& J : f) {
      const std::size_t n = q.directions(J).size();
      if (off + n > g.size()) throw DomainError("associator: malformed position " + P.to_string());
      F.push_back(Label::pair(J, Label::list(Label::List(g.begin() + static_cast<long>(off),
                                                         g.begin() + static_cast<long>(off + n)))));
      off += n;
    }
    return Label::pair(If.at(0), Label::list(std::move(F)));
  };
  auto dir = [](const Label&, const Label& dex) {
    return Label::pair(Label::pair(dex.at(0), dex.at(1).at(0)), dex.at(1).at(1));
  };
  return {dom, cod, pos, dir};
}

LazyMor tri_associator_inv(const Poly& p, const Poly& q, const Poly& r) {
  Poly dom = compose_tri(p, compose_tri(q, r));
  Poly cod = compose_tri(compose_tri(p, q), r);
  auto pos = [](const Label& P) {
    Label::List f, g;
    for (const Label& Jh : P.at(1).items()) {
      f.push_back(Jh.at(0));
      for (const Label& x : Jh.at(1).items()) g.push_back(x);
    }
    return Label::pair(Label::pair(P.at(0), Label::list(std::move(f))), Label::list(std::move(g)));
  };
  auto dir = [](const Label&, const Label& dex) {
    return Label::pair(dex.at(0).at(0), Label::pair(dex.at(0).at(1), dex.at(1)));
  };
  return {dom, cod, pos, dir};
}

LazyMor tensor_left_unitor(const Poly& p) {
  return {tensor(Poly::y(), p), p, [](const Label& P) { return P.at(1); },
          [](const Label&, const Label& e) { return Label::pair(Label::unit(), e); }};
}

LazyMor tensor_left_unitor_inv(const Poly& p) {
  return {p, tensor(Poly::y(), p), [](const Label& J) { return Label::pair(Label::unit(), J); },
          [](const Label&, const Label& ue) { return ue.at(1); }};
}

LazyMor tensor_right_unitor(const Poly& p) {
  return {tensor(p, Poly::y()), p, [](const Label& P) { return P.at(0); },
          [](const Label&, const Label& d) { return Label::pair(d, Label::unit()); }};
}

LazyMor tensor_right_unitor_inv(const Poly& p) {
  return {p, tensor(p, Poly::y()), [](const Label& I) { return Label::pair(I, Label::unit()); },
          [](const Label&, const Label& du) { return du.at(0); }};
}

LazyMor tensor_associator(const Poly& p, const Poly& q, const Poly& r) {
  return {tensor(tensor(p, q), r), tensor(p, tensor(q, r)),
          [](const Label& P) { return Label::pair(P.at(0).at(0), Label::pair(P.at(0).at(1), P.at(1))); },
          [](const Label&, const Label& d) {
            return Label::pair(Label::pair(d.at(0), d.at(1).at(0)), d.at(1).at(1));
          }};
}

LazyMor tensor_associator_inv(const Poly& p, const Poly& q, const Poly& r) {
  return {tensor(p, tensor(q, r)), tensor(tensor(p, q), r),
          [](const Label& P) { return Label::pair(Label::pair(P.at(0), P.at(1).at(0)), P.at(1).at(1)); },
          [](const Label&, const Label& d) {
            return Label::pair(d.at(0).at(0), Label::pair(d.at(0).at(1), d.at(1)));
          }};
}

LazyMor braiding(const Poly& p, const Poly& q) {
  return {tensor(p, q), tensor(q, p), [](const Label& P) { return Label::pair(P.at(1), P.at(0)); },
          [](const Label&, const Label& d) { return Label::pair(d.at(1), d.at(0)); }};
}

}  // namespace polycalc
