#include "polycalc/functor.hpp"

#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"

namespace polycalc {

FinSet eval_functor(const Poly& p, const FinSet& x) {
  const FinSet& pp = p.positions();
  std::uint64_t count = 0;
  for (std::size_t I = 0; I < pp.size(); ++I) count = sat_add(count, sat_pow(x.size(), p.directions(I).size()));
  Budget::charge(count, "eval_functor");
  std::vector<Label> out;
  out.reserve(count);
  for (std::size_t I = 0; I < pp.size(); ++I) {
    const std::size_t n = p.directions(I).size();
    if (x.empty() && n > 0) continue;
    std::vector<std::size_t> odo(n, 0);
    while (true) {
      Label::List g;
      g.reserve(n);
      for (std::size_t k : odo) g.push_back(x[k]);
      out.push_back(Label::pair(pp[I], Label::list(std::move(g))));
      std::size_t k = n;
      while (k-- > 0) {
        if (++odo[k] < x.size()) break;
        odo[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  return FinSet::from_sorted(std::move(out));
}

Label functor_map(const std::function<Label(const Label&)>& h, const Label& elem) {
  Label::List g;
  for (const Label& v : elem.at(1).items()) g.push_back(h(v));
  return Label::pair(elem.at(0), Label::list(std::move(g)));
}

FinFn eval_functor_map(const Poly& p, const FinFn& h) {
  FinSet dom = eval_functor(p, h.dom());
  FinSet cod = eval_functor(p, h.cod());
  return FinFn::from_labels(dom, cod, [&](const Label& e) {
    return functor_map([&](const Label& v) { return h(v); }, e);
  });
}

Label functor_apply(const LazyMor& phi, const Label& elem) {
  const Label& I = elem.at(0);
  auto g = elem.at(1).items();
  const FinSet pd = phi.dom.directions(I);
  if (pd.size() != g.size()) throw DomainError("element " + elem.to_string() + " has the wrong arity");
  Label J = phi.pos(I);
  Label::List out;
  for (const Label& j : phi.cod.directions(J)) out.push_back(g[pd.index_of(phi.dir(I, j), "direction")]);
  return Label::pair(std::move(J), Label::list(std::move(out)));
}

Label functor_apply(const PolyMor& phi, const Label& elem) {
  const std::size_t i = phi.dom().index_of(elem.at(0));
  auto g = elem.at(1).items();
  if (phi.dom().directions(i).size() != g.size()) {
    throw DomainError("element " + elem.to_string() + " has the wrong arity");
  }
  Label::List out;
  for (std::size_t k : phi.sharp(i)) out.push_back(g[k]);
  return Label::pair(phi.on_position(i), Label::list(std::move(out)));
}

FinFn eval_nat(const PolyMor& phi, const FinSet& x) {
  FinSet dom = eval_functor(phi.dom(), x);
  FinSet cod = eval_functor(phi.cod(), x);
  return FinFn::from_labels(dom, cod, [&](const Label& e) { return functor_apply(phi, e); });
}

Label unfold_composite(const Poly& q, const Label& elem) {
  const Label& If = elem.at(0);
  auto f = If.at(1).items();
  auto g = elem.at(1).items();
  Label::List outer;
  std::size_t off = 0;
  for (const Label& J : f) {
    const std::size_t n = q.directions(J).size();
    if (off + n > g.size()) throw DomainError("element " + elem.to_string() + " is not in P(p◁q)(X)");
    outer.push_back(Label::pair(J, Label::list(Label::List(g.begin() + static_cast<long>(off),
                                                           g.begin() + static_cast<long>(off + n)))));
    off += n;
  }
  if (off != g.size()) throw DomainError("element " + elem.to_string() + " is not in P(p◁q)(X)");
  return Label::pair(If.at(0), Label::list(std::move(outer)));
}

Label fold_composite(const Label& elem) {
  Label::List f, g;
  for (const Label& Jh : elem.at(1).items()) {
    f.push_back(Jh.at(0));
    for (const Label& x : Jh.at(1).items()) g.push_back(x);
  }
  return Label::pair(Label::pair(elem.at(0), Label::list(std::move(f))), Label::list(std::move(g)));
}

FinFn strength(const Poly& p, const FinSet& a, const FinSet& b) {
  FinSet dom = product(a, eval_functor(p, b));
  FinSet cod = eval_functor(p, product(a, b));
  return FinFn::from_labels(dom, cod, [](const Label& aIg) {
    const Label& av = aIg.at(0);
    return functor_map([&](const Label& v) { return Label::pair(av, v); }, aIg.at(1));
  });
}

Poly scalar(const FinSet& a, const Poly& q) {
  const FinSet& qp = q.positions();
  Budget::charge(sat_mul(a.size(), qp.size()), "scalar");
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (const Label& av : a) {
    for (std::size_t J = 0; J < qp.size(); ++J) {
      pos.push_back(Label::pair(av, qp[J]));
      dirs.push_back(q.directions(J));
    }
  }
  return Poly::make(FinSet::from_sorted(std::move(pos)), std::move(dirs));
}

}  // namespace polycalc
