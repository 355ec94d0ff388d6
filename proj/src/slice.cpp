#include "polycalc/slice.hpp"

#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"

namespace polycalc {

Pullback pullback(const FinFn& f, const FinFn& g) {
  if (!(f.cod() == g.cod())) throw DomainError("pullback: maps have different codomains");
  std::vector<Label> elems;
  std::vector<std::size_t> m1, m2;
  for (std::size_t a = 0; a < f.dom().size(); ++a) {
    for (std::size_t b = 0; b < g.dom().size(); ++b) {
      if (f(a) != g(b)) continue;
      elems.push_back(Label::pair(f.dom()[a], g.dom()[b]));
      m1.push_back(a);
      m2.push_back(b);
    }
  }
  FinSet obj = FinSet::from_sorted(std::move(elems));
  return {obj, FinFn(obj, f.dom(), std::move(m1)), FinFn(obj, g.dom(), std::move(m2))};
}

DependentProduct pi_finset(const FinFn& f, const FinFn& g) {
  if (!(g.cod() == f.dom())) throw DomainError("pi_finset: g must land in the domain of f");
  const FinSet& A = f.cod();
  std::vector<std::vector<std::size_t>> zfib(f.dom().size());
  for (std::size_t b = 0; b < f.dom().size(); ++b) zfib[b] = g.fiber(b);

  std::uint64_t count = 0;
  for (std::size_t a = 0; a < A.size(); ++a) {
    std::uint64_t c = 1;
    for (std::size_t b : f.fiber(a)) c = sat_mul(c, zfib[b].size());
    count = sat_add(count, c);
  }
  Budget::charge(count, "pi_finset");

  std::vector<Label> elems;
  std::vector<std::size_t> proj;
  for (std::size_t a = 0; a < A.size(); ++a) {
    const std::vector<std::size_t> bs = f.fiber(a);
    bool empty_choice = false;
    for (std::size_t b : bs) empty_choice = empty_choice || zfib[b].empty();
    if (empty_choice) continue;
    std::vector<std::size_t> odo(bs.size(), 0);
    while (true) {
      Label::List sec;
      sec.reserve(bs.size());
      for (std::size_t k = 0; k < bs.size(); ++k) sec.push_back(g.dom()[zfib[bs[k]][odo[k]]]);
      elems.push_back(Label::pair(A[a], Label::list(std::move(sec))));
      proj.push_back(a);
      std::size_t k = bs.size();
      while (k-- > 0) {
        if (++odo[k] < zfib[bs[k]].size()) break;
        odo[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  FinSet obj = FinSet::from_sorted(std::move(elems));
  return {obj, FinFn(obj, A, std::move(proj))};
}

DistributivityPullback distributivity_pullback(const FinFn& f, const FinFn& g) {
  DependentProduct pi = pi_finset(f, g);
  Pullback delta = pullback(pi.proj, f);
  // The section stored in π lists values over f⁻¹(a) in B order.
  std::vector<std::size_t> counit;
  counit.reserve(delta.object.size());
  for (std::size_t i = 0; i < delta.object.size(); ++i) {
    const std::size_t p = delta.p1(i);
    const std::size_t b = delta.p2(i);
    const std::vector<std::size_t> bs = f.fiber(f(b));
    std::size_t pos = 0;
    while (bs[pos] != b) ++pos;
    const Label& z = pi.object[p].at(1).at(pos);
    counit.push_back(g.dom().index_of(z, "section value"));
  }
  FinFn eps(delta.object, g.dom(), std::move(counit));
  return {std::move(pi), std::move(delta), std::move(eps)};
}

std::vector<FinFn> slice_homs(const FinFn& x, const FinFn& y) {
  if (!(x.cod() == y.cod())) throw DomainError("slice_homs: objects over different bases");
  std::vector<std::vector<std::size_t>> choices(x.dom().size());
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    choices[i] = y.fiber(x(i));
    count = sat_mul(count, choices[i].size());
  }
  Budget::charge(count, "slice hom enumeration");
  std::vector<FinFn> out;
  if (count == 0) return out;
  std::vector<std::size_t> odo(choices.size(), 0);
  while (true) {
    std::vector<std::size_t> m(choices.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = choices[i][odo[i]];
    out.emplace_back(x.dom(), y.dom(), std::move(m));
    std::size_t k = odo.size();
    while (k-- > 0) {
      if (++odo[k] < choices[k].size()) break;
      odo[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

FinFn pi_transpose(const FinFn& f, const FinFn& g, const FinFn& d, const FinFn& h) {
  DependentProduct pi = pi_finset(f, g);
  Pullback dd = pullback(d, f);
  if (!(h.dom() == dd.object) || !(h.cod() == g.dom())) throw DomainError("pi_transpose: ill-typed map");
  std::vector<std::size_t> m(d.dom().size());
  for (std::size_t e = 0; e < d.dom().size(); ++e) {
    Label::List sec;
    for (std::size_t b : f.fiber(d(e))) {
      const std::size_t idx = dd.object.index_of(Label::pair(d.dom()[e], f.dom()[b]));
      if (g(h(idx)) != b) throw DomainError("pi_transpose: map is not over B");
      sec.push_back(g.dom()[h(idx)]);
    }
    m[e] = pi.object.index_of(Label::pair(f.cod()[d(e)], Label::list(std::move(sec))), "section");
  }
  return FinFn(d.dom(), pi.object, std::move(m));
}

FinFn pi_untranspose(const FinFn& f, const FinFn& g, const FinFn& d, const FinFn& k) {
  DependentProduct pi = pi_finset(f, g);
  Pullback dd = pullback(d, f);
  if (!(k.dom() == d.dom()) || !(k.cod() == pi.object)) throw DomainError("pi_untranspose: ill-typed map");
  std::vector<std::size_t> m(dd.object.size());
  for (std::size_t i = 0; i < dd.object.size(); ++i) {
    const std::size_t e = dd.p1(i);
    const std::size_t b = dd.p2(i);
    if (pi.proj(k(e)) != d(e)) throw DomainError("pi_untranspose: map is not over A");
    const std::vector<std::size_t> bs = f.fiber(d(e));
    std::size_t pos = 0;
    while (bs[pos] != b) ++pos;
    m[i] = g.dom().index_of(pi.object[k(e)].at(1).at(pos));
  }
  return FinFn(dd.object, g.dom(), std::move(m));
}

}  // namespace polycalc
