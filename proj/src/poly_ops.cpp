#include "polycalc/poly_ops.hpp"

#include <algorithm>
#include <numeric>

#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"

namespace polycalc {

Classification classify(const PolyMor& phi) {
  return {phi.is_cartesian(), phi.is_vertical(), phi.is_iso()};
}

VertCart vert_cart_factorize(const PolyMor& phi) {
  const Poly& p = phi.dom();
  const FinSet& pp = p.positions();
  std::vector<FinSet> dirs;
  for (std::size_t i = 0; i < pp.size(); ++i) dirs.push_back(phi.cod_directions(i));
  Poly mid = Poly::make(pp, dirs);
  std::vector<Label> ids(pp.begin(), pp.end());
  std::vector<std::vector<std::size_t>> vs, cs;
  for (std::size_t i = 0; i < pp.size(); ++i) {
    vs.push_back(phi.sharp(i));
    std::vector<std::size_t> t(dirs[i].size());
    std::iota(t.begin(), t.end(), 0);
    cs.push_back(std::move(t));
  }
  std::vector<Label> img;
  for (std::size_t i = 0; i < pp.size(); ++i) img.push_back(phi.on_position(i));
  return {mid, PolyMor(p, mid, ids, std::move(vs)), PolyMor(mid, phi.cod(), std::move(img), std::move(cs))};
}

PStar p_star(const Poly& p) {
  const FinSet& pp = p.positions();
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  for (std::size_t I = 0; I < pp.size(); ++I) {
    for (const Label& d : p.directions(I)) {
      pos.push_back(Label::pair(pp[I], d));
      dirs.push_back(p.directions(I));
    }
  }
  Poly ps = Poly::make(FinSet::from_sorted(std::move(pos)), std::move(dirs));
  std::vector<Label> img;
  std::vector<std::vector<std::size_t>> sharp;
  for (std::size_t k = 0; k < ps.positions().size(); ++k) {
    img.push_back(ps.positions()[k].at(0));
    std::vector<std::size_t> t(ps.directions(k).size());
    std::iota(t.begin(), t.end(), 0);
    sharp.push_back(std::move(t));
  }
  return {ps, PolyMor(ps, p, std::move(img), std::move(sharp))};
}

std::uint64_t hom_count(const Poly& p, const Poly& q) {
  const FinSet& pp = p.positions();
  const FinSet& qp = q.positions();
  std::uint64_t total = 1;
  for (std::size_t I = 0; I < pp.size(); ++I) {
    std::uint64_t s = 0;
    for (std::size_t J = 0; J < qp.size(); ++J) s = sat_add(s, sat_pow(p.directions(I).size(), q.directions(J).size()));
    total = sat_mul(total, s);
  }
  return total;
}

void for_each_hom(const Poly& p, const Poly& q, const std::function<bool(const PolyMor&)>& visit) {
  Budget::charge(hom_count(p, q), "hom enumeration");
  const FinSet& pp = p.positions();
  const FinSet& qp = q.positions();
  const std::size_t n = pp.size();
  if (n > 0 && qp.empty()) return;
  std::vector<std::size_t> pos(n, 0);
  while (true) {
    // Sharp entries flattened position-major; the first entry is most significant.
    std::vector<std::size_t> radix;
    std::vector<std::size_t> start(n + 1, 0);
    bool possible = true;
    for (std::size_t I = 0; I < n; ++I) {
      const std::size_t m = q.directions(pos[I]).size();
      start[I + 1] = start[I] + m;
      for (std::size_t k = 0; k < m; ++k) radix.push_back(p.directions(I).size());
      if (m > 0 && p.directions(I).empty()) possible = false;
    }
    if (possible) {
      std::vector<std::size_t> odo(radix.size(), 0);
      while (true) {
        std::vector<Label> img;
        std::vector<std::vector<std::size_t>> sharp;
        for (std::size_t I = 0; I < n; ++I) {
          img.push_back(qp[pos[I]]);
          sharp.emplace_back(odo.begin() + static_cast<long>(start[I]), odo.begin() + static_cast<long>(start[I + 1]));
        }
        if (!visit(PolyMor(p, q, std::move(img), std::move(sharp)))) return;
        std::size_t k = odo.size();
        while (k-- > 0) {
          if (++odo[k] < radix[k]) break;
          odo[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
    }
    std::size_t k = n;
    while (k-- > 0) {
      if (++pos[k] < qp.size()) break;
      pos[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
}

std::vector<PolyMor> hom_enumerate(const Poly& p, const Poly& q) {
  std::vector<PolyMor> out;
  for_each_hom(p, q, [&](const PolyMor& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

Label mor_label(const PolyMor& phi) {
  const std::size_t n = phi.dom().positions().size();
  Label::List img, sharp;
  for (std::size_t i = 0; i < n; ++i) {
    img.push_back(phi.on_position(i));
    Label::List t;
    for (std::size_t v : phi.sharp(i)) t.push_back(phi.dom().directions(i)[v]);
    sharp.push_back(Label::list(std::move(t)));
  }
  return Label::pair(Label::list(std::move(img)), Label::list(std::move(sharp)));
}

PolyMor mor_from_label(const Poly& p, const Poly& q, const Label& label) {
  const FinSet& pp = p.positions();
  if (!label.is_list() || label.size() != 2 || label.at(0).size() != pp.size() || label.at(1).size() != pp.size()) {
    throw DomainError("label " + label.to_string() + " does not describe a morphism");
  }
  std::vector<Label> img;
  std::vector<std::vector<std::size_t>> sharp;
  for (std::size_t i = 0; i < pp.size(); ++i) {
    img.push_back(label.at(0).at(i));
    std::vector<std::size_t> t;
    for (const Label& d : label.at(1).at(i).items()) t.push_back(p.directions(i).index_of(d, "direction"));
    sharp.push_back(std::move(t));
  }
  return PolyMor(p, q, std::move(img), std::move(sharp));
}

std::optional<PolyMor> iso_check(const Poly& p, const Poly& q) {
  if (p.position_count() != q.position_count()) return std::nullopt;
  const std::vector<std::size_t> ap = p.arities();
  const std::vector<std::size_t> aq = q.arities();
  std::vector<std::size_t> ip(ap.size()), iq(aq.size());
  std::iota(ip.begin(), ip.end(), 0);
  std::iota(iq.begin(), iq.end(), 0);
  std::stable_sort(ip.begin(), ip.end(), [&](std::size_t a, std::size_t b) { return ap[a] < ap[b]; });
  std::stable_sort(iq.begin(), iq.end(), [&](std::size_t a, std::size_t b) { return aq[a] < aq[b]; });
  std::vector<Label> img(ap.size());
  std::vector<std::vector<std::size_t>> sharp(ap.size());
  for (std::size_t k = 0; k < ip.size(); ++k) {
    if (ap[ip[k]] != aq[iq[k]]) return std::nullopt;
    img[ip[k]] = q.positions()[iq[k]];
    std::vector<std::size_t> t(ap[ip[k]]);
    std::iota(t.begin(), t.end(), 0);
    sharp[ip[k]] = std::move(t);
  }
  return PolyMor(p, q, std::move(img), std::move(sharp));
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Limit cartesian_limit(const Diagram& d) {
  const std::size_t n = d.nodes.size();
  if (n == 0) throw DomainError("cartesian_limit: empty diagram");
  for (const auto& e : d.edges) {
    if (e.src >= n || e.tgt >= n) throw DomainError("cartesian_limit: edge refers to a missing node");
    if (!(e.mor.dom() == d.nodes[e.src]) || !(e.mor.cod() == d.nodes[e.tgt])) {
      throw DomainError("cartesian_limit: edge morphism does not match its nodes");
    }
    if (!e.mor.is_cartesian()) throw DomainError("cartesian_limit: edge morphism is not cartesian");
  }
  // Visit order: each later node is adjacent to an earlier one.
  std::vector<std::size_t> order{0};
  std::vector<char> placed(n, 0);
  placed[0] = 1;
  while (order.size() < n) {
    bool progress = false;
    for (const auto& e : d.edges) {
      for (auto [a, b] : {std::pair{e.src, e.tgt}, std::pair{e.tgt, e.src}}) {
        if (placed[a] && !placed[b]) {
          placed[b] = 1;
          order.push_back(b);
          progress = true;
        }
      }
    }
    if (!progress) throw DomainError("cartesian_limit: diagram is not connected");
  }
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[order[k]] = k;

  std::vector<Label> x(n);
  std::vector<std::vector<Label>> tuples;
  std::uint64_t visited = 0;
  const std::uint64_t cap = Budget::current();
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      tuples.push_back(x);
      return;
    }
    const std::size_t v = order[k];
    std::optional<Label> forced;
    for (const auto& e : d.edges) {
      if (e.tgt == v && rank[e.src] < k) {
        forced = e.mor.on_position(x[e.src]);
        break;
      }
    }
    auto consistent = [&]() {
      for (const auto& e : d.edges) {
        const bool touches = (e.src == v && rank[e.tgt] <= k) || (e.tgt == v && rank[e.src] <= k);
        if (touches && !(e.mor.on_position(x[e.src]) == x[e.tgt])) return false;
      }
      return true;
    };
    if (forced) {
      if (++visited > cap) Budget::charge(visited, "cartesian_limit");
      x[v] = *forced;
      if (d.nodes[v].has_position(x[v]) && consistent()) rec(k + 1);
      return;
    }
    for (const Label& cand : d.nodes[v].positions()) {
      if (++visited > cap) Budget::charge(visited, "cartesian_limit");
      x[v] = cand;
      if (consistent()) rec(k + 1);
    }
  };
  rec(0);
  std::sort(tuples.begin(), tuples.end());

  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  // classes[t][i] maps node i's fiber (canonical order) to the class index at tuple t.
  std::vector<std::vector<std::vector<std::size_t>>> classes;
  bool coherent = true;
  for (const auto& t : tuples) {
    std::vector<FinSet> fib(n);
    std::vector<std::size_t> off(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      fib[i] = d.nodes[i].directions(t[i]);
      off[i + 1] = off[i] + fib[i].size();
    }
    UnionFind uf(off[n]);
    for (const auto& e : d.edges) {
      const std::size_t si = e.mor.dom().index_of(t[e.src]);
      const auto& sh = e.mor.sharp(si);
      for (std::size_t j = 0; j < sh.size(); ++j) uf.unite(off[e.tgt] + j, off[e.src] + sh[j]);
    }
    // Node 0 occupies the first block, so roots are least node-0 members.
    std::vector<std::size_t> root_to_class(off[n], static_cast<std::size_t>(-1));
    std::vector<Label> cls;
    for (std::size_t j = 0; j < fib[0].size(); ++j) {
      const std::size_t r = uf.find(j);
      if (root_to_class[r] == static_cast<std::size_t>(-1)) {
        root_to_class[r] = cls.size();
        cls.push_back(fib[0][j]);
      } else {
        coherent = false;
      }
    }
    std::vector<std::vector<std::size_t>> per_node(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < fib[i].size(); ++j) per_node[i].push_back(root_to_class[uf.find(off[i] + j)]);
    }
    if (cls.size() != fib[0].size()) coherent = false;
    pos.push_back(Label::list(Label::List(t.begin(), t.end())));
    dirs.push_back(FinSet::from_sorted(cls));
    classes.push_back(std::move(per_node));
  }
  Poly lim = Poly::make(FinSet::from_sorted(pos), dirs);
  std::vector<PolyMor> legs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Label> img;
    std::vector<std::vector<std::size_t>> sharp;
    for (std::size_t k = 0; k < tuples.size(); ++k) {
      img.push_back(tuples[k][i]);
      sharp.push_back(classes[k][i]);
    }
    legs.emplace_back(lim, d.nodes[i], std::move(img), std::move(sharp));
  }
  return {lim, std::move(legs), coherent};
}

Equalizer equalizer(const PolyMor& phi, const PolyMor& psi) {
  if (!(phi.dom() == psi.dom()) || !(phi.cod() == psi.cod())) throw DomainError("equalizer: morphisms are not parallel");
  const Poly& p = phi.dom();
  const FinSet& pp = p.positions();
  std::vector<Label> pos;
  std::vector<FinSet> dirs;
  std::vector<std::vector<std::size_t>> sharp;
  for (std::size_t i = 0; i < pp.size(); ++i) {
    if (!(phi.on_position(i) == psi.on_position(i))) continue;
    const FinSet& pd = p.directions(i);
    UnionFind uf(pd.size());
    for (std::size_t j = 0; j < phi.sharp(i).size(); ++j) uf.unite(phi.sharp(i)[j], psi.sharp(i)[j]);
    std::vector<Label> cls;
    std::vector<std::size_t> root_to_class(pd.size(), static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < pd.size(); ++k) {
      const std::size_t r = uf.find(k);
      if (root_to_class[r] == static_cast<std::size_t>(-1)) {
        root_to_class[r] = cls.size();
        cls.push_back(pd[k]);
      }
    }
    std::vector<std::size_t> t;
    for (std::size_t k = 0; k < pd.size(); ++k) t.push_back(root_to_class[uf.find(k)]);
    pos.push_back(pp[i]);
    dirs.push_back(FinSet::from_sorted(std::move(cls)));
    sharp.push_back(std::move(t));
  }
  std::vector<Label> img = pos;
  Poly e = Poly::make(FinSet::from_sorted(std::move(pos)), std::move(dirs));
  return {e, PolyMor(e, p, std::move(img), std::move(sharp))};
}

Equalizer equalizer(const PolyMor& phi, const LazyMor& psi) { return equalizer(phi, psi.materialize()); }

PolyMor lift_through(const PolyMor& u, const LazyMor& m, const PosFn& preimage) {
  if (!(u.cod() == m.cod)) throw DomainError("lift_through: codomains differ");
  const FinSet& rp = u.dom().positions();
  std::vector<Label> img;
  std::vector<std::vector<std::size_t>> sharp;
  for (std::size_t i = 0; i < rp.size(); ++i) {
    const Label& T = u.on_position(i);
    Label S = preimage(T);
    if (!m.dom.has_position(S) || !(m.pos(S) == T)) {
      throw DomainError("lift_through: image of " + rp[i].to_string() + " is not in the subobject");
    }
    const FinSet sd = m.dom.directions(S);
    const FinSet td = m.cod.directions(T);
    std::vector<std::size_t> t(sd.size(), static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < td.size(); ++k) {
      const std::size_t s = sd.index_of(m.dir(S, td[k]), "direction");
      const std::size_t v = u.sharp(i)[k];
      if (t[s] == static_cast<std::size_t>(-1)) {
        t[s] = v;
      } else if (t[s] != v) {
        throw DomainError("lift_through: directions at " + rp[i].to_string() + " do not descend to the quotient");
      }
    }
    if (std::find(t.begin(), t.end(), static_cast<std::size_t>(-1)) != t.end()) {
      throw DomainError("lift_through: subobject map is not surjective on directions");
    }
    img.push_back(std::move(S));
    sharp.push_back(std::move(t));
  }
  return PolyMor(u.dom(), m.dom, std::move(img), std::move(sharp));
}

}  // namespace polycalc
