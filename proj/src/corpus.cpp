#include "polycalc/corpus.hpp"

#include <algorithm>
#include <functional>

#include "polycalc/poly_ops.hpp"

namespace polycalc::corpus {

std::vector<Poly> small_polys(std::size_t max_positions, std::size_t max_dirs) {
  std::vector<Poly> out;
  std::vector<std::size_t> arities;
  // Non-increasing arity sequences.
  std::function<void(std::size_t)> rec = [&](std::size_t cap) {
    out.push_back(Poly::from_arities(arities));
    if (arities.size() == max_positions) return;
    for (std::size_t k = 0; k <= cap; ++k) {
      arities.push_back(k);
      rec(k);
      arities.pop_back();
    }
  };
  rec(max_dirs);
  return out;
}

Poly random_poly(Rng& rng, std::size_t max_positions, std::size_t max_dirs) {
  std::vector<std::size_t> arities(rng() % (max_positions + 1));
  for (auto& k : arities) k = rng() % (max_dirs + 1);
  std::sort(arities.rbegin(), arities.rend());
  return Poly::from_arities(arities);
}

FinCat free_category(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  struct Path {
    std::size_t s, t;
    std::vector<std::size_t> es;
  };
  std::vector<Path> paths;
  for (std::size_t o = 0; o < n; ++o) paths.push_back({o, o, {}});
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].first != paths[i].t) continue;
      Path p = paths[i];
      p.t = edges[e].second;
      p.es.push_back(e);
      paths.push_back(std::move(p));
    }
  }
  auto label = [](std::size_t s, const std::vector<std::size_t>& es) {
    Label::List l;
    for (std::size_t e : es) l.push_back(Label(static_cast<int>(e)));
    return Label::pair(Label(static_cast<int>(s)), Label::list(std::move(l)));
  };
  std::vector<Label> mor;
  for (const Path& p : paths) mor.push_back(label(p.s, p.es));
  FinSet ob = FinSet::range(n), mors = FinSet::of(mor);
  std::vector<std::size_t> src(mors.size()), tgt(mors.size()), id(n);
  std::vector<std::array<Label, 3>> comp;
  for (const Path& p : paths) {
    const std::size_t m = mors.index_of(label(p.s, p.es));
    src[m] = p.s;
    tgt[m] = p.t;
    if (p.es.empty()) id[p.s] = m;
    for (const Path& q : paths) {
      if (q.s != p.t) continue;
      std::vector<std::size_t> es = p.es;
      es.insert(es.end(), q.es.begin(), q.es.end());
      comp.push_back({label(q.s, q.es), label(p.s, p.es), label(p.s, es)});
    }
  }
  return FinCat::make(ob, mors, FinFn(mors, ob, src), FinFn(mors, ob, tgt), FinFn(ob, mors, id), comp);
}

FinCat preorder(std::size_t n, std::vector<std::vector<bool>> le) {
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  std::vector<Label> mor;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (le[i][j]) mor.push_back(Label::pair(static_cast<int>(i), static_cast<int>(j)));
  FinSet ob = FinSet::range(n), mors = FinSet::of(mor);
  std::vector<std::size_t> src, tgt, id(n);
  for (const Label& m : mors) {
    src.push_back(static_cast<std::size_t>(m.at(0).as_int()));
    tgt.push_back(static_cast<std::size_t>(m.at(1).as_int()));
  }
  for (std::size_t i = 0; i < n; ++i) id[i] = mors.index_of(Label::pair(static_cast<int>(i), static_cast<int>(i)));
  std::vector<std::array<Label, 3>> comp;
  for (const Label& f : mors)
    for (const Label& g : mors)
      if (f.at(1) == g.at(0)) comp.push_back({g, f, Label::pair(f.at(0), g.at(1))});
  return FinCat::make(ob, mors, FinFn(mors, ob, src), FinFn(mors, ob, tgt), FinFn(ob, mors, id), comp);
}

namespace {

std::vector<FinCat> fixed_categories() {
  return {FinCat::terminal(),
          FinCat::walking_arrow(),
          FinCat::parallel_pair(),
          FinCat::discrete(FinSet::range(3)),
          FinCat::monoid(FinSet::range(2), {{0, 1}, {1, 0}}, 0),
          FinCat::monoid(FinSet::range(3), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 0),
          FinCat::monoid(FinSet::of({"one", "zero"}), {{0, 1}, {1, 1}}, 0)};
}

}  // namespace

FinCat random_category(Rng& rng) {
  while (true) {
    const std::size_t n = 1 + rng() % 3;
    const std::uint64_t kind = rng() % 5;
    if (kind == 0) {
      auto fixed = fixed_categories();
      return fixed[4 + rng() % 3];
    }
    if (kind <= 2) {
      std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
      for (auto& row : le)
        for (std::size_t j = 0; j < n; ++j) row[j] = rng() % 3 == 0;
      FinCat c = preorder(n, le);
      if (c.morphisms().size() <= 8) return c;
    } else {
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      const std::size_t ne = n > 1 ? rng() % 4 : 0;
      for (std::size_t e = 0; e < ne; ++e) {
        const std::size_t i = rng() % n, j = rng() % n;
        if (i != j) edges.emplace_back(std::min(i, j), std::max(i, j));
      }
      FinCat c = free_category(n, edges);
      if (c.morphisms().size() <= 8) return c;
    }
  }
}

std::vector<FinCat> category_corpus(std::uint64_t seed, std::size_t count) {
  std::vector<FinCat> out = fixed_categories();
  if (out.size() > count) out.resize(count);
  Rng rng(seed);
  while (out.size() < count) out.push_back(random_category(rng));
  return out;
}

psh::Presheaf random_presheaf(Rng& rng, const FinCatPtr& base, std::size_t max_size) {
  const FinCat& c = *base;
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<FinSet> at;
    for (std::size_t o = 0; o < c.objects().size(); ++o) at.push_back(FinSet::range(rng() % (max_size + 1)));
    std::vector<FinFn> act;
    bool possible = true;
    for (std::size_t m = 0; m < c.morphisms().size(); ++m) {
      const FinSet& from = at[c.tgt()(m)];
      const FinSet& to = at[c.src()(m)];
      if (c.id()(c.src()(m)) == m) {
        act.push_back(FinFn::identity(from));
        continue;
      }
      if (to.size() == 0 && from.size() > 0) {
        possible = false;
        break;
      }
      std::vector<std::size_t> t(from.size());
      for (auto& v : t) v = rng() % to.size();
      act.emplace_back(from, to, std::move(t));
    }
    if (!possible) continue;
    psh::Presheaf x(base, std::move(at), std::move(act));
    if (x.validate().ok()) return x;
  }
  return psh::terminal(base);
}

psh::Polynomial random_psh_poly(Rng& rng, const FinCatPtr& base, std::size_t max_size) {
  while (true) {
    psh::Presheaf positions = random_presheaf(rng, base, max_size);
    psh::Presheaf total = random_presheaf(rng, base, max_size);
    auto maps = psh::homs(total, positions);
    if (!maps.empty()) return {maps[rng() % maps.size()]};
  }
}

Coalgebra random_coalgebra(Rng& rng, const Comonoid& c, std::size_t max_size) {
  return copresheaf_to_coalg(c, random_presheaf(rng, copresheaf_base(c), max_size));
}

TypedPoly random_typed(Rng& rng, const FinSet& C, const FinSet& D, std::size_t max_positions, std::size_t max_dirs) {
  Poly m = random_poly(rng, max_positions, max_dirs);
  const FinSet star = p_star(m).poly.positions();
  std::vector<std::size_t> tgt(m.positions().size()), src(star.size());
  for (auto& t : tgt) t = rng() % C.size();
  for (auto& t : src) t = rng() % D.size();
  return {m, FinFn(star, D, std::move(src)), FinFn(m.positions(), C, std::move(tgt))};
}

}  // namespace polycalc::corpus
