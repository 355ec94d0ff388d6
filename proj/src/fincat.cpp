#include "polycalc/fincat.hpp"

#include "polycalc/error.hpp"

namespace polycalc {

FinCat FinCat::make(FinSet objects, FinSet morphisms, FinFn src, FinFn tgt, FinFn id,
                    const std::vector<std::array<Label, 3>>& compose) {
  if (!(src.dom() == morphisms) || !(src.cod() == objects) || !(tgt.dom() == morphisms) ||
      !(tgt.cod() == objects) || !(id.dom() == objects) || !(id.cod() == morphisms)) {
    throw DomainError("category structure maps have the wrong domain or codomain");
  }
  FinCat c;
  c.objects_ = std::move(objects);
  c.morphisms_ = std::move(morphisms);
  c.src_ = std::move(src);
  c.tgt_ = std::move(tgt);
  c.id_ = std::move(id);
  const std::size_t n = c.morphisms_.size();
  c.table_.assign(n * n, std::nullopt);
  for (const auto& t : compose) {
    const std::size_t g = c.morphisms_.index_of(t[0], "morphism");
    const std::size_t f = c.morphisms_.index_of(t[1], "morphism");
    const std::size_t gf = c.morphisms_.index_of(t[2], "morphism");
    auto& slot = c.table_[g * n + f];
    if (slot && *slot != gf) {
      throw DomainError("conflicting composites for " + t[0].to_string() + " after " + t[1].to_string());
    }
    slot = gf;
  }
  return c;
}

FinCat FinCat::terminal() { return discrete(FinSet::of({"*"})); }

FinCat FinCat::walking_arrow() {
  FinSet ob = FinSet::of({"a", "b"});
  FinSet mor = FinSet::of({"id_a", "id_b", "f"});
  auto src = FinFn::from_labels(mor, ob, [](const Label& m) { return m == Label("id_b") ? Label("b") : Label("a"); });
  auto tgt = FinFn::from_labels(mor, ob, [](const Label& m) { return m == Label("id_a") ? Label("a") : Label("b"); });
  auto id = FinFn::from_labels(ob, mor, [](const Label& o) { return Label("id_" + o.as_str()); });
  return make(ob, mor, src, tgt, id,
              {{"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"}, {"f", "id_a", "f"}, {"id_b", "f", "f"}});
}

FinCat FinCat::parallel_pair() {
  FinSet ob = FinSet::of({"a", "b"});
  FinSet mor = FinSet::of({"id_a", "id_b", "s", "t"});
  auto src = FinFn::from_labels(mor, ob, [](const Label& m) { return m == Label("id_b") ? Label("b") : Label("a"); });
  auto tgt = FinFn::from_labels(mor, ob, [](const Label& m) { return m == Label("id_a") ? Label("a") : Label("b"); });
  auto id = FinFn::from_labels(ob, mor, [](const Label& o) { return Label("id_" + o.as_str()); });
  return make(ob, mor, src, tgt, id,
              {{"id_a", "id_a", "id_a"},
               {"id_b", "id_b", "id_b"},
               {"s", "id_a", "s"},
               {"t", "id_a", "t"},
               {"id_b", "s", "s"},
               {"id_b", "t", "t"}});
}

FinCat FinCat::discrete(const FinSet& objects) {
  std::vector<Label> mors;
  for (const Label& o : objects) mors.push_back(Label::pair("id", o));
  FinSet mor = FinSet::of(mors);
  auto back = [](const Label& m) { return m.at(1); };
  std::vector<std::array<Label, 3>> comp;
  for (const Label& m : mor) comp.push_back({m, m, m});
  return make(objects, mor, FinFn::from_labels(mor, objects, back), FinFn::from_labels(mor, objects, back),
              FinFn::from_labels(objects, mor, [](const Label& o) { return Label::pair("id", o); }), comp);
}

FinCat FinCat::monoid(const FinSet& elems, const std::vector<std::vector<std::size_t>>& mul, std::size_t unit) {
  FinSet ob = FinSet::of({"*"});
  std::vector<std::array<Label, 3>> comp;
  for (std::size_t x = 0; x < elems.size(); ++x) {
    for (std::size_t y = 0; y < elems.size(); ++y) comp.push_back({elems[x], elems[y], elems[mul[x][y]]});
  }
  return make(ob, elems, FinFn::constant(elems, ob, 0), FinFn::constant(elems, ob, 0),
              FinFn::constant(ob, elems, unit), comp);
}

std::optional<std::size_t> FinCat::compose(std::size_t g, std::size_t f) const {
  return table_[g * morphisms_.size() + f];
}

std::size_t FinCat::comp(std::size_t g, std::size_t f) const {
  if (tgt_(f) != src_(g)) {
    throw DomainError("morphisms " + morphisms_[g].to_string() + " and " + morphisms_[f].to_string() +
                      " are not composable");
  }
  if (auto r = compose(g, f)) return *r;
  throw DomainError("composite of " + morphisms_[g].to_string() + " after " + morphisms_[f].to_string() +
                    " is not tabulated");
}

std::vector<std::array<Label, 3>> FinCat::compose_table() const {
  std::vector<std::array<Label, 3>> out;
  const std::size_t n = morphisms_.size();
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      if (auto r = table_[g * n + f]) out.push_back({morphisms_[g], morphisms_[f], morphisms_[*r]});
    }
  }
  return out;
}

std::vector<std::size_t> FinCat::out_of(std::size_t obj) const { return src_.fiber(obj); }
std::vector<std::size_t> FinCat::into(std::size_t obj) const { return tgt_.fiber(obj); }

std::vector<std::size_t> FinCat::hom(std::size_t from, std::size_t to) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < morphisms_.size(); ++m) {
    if (src_(m) == from && tgt_(m) == to) out.push_back(m);
  }
  return out;
}

Verdict FinCat::validate() const {
  Verdict v;
  const std::size_t n = morphisms_.size();
  auto name = [&](std::size_t m) { return morphisms_[m].to_string(); };
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    if (src_(id_(o)) != o || tgt_(id_(o)) != o) v.fail("identity-typing", objects_[o].to_string());
  }
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      const auto& r = table_[g * n + f];
      const bool composable = tgt_(f) == src_(g);
      if (r && !composable) v.fail("compose-domain", name(g) + " after " + name(f));
      if (!r && composable) v.fail("compose-total", name(g) + " after " + name(f));
      if (r && composable && (src_(*r) != src_(f) || tgt_(*r) != tgt_(g))) {
        v.fail("compose-typing", name(g) + " after " + name(f));
      }
    }
  }
  if (!v.ok()) return v;
  for (std::size_t f = 0; f < n; ++f) {
    if (*compose(id_(tgt_(f)), f) != f) v.fail("left-unit", name(f));
    if (*compose(f, id_(src_(f))) != f) v.fail("right-unit", name(f));
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t g : out_of(tgt_(h))) {
      for (std::size_t f : out_of(tgt_(g))) {
        if (*compose(f, *compose(g, h)) != *compose(*compose(f, g), h)) {
          v.fail("associativity", name(f) + " . " + name(g) + " . " + name(h));
        }
      }
    }
  }
  return v;
}

FinCat FinCat::opposite() const {
  std::vector<std::array<Label, 3>> comp;
  for (const auto& t : compose_table()) comp.push_back({t[1], t[0], t[2]});
  return make(objects_, morphisms_, tgt_, src_, id_, comp);
}

FinCat FinCat::product(const FinCat& a, const FinCat& b) {
  std::vector<Label> ob, mor;
  for (const Label& x : a.objects_)
    for (const Label& y : b.objects_) ob.push_back(Label::pair(x, y));
  for (const Label& m : a.morphisms_)
    for (const Label& n : b.morphisms_) mor.push_back(Label::pair(m, n));
  FinSet obs = FinSet::of(std::move(ob)), mors = FinSet::of(std::move(mor));
  auto lift = [&](const FinFn& fa, const FinFn& fb) {
    return FinFn::from_labels(mors, obs, [&](const Label& mn) {
      return Label::pair(fa(mn.at(0)), fb(mn.at(1)));
    });
  };
  FinFn id = FinFn::from_labels(obs, mors, [&](const Label& xy) {
    return Label::pair(a.id_(xy.at(0)), b.id_(xy.at(1)));
  });
  std::vector<std::array<Label, 3>> comp;
  for (const auto& s : a.compose_table())
    for (const auto& t : b.compose_table())
      comp.push_back({Label::pair(s[0], t[0]), Label::pair(s[1], t[1]), Label::pair(s[2], t[2])});
  return make(obs, mors, lift(a.src_, b.src_), lift(a.tgt_, b.tgt_), id, comp);
}

bool operator==(const FinCat& a, const FinCat& b) {
  return a.objects_ == b.objects_ && a.morphisms_ == b.morphisms_ && a.src_ == b.src_ && a.tgt_ == b.tgt_ &&
         a.id_ == b.id_ && a.table_ == b.table_;
}

}  // namespace polycalc
