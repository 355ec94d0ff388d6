#include "polycalc/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"
#include "polycalc/slice.hpp"

namespace polycalc::psh {
namespace {

void require_same_base(const Presheaf& a, const Presheaf& b, const char* what) {
  if (a.base_ptr() != b.base_ptr() && !(a.base() == b.base())) {
    throw DomainError(std::string(what) + ": presheaves live over different categories");
  }
}

}  // namespace

Presheaf::Presheaf(FinCatPtr base, std::vector<FinSet> at, std::vector<FinFn> action)
    : base_(std::move(base)), at_(std::move(at)), action_(std::move(action)) {
  if (!base_) throw DomainError("presheaf without a base category");
  if (at_.size() != base_->objects().size()) throw DomainError("presheaf needs one set per object");
  if (action_.size() != base_->morphisms().size()) throw DomainError("presheaf needs one map per morphism");
}

std::size_t Presheaf::total_size() const {
  std::size_t n = 0;
  for (const FinSet& s : at_) n += s.size();
  return n;
}

Verdict Presheaf::validate() const {
  Verdict v;
  const FinCat& c = *base_;
  for (std::size_t m = 0; m < c.morphisms().size(); ++m) {
    if (!(action_[m].dom() == at_[c.tgt()(m)]) || !(action_[m].cod() == at_[c.src()(m)])) {
      v.fail("action-typing", c.morphisms()[m].to_string());
    }
  }
  if (!v.ok()) return v;
  for (std::size_t o = 0; o < c.objects().size(); ++o) {
    if (!(action_[c.id()(o)] == FinFn::identity(at_[o]))) v.fail("identity", c.objects()[o].to_string());
  }
  for (std::size_t g = 0; g < c.morphisms().size(); ++g) {
    for (std::size_t f : c.into(c.src()(g))) {
      const std::size_t gf = c.comp(g, f);
      if (!(action_[gf] == then(action_[g], action_[f]))) {
        v.fail("composition", c.morphisms()[g].to_string() + " after " + c.morphisms()[f].to_string());
      }
    }
  }
  return v;
}

bool operator==(const Presheaf& a, const Presheaf& b) {
  if (a.base_ != b.base_ && !(*a.base_ == *b.base_)) return false;
  return a.at_ == b.at_ && a.action_ == b.action_;
}

PshMor::PshMor(Presheaf dom, Presheaf cod, std::vector<FinFn> comps)
    : dom_(std::move(dom)), cod_(std::move(cod)), comps_(std::move(comps)) {
  require_same_base(dom_, cod_, "presheaf map");
  if (comps_.size() != dom_.base().objects().size()) throw DomainError("presheaf map needs one component per object");
  for (std::size_t o = 0; o < comps_.size(); ++o) {
    if (!(comps_[o].dom() == dom_.at(o)) || !(comps_[o].cod() == cod_.at(o))) {
      throw DomainError("presheaf map component at " + dom_.base().objects()[o].to_string() + " is ill-typed");
    }
  }
}

PshMor PshMor::identity(const Presheaf& x) {
  std::vector<FinFn> c;
  for (const FinSet& s : x.components()) c.push_back(FinFn::identity(s));
  return PshMor(x, x, std::move(c));
}

bool PshMor::is_iso() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const FinFn& f) { return f.bijective(); });
}

Verdict PshMor::validate() const {
  Verdict v;
  const FinCat& c = dom_.base();
  for (std::size_t m = 0; m < c.morphisms().size(); ++m) {
    const std::size_t a = c.tgt()(m);
    const std::size_t b = c.src()(m);
    if (!(then(dom_.action(m), comps_[b]) == then(comps_[a], cod_.action(m)))) {
      v.fail("naturality", c.morphisms()[m].to_string());
    }
  }
  return v;
}

PshMor then(const PshMor& f, const PshMor& g) {
  if (!(f.cod() == g.dom())) throw DomainError("presheaf maps are not composable");
  std::vector<FinFn> c;
  for (std::size_t o = 0; o < f.dom().base().objects().size(); ++o) c.push_back(then(f.at(o), g.at(o)));
  return PshMor(f.dom(), g.cod(), std::move(c));
}

PshMor inverse(const PshMor& f) {
  std::vector<FinFn> c;
  for (std::size_t o = 0; o < f.dom().base().objects().size(); ++o) c.push_back(f.at(o).inverse());
  return PshMor(f.cod(), f.dom(), std::move(c));
}

Presheaf terminal(const FinCatPtr& base) {
  std::vector<FinSet> at(base->objects().size(), FinSet::unit());
  std::vector<FinFn> act(base->morphisms().size(), FinFn::identity(FinSet::unit()));
  return Presheaf(base, std::move(at), std::move(act));
}

Presheaf empty(const FinCatPtr& base) {
  std::vector<FinSet> at(base->objects().size());
  std::vector<FinFn> act(base->morphisms().size(), FinFn::identity(FinSet()));
  return Presheaf(base, std::move(at), std::move(act));
}

Presheaf representable(const FinCatPtr& base, std::size_t a) {
  const FinCat& c = *base;
  std::vector<FinSet> at;
  for (std::size_t b = 0; b < c.objects().size(); ++b) {
    std::vector<Label> hs;
    for (std::size_t m : c.hom(b, a)) hs.push_back(c.morphisms()[m]);
    at.push_back(FinSet::of(std::move(hs)));
  }
  std::vector<FinFn> act;
  for (std::size_t h = 0; h < c.morphisms().size(); ++h) {
    const FinSet& dom = at[c.tgt()(h)];
    const FinSet& cod = at[c.src()(h)];
    act.push_back(FinFn::from_labels(dom, cod, [&](const Label& g) {
      return c.morphisms()[c.comp(c.morphisms().index_of(g), h)];
    }));
  }
  return Presheaf(base, std::move(at), std::move(act));
}

PshMor classify(const Presheaf& x, std::size_t a, std::size_t elem) {
  const FinCat& c = x.base();
  Presheaf ya = representable(x.base_ptr(), a);
  std::vector<FinFn> comps;
  for (std::size_t b = 0; b < c.objects().size(); ++b) {
    std::vector<std::size_t> m;
    for (const Label& g : ya.at(b)) m.push_back(x.action(c.morphisms().index_of(g))(elem));
    comps.emplace_back(ya.at(b), x.at(b), std::move(m));
  }
  return PshMor(ya, x, std::move(comps));
}

PshMor to_terminal(const Presheaf& x) {
  Presheaf one = terminal(x.base_ptr());
  std::vector<FinFn> comps;
  for (const FinSet& s : x.components()) comps.push_back(FinFn::constant(s, FinSet::unit(), 0));
  return PshMor(x, one, std::move(comps));
}

Product product(const Presheaf& x, const Presheaf& y) {
  PshMor a = to_terminal(x);
  PshMor b = to_terminal(y);
  Pullback pb = pullback(a, b);
  return {pb.object, pb.p1, pb.p2};
}

Pullback pullback(const PshMor& f, const PshMor& g) {
  if (!(f.cod() == g.cod())) throw DomainError("pullback: presheaf maps have different codomains");
  const FinCat& c = f.dom().base();
  std::vector<polycalc::Pullback> parts;
  std::vector<FinSet> at;
  for (std::size_t o = 0; o < c.objects().size(); ++o) {
    parts.push_back(polycalc::pullback(f.at(o), g.at(o)));
    at.push_back(parts.back().object);
  }
  std::vector<FinFn> act;
  for (std::size_t m = 0; m < c.morphisms().size(); ++m) {
    const auto& from = parts[c.tgt()(m)];
    const auto& to = parts[c.src()(m)];
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < from.object.size(); ++i) {
      const Label& xa = f.dom().action(m).cod()[f.dom().action(m)(from.p1(i))];
      const Label& ya = g.dom().action(m).cod()[g.dom().action(m)(from.p2(i))];
      t.push_back(to.object.index_of(Label::pair(xa, ya)));
    }
    act.emplace_back(from.object, to.object, std::move(t));
  }
  Presheaf obj(f.dom().base_ptr(), at, std::move(act));
  std::vector<FinFn> c1, c2;
  for (auto& p : parts) {
    c1.emplace_back(p.object, p.p1.cod(), p.p1.table());
    c2.emplace_back(p.object, p.p2.cod(), p.p2.table());
  }
  return {obj, PshMor(obj, f.dom(), std::move(c1)), PshMor(obj, g.dom(), std::move(c2))};
}

namespace {

// Backtracking search for natural transformations W → Z.
class HomSearch {
 public:
  HomSearch(const Presheaf& w, const Presheaf& z, const std::optional<std::pair<PshMor, PshMor>>& over,
            bool injective)
      : w_(w), z_(z), injective_(injective) {
    require_same_base(w, z, "hom enumeration");
    const FinCat& c = w.base();
    const std::size_t nobj = c.objects().size();
    offset_.resize(nobj + 1, 0);
    for (std::size_t o = 0; o < nobj; ++o) offset_[o + 1] = offset_[o] + w.at(o).size();
    const std::size_t n = offset_[nobj];
    obj_of_.resize(n);
    elem_of_.resize(n);
    for (std::size_t o = 0; o < nobj; ++o) {
      for (std::size_t e = 0; e < w.at(o).size(); ++e) {
        obj_of_[offset_[o] + e] = o;
        elem_of_[offset_[o] + e] = e;
      }
    }
    candidates_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t o = obj_of_[v];
      if (over) {
        if (!(over->first.dom() == w) || !(over->second.dom() == z) || !(over->first.cod() == over->second.cod())) {
          throw DomainError("hom enumeration: ill-typed slice");
        }
        candidates_[v] = over->second.at(o).fiber(over->first.at(o)(elem_of_[v]));
      } else {
        for (std::size_t k = 0; k < z.at(o).size(); ++k) candidates_[v].push_back(k);
      }
    }
    checks_.resize(n);
    for (std::size_t m = 0; m < c.morphisms().size(); ++m) {
      const std::size_t a = c.tgt()(m);
      const std::size_t b = c.src()(m);
      for (std::size_t e = 0; e < w.at(a).size(); ++e) {
        const std::size_t va = offset_[a] + e;
        const std::size_t vb = offset_[b] + w.action(m)(e);
        checks_[std::max(va, vb)].push_back({m, va, vb});
      }
    }
    used_.assign(nobj, std::vector<char>());
    for (std::size_t o = 0; o < nobj; ++o) used_[o].assign(z.at(o).size(), 0);
    assign_.assign(n, 0);
  }

  // Calls `emit` for each solution until it returns false.
  void run(const std::function<bool(const std::vector<std::size_t>&)>& emit) {
    emit_ = &emit;
    nodes_ = 0;
    cap_ = Budget::current();
    stop_ = false;
    recurse(0);
  }

  PshMor build(const std::vector<std::size_t>& a) const {
    std::vector<FinFn> comps;
    for (std::size_t o = 0; o + 1 < offset_.size(); ++o) {
      std::vector<std::size_t> t(a.begin() + static_cast<long>(offset_[o]), a.begin() + static_cast<long>(offset_[o + 1]));
      comps.emplace_back(w_.at(o), z_.at(o), std::move(t));
    }
    return PshMor(w_, z_, std::move(comps));
  }

 private:
  struct Check {
    std::size_t m, va, vb;  // Z(m)(γ va) == γ vb
  };

  void recurse(std::size_t v) {
    if (stop_) return;
    if (v == assign_.size()) {
      if (!(*emit_)(assign_)) stop_ = true;
      return;
    }
    const std::size_t o = obj_of_[v];
    for (std::size_t cand : candidates_[v]) {
      if (++nodes_ > cap_) Budget::charge(nodes_, "presheaf hom search");
      if (injective_ && used_[o][cand]) continue;
      assign_[v] = cand;
      bool ok = true;
      for (const Check& ch : checks_[v]) {
        if (z_.action(ch.m)(assign_[ch.va]) != assign_[ch.vb]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (injective_) used_[o][cand] = 1;
      recurse(v + 1);
      if (injective_) used_[o][cand] = 0;
      if (stop_) return;
    }
  }

  const Presheaf& w_;
  const Presheaf& z_;
  bool injective_;
  std::vector<std::size_t> offset_, obj_of_, elem_of_, assign_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::vector<Check>> checks_;
  std::vector<std::vector<char>> used_;
  const std::function<bool(const std::vector<std::size_t>&)>* emit_ = nullptr;
  std::uint64_t nodes_ = 0, cap_ = 0;
  bool stop_ = false;
};

}  // namespace

std::vector<PshMor> homs(const Presheaf& w, const Presheaf& z, const std::optional<std::pair<PshMor, PshMor>>& over,
                         std::size_t limit, bool injective_only) {
  HomSearch s(w, z, over, injective_only);
  std::vector<PshMor> out;
  s.run([&](const std::vector<std::size_t>& a) {
    out.push_back(s.build(a));
    return limit == 0 || out.size() < limit;
  });
  return out;
}

std::uint64_t count_homs(const Presheaf& w, const Presheaf& z, const std::optional<std::pair<PshMor, PshMor>>& over) {
  HomSearch s(w, z, over, false);
  std::uint64_t n = 0;
  s.run([&](const std::vector<std::size_t>&) {
    ++n;
    return true;
  });
  return n;
}

std::optional<PshMor> find_iso(const Presheaf& x, const Presheaf& y) {
  require_same_base(x, y, "find_iso");
  for (std::size_t o = 0; o < x.components().size(); ++o) {
    if (x.at(o).size() != y.at(o).size()) return std::nullopt;
  }
  auto r = homs(x, y, std::nullopt, 1, true);
  if (r.empty()) return std::nullopt;
  return r.front();
}

namespace {

// Δ_x Y = y(a) ×_X Y for x ∈ X(a), labels [g, y].
Pullback delta_at(const PshMor& f, std::size_t a, std::size_t x) {
  return pullback(classify(f.cod(), a, x), f);
}

Label gamma_label(const Pullback& d, const PshMor& gamma) {
  Label::List per_obj;
  for (std::size_t c = 0; c < d.object.components().size(); ++c) {
    Label::List vals;
    for (std::size_t i = 0; i < d.object.at(c).size(); ++i) vals.push_back(gamma.cod().at(c)[gamma.at(c)(i)]);
    per_obj.push_back(Label::list(std::move(vals)));
  }
  return Label::list(std::move(per_obj));
}

}  // namespace

DependentProduct presheaf_pi(const PshMor& f, const PshMor& g) {
  if (!(g.cod() == f.dom())) throw DomainError("presheaf_pi: g must land in the domain of f");
  const Presheaf& X = f.cod();
  const Presheaf& Z = g.dom();
  const FinCat& c = X.base();
  const std::size_t nobj = c.objects().size();

  std::vector<FinSet> at(nobj);
  std::vector<std::vector<std::size_t>> proj(nobj);
  std::uint64_t produced = 0;
  for (std::size_t a = 0; a < nobj; ++a) {
    std::vector<std::pair<Label, std::size_t>> elems;
    for (std::size_t x = 0; x < X.at(a).size(); ++x) {
      Pullback d = delta_at(f, a, x);
      for (const PshMor& gamma : homs(d.object, Z, std::make_pair(d.p2, g))) {
        elems.emplace_back(Label::pair(X.at(a)[x], gamma_label(d, gamma)), x);
        Budget::charge(++produced, "presheaf_pi");
      }
    }
    std::sort(elems.begin(), elems.end());
    std::vector<Label> ls;
    for (auto& [l, x] : elems) {
      ls.push_back(l);
      proj[a].push_back(x);
    }
    at[a] = FinSet::from_sorted(std::move(ls));
  }

  // Restriction along h: b → a sends [x, γ] to [X(h)x, γ'] with γ'(g, y) = γ(h∘g, y).
  std::map<std::pair<std::size_t, std::size_t>, Pullback> cache;
  auto delta = [&](std::size_t a, std::size_t x) -> const Pullback& {
    auto it = cache.find({a, x});
    if (it == cache.end()) it = cache.emplace(std::make_pair(a, x), delta_at(f, a, x)).first;
    return it->second;
  };
  std::vector<FinFn> act;
  for (std::size_t h = 0; h < c.morphisms().size(); ++h) {
    const std::size_t a = c.tgt()(h);
    const std::size_t b = c.src()(h);
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < at[a].size(); ++i) {
      const std::size_t x = proj[a][i];
      const std::size_t xb = X.action(h)(x);
      const Pullback& da = delta(a, x);
      const Pullback& db = delta(b, xb);
      const Label& gam = at[a][i].at(1);
      Label::List per_obj;
      for (std::size_t o = 0; o < nobj; ++o) {
        Label::List vals;
        for (const Label& gy : db.object.at(o)) {
          const std::size_t gidx = c.morphisms().index_of(gy.at(0));
          const Label moved = Label::pair(c.morphisms()[c.comp(h, gidx)], gy.at(1));
          vals.push_back(gam.at(o).at(da.object.at(o).index_of(moved)));
        }
        per_obj.push_back(Label::list(std::move(vals)));
      }
      t.push_back(at[b].index_of(Label::pair(X.at(b)[xb], Label::list(std::move(per_obj))), "restricted section"));
    }
    act.emplace_back(at[a], at[b], std::move(t));
  }
  Presheaf pi(X.base_ptr(), at, std::move(act));
  std::vector<FinFn> pc;
  for (std::size_t a = 0; a < nobj; ++a) pc.emplace_back(at[a], X.at(a), proj[a]);
  PshMor projm(pi, X, std::move(pc));

  Pullback dl = pullback(projm, f);
  std::vector<FinFn> cc;
  for (std::size_t a = 0; a < nobj; ++a) {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < dl.object.at(a).size(); ++i) {
      const std::size_t p = dl.p1.at(a)(i);
      const std::size_t y = dl.p2.at(a)(i);
      const Pullback& d = delta(a, proj[a][p]);
      const std::size_t k = d.object.at(a).index_of(Label::pair(c.morphisms()[c.id()(a)], f.dom().at(a)[y]));
      t.push_back(Z.at(a).index_of(at[a][p].at(1).at(a).at(k)));
    }
    cc.emplace_back(dl.object.at(a), Z.at(a), std::move(t));
  }
  PshMor counit(dl.object, Z, std::move(cc));
  return {pi, projm, f, g, dl, counit};
}

PiTranspose pi_untranspose(const DependentProduct& pi, const PshMor& tau) {
  if (!(tau.cod() == pi.object)) throw DomainError("pi_untranspose: map does not land in the dependent product");
  PshMor sigma = then(tau, pi.proj);
  Pullback pulled = pullback(sigma, pi.f);
  const std::size_t nobj = tau.dom().base().objects().size();
  std::vector<FinFn> gc;
  for (std::size_t a = 0; a < nobj; ++a) {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < pulled.object.at(a).size(); ++i) {
      const Label& pl = pi.object.at(a)[tau.at(a)(pulled.p1.at(a)(i))];
      const Label& yl = pi.f.dom().at(a)[pulled.p2.at(a)(i)];
      t.push_back(pi.counit.at(a)(pi.delta.object.at(a).index_of(Label::pair(pl, yl))));
    }
    gc.emplace_back(pulled.object.at(a), pi.g.dom().at(a), std::move(t));
  }
  PshMor gamma(pulled.object, pi.g.dom(), std::move(gc));
  return {sigma, pulled, gamma};
}

PshMor pi_transpose(const DependentProduct& pi, const PshMor& sigma, const PshMor& gamma) {
  const Presheaf& W = sigma.dom();
  const FinCat& c = W.base();
  Pullback pulled = pullback(sigma, pi.f);
  if (!(gamma.dom() == pulled.object) || !(gamma.cod() == pi.g.dom())) throw DomainError("pi_transpose: ill-typed map");
  if (!(then(gamma, pi.g) == pulled.p2)) throw DomainError("pi_transpose: map is not over the middle presheaf");
  std::vector<FinFn> tc;
  for (std::size_t a = 0; a < c.objects().size(); ++a) {
    std::vector<std::size_t> t;
    for (std::size_t w = 0; w < W.at(a).size(); ++w) {
      const std::size_t x = sigma.at(a)(w);
      Pullback d = delta_at(pi.f, a, x);
      Label::List per_obj;
      for (std::size_t o = 0; o < c.objects().size(); ++o) {
        Label::List vals;
        for (const Label& gy : d.object.at(o)) {
          const std::size_t gm = c.morphisms().index_of(gy.at(0));
          const Label wl = W.at(o)[W.action(gm)(w)];
          const std::size_t k = pulled.object.at(o).index_of(Label::pair(wl, gy.at(1)));
          vals.push_back(gamma.cod().at(o)[gamma.at(o)(k)]);
        }
        per_obj.push_back(Label::list(std::move(vals)));
      }
      t.push_back(pi.object.at(a).index_of(Label::pair(sigma.cod().at(a)[x], Label::list(std::move(per_obj)))));
    }
    tc.emplace_back(W.at(a), pi.object.at(a), std::move(t));
  }
  return PshMor(W, pi.object, std::move(tc));
}

}  // namespace polycalc::psh
