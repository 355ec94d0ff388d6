#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "helpers.hpp"
#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"
#include "polycalc/functor.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly.hpp"
#include "polycalc/poly_ops.hpp"

using namespace polycalc;
using testing_helpers::fn;

namespace {

Poly P(const std::string& s) { return Poly::parse(s); }

std::vector<std::size_t> sorted_arities(const Poly& p) {
  auto a = p.arities();
  std::sort(a.begin(), a.end());
  return a;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// |P(p)(X)| = Σ_I |X|^{|p[I]|}, straight from the arities.
std::uint64_t functor_size(const Poly& p, std::uint64_t x) {
  std::uint64_t n = 0;
  for (std::size_t k : p.arities()) n += ipow(x, k);
  return n;
}

// Π_I Σ_J |p[I]|^{|q[J]|}.
std::uint64_t hom_formula(const Poly& p, const Poly& q) {
  std::uint64_t n = 1;
  for (std::size_t a : p.arities()) {
    std::uint64_t s = 0;
    for (std::size_t b : q.arities()) s += ipow(a, b);
    n *= s;
  }
  return n;
}

const std::vector<std::string> kSmall{"0", "1", "y", "2y", "y^2", "y+1", "y^2+1", "y^2+y"};

PolyMor identity_after(const Poly& p) { return PolyMor::identity(p.materialized()); }

}  // namespace

TEST_SUITE("poly-core") {

TEST_CASE("parsing and printing") {
  CHECK(P("y^2 + 2y + 1").arities() == std::vector<std::size_t>{2, 1, 1, 0});
  CHECK(P("0").position_count() == 0);
  CHECK(P("y^2+2y+1").to_string() == "y^2 + 2y + 1");
  CHECK_THROWS_AS(P("y^"), DomainError);
  CHECK_THROWS_AS(P("y+"), DomainError);
}

TEST_CASE("identity y") {
  Poly y = Poly::y();
  CHECK(y.position_count() == 1);
  CHECK(y.directions(0).size() == 1);
  CHECK(hom_enumerate(P("0"), y).size() == 1);
  for (std::size_t n = 0; n <= 3; ++n) CHECK(eval_functor(y, FinSet::range(n)).size() == n);
}

TEST_CASE("hom_enumerate counts, order and duplicates") {
  CHECK(hom_enumerate(P("y^2"), P("2y")).size() == 4);
  CHECK(hom_enumerate(P("y^2"), P("y")).size() == 2);
  CHECK(hom_enumerate(P("0"), P("y^2+1")).size() == 1);
  for (const auto& a : kSmall)
    for (const auto& b : kSmall) {
      Poly p = P(a), q = P(b);
      auto homs = hom_enumerate(p, q);
      CHECK(homs.size() == hom_formula(p, q));
      CHECK(hom_count(p, q) == hom_formula(p, q));
      for (std::size_t i = 1; i < homs.size(); ++i) CHECK(mor_label(homs[i - 1]) < mor_label(homs[i]));
      for (const PolyMor& m : homs) CHECK(mor_from_label(p, q, mor_label(m)) == m);
    }
}

TEST_CASE("hom enumeration respects the budget") {
  ScopedBudget cap(100);
  CHECK_THROWS_AS(hom_enumerate(P("y^3+y^3+y^3"), P("y^3+y^2")), BudgetExceeded);
}

TEST_CASE("morphism composition: units, associativity, cartesian closure") {
  const std::vector<Poly> ps{P("y^2+1"), P("2y"), P("y^2"), P("y+1")};
  for (const Poly& p : ps)
    for (const Poly& q : ps)
      for (const PolyMor& phi : hom_enumerate(p, q)) {
        CHECK(mor_compose(PolyMor::identity(p), phi) == phi);
        CHECK(mor_compose(phi, PolyMor::identity(q)) == phi);
      }
  Poly p = P("y^2+1"), q = P("2y"), r = P("y^2");
  auto pq = hom_enumerate(p, q), qr = hom_enumerate(q, r), rp = hom_enumerate(r, p);
  for (const auto& a : pq)
    for (const auto& b : qr)
      for (const auto& c : rp) CHECK(mor_compose(mor_compose(a, b), c) == mor_compose(a, mor_compose(b, c)));

  Poly s = P("y^2+y"), t = P("2y^2+y");
  for (const auto& a : hom_enumerate(s, t))
    for (const auto& b : hom_enumerate(t, s))
      if (a.is_cartesian() && b.is_cartesian()) CHECK(mor_compose(a, b).is_cartesian());
}

TEST_CASE("composition of morphisms, directions backwards") {
  Poly p = P("y^2"), q = P("2y"), r = P("y^3");
  for (const auto& a : hom_enumerate(p, q))
    for (const auto& b : hom_enumerate(q, r)) {
      PolyMor c = mor_compose(a, b);
      // (b∘a)♯_I = a♯_I ∘ b♯_{a₁ I}
      CHECK(c.on_position(std::size_t{0}) == b.on_position(a.on_position(std::size_t{0})));
      const std::size_t j = q.index_of(a.on_position(std::size_t{0}));
      for (std::size_t k = 0; k < 3; ++k) CHECK(c.sharp(0)[k] == a.sharp(0)[b.sharp(j)[k]]);
    }
}

TEST_CASE("classify") {
  Classification id = classify(PolyMor::identity(P("y^2+1")));
  CHECK(id.cartesian);
  CHECK(id.vertical);
  // y^2 with its single position labelled like y's, so the position map is an identity.
  Poly y2 = Poly::monomial(FinSet::unit(), FinSet::range(2));
  auto to_y = hom_enumerate(y2, Poly::y());
  REQUIRE(to_y.size() == 2);
  for (const auto& m : to_y) {
    Classification c = classify(m);
    CHECK(c.vertical);
    CHECK_FALSE(c.cartesian);
  }
  // Both flags iff the position map is the identity and every φ♯ is bijective.
  Poly p = P("y^2+y");
  for (const auto& m : hom_enumerate(p, p)) {
    Classification c = classify(m);
    bool pos_id = true, bij = true;
    for (std::size_t i = 0; i < 2; ++i) {
      pos_id = pos_id && m.on_position(i) == p.positions()[i];
      std::set<std::size_t> image(m.sharp(i).begin(), m.sharp(i).end());
      bij = bij && image.size() == m.sharp(i).size() && m.sharp(i).size() == p.directions(i).size() &&
            m.cod_directions(i).size() == p.directions(i).size();
    }
    CHECK((c.cartesian && c.vertical) == (pos_id && bij));
    CHECK(c.iso == (c.cartesian && std::set<Label>{m.on_position(std::size_t{0}), m.on_position(1)}.size() == 2));
  }
}

TEST_CASE("vertical-cartesian factorization") {
  for (const auto& a : kSmall)
    for (const auto& b : kSmall) {
      Poly p = P(a), q = P(b);
      for (const auto& phi : hom_enumerate(p, q)) {
        VertCart vc = vert_cart_factorize(phi);
        CHECK(vc.vertical.is_vertical());
        CHECK(vc.cartesian.is_cartesian());
        CHECK(mor_compose(vc.vertical, vc.cartesian) == phi);
        if (phi.is_cartesian()) CHECK(vc.vertical.is_iso());
        if (phi.is_vertical()) CHECK(vc.cartesian.is_iso());
      }
    }
  auto phis = hom_enumerate(P("y^2"), P("2y"));
  for (const auto& phi : phis) CHECK(vert_cart_factorize(phi).middle.arities() == std::vector<std::size_t>{1});
}

TEST_CASE("compose_tri examples") {
  Poly c = compose_tri(P("y^2"), P("2y"));
  CHECK(sorted_arities(c) == std::vector<std::size_t>{2, 2, 2, 2});
  for (std::uint64_t n = 0; n <= 3; ++n) CHECK(eval_functor(c, FinSet::range(n)).size() == (2 * n) * (2 * n));
  CHECK(sorted_arities(compose_tri(P("y^2+1"), P("0"))) == std::vector<std::size_t>{0});
  CHECK(iso_check(P("4y^2"), c).has_value());
  CHECK(compose_tri(P("0"), P("y")).position_count() == 0);
}

TEST_CASE("functor-composition oracle with the canonical bijection") {
  const std::vector<std::string> corpus{"0", "1", "y", "y+1", "2y", "y^2", "y^2+1", "y^3", "y^2+y+1", "3y", "y^3+y"};
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      Poly p = P(a), q = P(b);
      Poly pq = compose_tri(p, q);
      for (std::uint64_t n = 0; n <= 3; ++n) {
        FinSet x = FinSet::range(n);
        const std::uint64_t expect = functor_size(p, functor_size(q, n));
        if (expect > 5000) continue;
        FinSet lhs = eval_functor(pq, x);
        FinSet rhs = eval_functor(p, eval_functor(q, x));
        REQUIRE(lhs.size() == expect);
        REQUIRE(rhs.size() == expect);
        std::set<Label> image;
        for (const Label& e : lhs) {
          Label u = unfold_composite(q, e);
          CHECK(rhs.contains(u));
          CHECK(fold_composite(u) == e);
          image.insert(u);
        }
        CHECK(image.size() == rhs.size());
      }
    }
}

TEST_CASE("tensor examples") {
  CHECK(sorted_arities(tensor(P("y^2+1"), Poly::y())) == std::vector<std::size_t>{0, 2});
  CHECK(sorted_arities(tensor(P("y^2"), P("y+1"))) == std::vector<std::size_t>{0, 2});
  CHECK(sorted_arities(tensor(P("2y"), P("3y"))) == std::vector<std::size_t>(6, 1));
  // |p ⊗ q| positions multiply and arities multiply.
  for (const auto& a : kSmall)
    for (const auto& b : kSmall) {
      std::vector<std::size_t> expect;
      for (std::size_t x : P(a).arities())
        for (std::size_t y : P(b).arities()) expect.push_back(x * y);
      std::sort(expect.begin(), expect.end());
      CHECK(sorted_arities(tensor(P(a), P(b))) == expect);
    }
}

TEST_CASE("eval_functor examples and naturality") {
  CHECK(eval_functor(P("y^2+1"), FinSet::range(3)).size() == 10);
  CHECK(eval_functor(P("2y"), FinSet::range(0)).empty());
  Poly p = P("y^2"), q = P("2y");
  auto phis = hom_enumerate(p, q);
  REQUIRE(phis.size() == 4);
  for (const auto& phi : phis)
    for (const auto& t : testing_helpers::tables(2, 3)) {
      FinFn h = fn(2, 3, t);
      FinFn lhs = then(eval_functor_map(p, h), eval_nat(phi, h.cod()));
      FinFn rhs = then(eval_nat(phi, h.dom()), eval_functor_map(q, h));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("P is functorial on morphisms") {
  const std::vector<Poly> ps{P("y^2+1"), P("2y"), P("y^2")};
  for (std::size_t n = 0; n <= 2; ++n) {
    FinSet x = FinSet::range(n);
    for (const Poly& p : ps) CHECK(eval_nat(PolyMor::identity(p), x) == FinFn::identity(eval_functor(p, x)));
    for (const auto& a : hom_enumerate(ps[0], ps[1]))
      for (const auto& b : hom_enumerate(ps[1], ps[2]))
        CHECK(eval_nat(mor_compose(a, b), x) == then(eval_nat(a, x), eval_nat(b, x)));
  }
}

TEST_CASE("strength") {
  SUBCASE("unit: τ over a point only relabels") {
    for (const auto& s : kSmall) {
      FinFn tau = strength(P(s), FinSet::unit(), FinSet::range(2));
      CHECK(tau.bijective());
    }
  }
  SUBCASE("y^2 with A = 2, B = 1") {
    FinFn tau = strength(P("y^2"), FinSet::range(2), FinSet::range(1));
    CHECK(tau.injective());
    CHECK(tau.dom().size() == 2);
    CHECK(tau.cod().size() == 4);
  }
  SUBCASE("composition axiom up to reassociation") {
    auto reassoc = [](const Label& x) { return Label::pair(Label::pair(x.at(0), x.at(1).at(0)), x.at(1).at(1)); };
    for (const auto& s : std::vector<std::string>{"y^2+1", "2y", "y^2+y"})
      for (std::size_t na = 1; na <= 2; ++na)
        for (std::size_t nb = 0; nb <= 2; ++nb) {
          Poly p = P(s);
          FinSet A = FinSet::range(na), A2 = FinSet::range(2), B = FinSet::range(nb);
          FinFn big = strength(p, product(A, A2), B);
          FinFn inner = strength(p, A2, B);
          FinFn outer = strength(p, A, product(A2, B));
          for (const Label& a : A)
            for (const Label& a2 : A2)
              for (const Label& e : eval_functor(p, B)) {
                const Label lhs = big(Label::pair(Label::pair(a, a2), e));
                const Label mid = inner(Label::pair(a2, e));
                const Label rhs = functor_map(reassoc, outer(Label::pair(a, mid)));
                CHECK(lhs == rhs);
              }
        }
  }
}

TEST_CASE("scalar multiplication") {
  for (const auto& s : kSmall) CHECK(sorted_arities(scalar(FinSet::unit(), P(s))) == sorted_arities(P(s)));
  CHECK(sorted_arities(scalar(FinSet::range(2), P("y^2+1"))) == std::vector<std::size_t>{0, 0, 2, 2});
  CHECK(scalar(FinSet::range(3), Poly::y()).arities() == std::vector<std::size_t>{1, 1, 1});
  for (const auto& s : kSmall) {
    Poly ay = Poly::monomial(FinSet::range(2), FinSet::unit());
    CHECK(iso_check(scalar(FinSet::range(2), P(s)), compose_tri(ay, P(s))).has_value());
  }
}

TEST_CASE("p_star") {
  CHECK(sorted_arities(p_star(Poly::y()).poly) == std::vector<std::size_t>{1});
  CHECK(sorted_arities(p_star(P("y^2+y")).poly) == std::vector<std::size_t>{1, 2, 2});
  CHECK(p_star(P("2")).poly.position_count() == 0);
  for (const auto& s : kSmall) CHECK(p_star(P(s)).proj.is_cartesian());
}

TEST_CASE("iso_check") {
  Poly p = P("y^2+y+1");
  auto self = iso_check(p, p);
  REQUIRE(self.has_value());
  CHECK(*self == PolyMor::identity(p));
  CHECK_FALSE(iso_check(P("y^2+1"), P("y+y")).has_value());
  auto via = iso_check(P("4y^2"), compose_tri(P("y^2"), P("2y")));
  REQUIRE(via.has_value());
  CHECK(via->is_iso());
}

TEST_CASE("equalizers") {
  SUBCASE("of a morphism with itself") {
    for (const auto& phi : hom_enumerate(P("y^2+1"), P("2y"))) {
      Equalizer e = equalizer(phi, phi);
      CHECK(e.object == phi.dom());
      CHECK(e.incl == PolyMor::identity(phi.dom()));
    }
  }
  SUBCASE("of id and swap on 2y is 0") {
    Poly p = P("2y");
    PolyMor swap(p, p, {1, 0}, {{0}, {0}});
    CHECK(equalizer(PolyMor::identity(p), swap).object.position_count() == 0);
  }
  SUBCASE("of id and the direction swap on y^2 is y") {
    Poly p = P("y^2");
    PolyMor swap(p, p, {0}, {{1, 0}});
    CHECK(equalizer(PolyMor::identity(p), swap).object.arities() == std::vector<std::size_t>{1});
  }
  SUBCASE("universal property against probes") {
    Poly p = P("y^2+y"), q = P("y^2+1");
    auto homs = hom_enumerate(p, q);
    const std::vector<Poly> probes{P("y"), P("y^2"), P("2y+1")};
    for (std::size_t i = 0; i < homs.size(); i += 7)
      for (std::size_t j = 0; j < homs.size(); j += 5) {
        Equalizer e = equalizer(homs[i], homs[j]);
        CHECK(mor_compose(e.incl, homs[i]) == mor_compose(e.incl, homs[j]));
        for (const Poly& r : probes) {
          std::uint64_t cones = 0;
          for (const auto& u : hom_enumerate(r, p)) cones += mor_compose(u, homs[i]) == mor_compose(u, homs[j]);
          CHECK(hom_count(r, e.object) == cones);
        }
      }
  }
}

TEST_CASE("cartesian limits") {
  SUBCASE("pullback of two cartesian maps into 2y^2") {
    Poly base = P("2y^2"), a = P("3y^2"), b = P("2y^2");
    PolyMor fa(a, base, {0, 0, 1}, {{0, 1}, {1, 0}, {0, 1}});
    PolyMor fb(b, base, {1, 0}, {{0, 1}, {0, 1}});
    Diagram d{{a, b, base}, {{0, 2, fa}, {1, 2, fb}}};
    Limit lim = cartesian_limit(d);
    CHECK(lim.coherent);
    CHECK(lim.object.arities() == std::vector<std::size_t>(3, 2));
    CHECK(mor_compose(lim.legs[0], fa) == mor_compose(lim.legs[1], fb));
    // Cones from probes factor uniquely.
    for (const Poly& r : {P("y"), P("y^2"), P("y+1")}) {
      std::uint64_t cones = 0;
      auto ua = hom_enumerate(r, a), ub = hom_enumerate(r, b);
      for (const auto& u : ua)
        for (const auto& v : ub) cones += mor_compose(u, fa) == mor_compose(v, fb);
      CHECK(hom_count(r, lim.object) == cones);
    }
    SUBCASE("− ◁ q preserves it") {
      Poly q = P("y+1");
      PolyMor fa_q = tri(fa, PolyMor::identity(q)).materialize();
      PolyMor fb_q = tri(fb, PolyMor::identity(q)).materialize();
      Diagram dq{{compose_tri(a, q), compose_tri(b, q), compose_tri(base, q)}, {{0, 2, fa_q}, {1, 2, fb_q}}};
      Limit lq = cartesian_limit(dq);
      CHECK(iso_check(lq.object, compose_tri(lim.object, q)).has_value());
    }
    SUBCASE("q ◁ − preserves it") {
      Poly q = P("y^2+1");
      PolyMor qa = tri(PolyMor::identity(q), fa).materialize();
      PolyMor qb = tri(PolyMor::identity(q), fb).materialize();
      Diagram dq{{compose_tri(q, a), compose_tri(q, b), compose_tri(q, base)}, {{0, 2, qa}, {1, 2, qb}}};
      CHECK(iso_check(cartesian_limit(dq).object, compose_tri(q, lim.object)).has_value());
    }
  }
  SUBCASE("a cycle acting on fibers identifies directions") {
    Poly p = P("y^2");
    PolyMor swap(p, p, {0}, {{1, 0}});
    Diagram d{{p, p}, {{0, 1, PolyMor::identity(p)}, {0, 1, swap}}};
    Limit lim = cartesian_limit(d);
    CHECK_FALSE(lim.coherent);
    CHECK(lim.object.arities() == std::vector<std::size_t>{1});
  }
  SUBCASE("non-cartesian edges are rejected") {
    Poly p = P("y^2");
    PolyMor v = hom_enumerate(p, Poly::y()).front();
    Diagram d{{p, Poly::y()}, {{0, 1, v}}};
    CHECK_THROWS_AS(cartesian_limit(d), DomainError);
  }
}

TEST_CASE("q ◁ − preserves equalizers") {
  Poly p = P("y^2+1"), p2 = P("y+1");
  auto homs = hom_enumerate(p, p2);
  for (const auto& qs : std::vector<std::string>{"y^2", "y+1", "2y"}) {
    Poly q = P(qs);
    for (std::size_t i = 0; i < homs.size(); i += 3)
      for (std::size_t j = 0; j < homs.size(); j += 4) {
        Equalizer e = equalizer(homs[i], homs[j]);
        PolyMor qi = tri(PolyMor::identity(q), homs[i]).materialize();
        PolyMor qj = tri(PolyMor::identity(q), homs[j]).materialize();
        CHECK(iso_check(equalizer(qi, qj).object, compose_tri(q, e.object)).has_value());
      }
  }
}

TEST_CASE("monoidal structure of ◁") {
  const std::vector<std::string> corpus{"0", "1", "y", "y+1", "2y", "y^2", "y^2+1"};
  SUBCASE("unitors are inverse isomorphisms") {
    for (const auto& s : corpus) {
      Poly p = P(s);
      PolyMor l = tri_left_unitor(p).materialize();
      PolyMor r = tri_right_unitor(p).materialize();
      CHECK(l.is_iso());
      CHECK(r.is_iso());
      CHECK(then(l, tri_left_unitor_inv(p)) == identity_after(l.dom()));
      CHECK(then(r, tri_right_unitor_inv(p)) == identity_after(r.dom()));
    }
  }
  SUBCASE("associator and pentagon and triangle") {
    const std::vector<std::string> small{"1", "y", "y+1", "2y", "y^2"};
    for (const auto& a : small)
      for (const auto& b : small)
        for (const auto& c : small) {
          Poly p = P(a), q = P(b), r = P(c);
          PolyMor al = tri_associator(p, q, r).materialize();
          CHECK(al.is_iso());
          CHECK(then(al, tri_associator_inv(p, q, r)) == identity_after(al.dom()));
          // (id_p ◁ λ_r) ∘ α_{p,y,r} = ρ_p ◁ id_r
          PolyMor start = identity_after(compose_tri(compose_tri(p, Poly::y()), r));
          PolyMor lhs = then(then(start, tri_associator(p, Poly::y(), r)),
                             tri(lazy_identity(p), tri_left_unitor(r)));
          PolyMor rhs = then(start, tri(tri_right_unitor(p), lazy_identity(r)));
          CHECK(lhs == rhs);
          for (const auto& d : std::vector<std::string>{"y", "y+1"}) {
            Poly s = P(d);
            PolyMor st = identity_after(compose_tri(compose_tri(compose_tri(p, q), r), s));
            PolyMor top = then(then(st, tri_associator(compose_tri(p, q), r, s)), tri_associator(p, q, compose_tri(r, s)));
            PolyMor bottom = then(then(then(st, tri(tri_associator(p, q, r), lazy_identity(s))),
                                       tri_associator(p, compose_tri(q, r), s)),
                                  tri(lazy_identity(p), tri_associator(q, r, s)));
            CHECK(top == bottom);
          }
        }
  }
}

TEST_CASE("symmetric monoidal structure of ⊗") {
  const std::vector<std::string> corpus{"0", "1", "y", "y+1", "2y", "y^2", "y^2+1"};
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      Poly p = P(a), q = P(b);
      PolyMor sig = braiding(p, q).materialize();
      CHECK(sig.is_iso());
      CHECK(then(sig, braiding(q, p)) == identity_after(tensor(p, q)));
      PolyMor lu = tensor_left_unitor(p).materialize();
      CHECK(lu.is_iso());
      CHECK(then(lu, tensor_left_unitor_inv(p)) == identity_after(lu.dom()));
      CHECK(then(tensor_right_unitor(p).materialize(), tensor_right_unitor_inv(p)) ==
            identity_after(tensor(p, Poly::y())));
      for (const auto& c : std::vector<std::string>{"y", "y^2+1", "2y"}) {
        Poly r = P(c);
        PolyMor al = tensor_associator(p, q, r).materialize();
        CHECK(al.is_iso());
        CHECK(then(al, tensor_associator_inv(p, q, r)) == identity_after(al.dom()));
        // Hexagon: α ∘ σ_{p⊗q... } in the form (p⊗q)⊗r → q⊗(r⊗p).
        PolyMor st = identity_after(tensor(tensor(p, q), r));
        PolyMor lhs = then(then(then(st, tensor_associator(p, q, r)), braiding(p, tensor(q, r))),
                           tensor_associator(q, r, p));
        PolyMor rhs = then(then(then(st, tensor(braiding(p, q), lazy_identity(r))), tensor_associator(q, p, r)),
                           tensor(lazy_identity(q), braiding(p, r)));
        CHECK(lhs == rhs);
      }
    }
}

}  // TEST_SUITE
