#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>

#include "polycalc/error.hpp"
#include "polycalc/monoidal.hpp"
#include "polycalc/poly_ops.hpp"
#include "polycalc/structures.hpp"

using namespace polycalc;

namespace {

Poly P(const std::string& s) { return Poly::parse(s); }

std::vector<std::size_t> sorted_arities(const Poly& p) {
  auto a = p.arities();
  std::sort(a.begin(), a.end());
  return a;
}

PolyMor start(const Poly& p) { return PolyMor::identity(p.materialized()); }

// ⟨γ|q⟩: ⟨p|q⟩ → ⟨p'|q⟩ for γ: p → p', by postcomposing h with γ♯.
PolyMor coclosure_map(const PolyMor& gamma, const Poly& q) {
  return PolyMor::from_functions(
      right_coclosure(gamma.dom(), q), right_coclosure(gamma.cod(), q),
      [&](const Label& I) { return gamma.on_position(I); },
      [&](const Label& I, const Label& Jh) {
        Label::List h;
        for (const Label& d : Jh.at(1).items()) h.push_back(gamma.on_direction(I, d));
        return Label::pair(Jh.at(0), Label::list(std::move(h)));
      });
}

}  // namespace

TEST_SUITE("poly-structures") {

TEST_CASE("interchange") {
  SUBCASE("all four y") {
    Poly y = Poly::y();
    PolyMor z = interchange(y, y, y, y).materialize();
    CHECK(z.is_iso());
  }
  SUBCASE("p1 = y^2, the rest y") {
    Poly y = Poly::y();
    PolyMor z = interchange(P("y^2"), y, y, y).materialize();
    Classification c = classify(z);
    CHECK(c.cartesian);
  }
  SUBCASE("cartesian on a small corpus, and the Set description") {
    const std::vector<std::string> corpus{"1", "y", "y+1", "2y", "y^2"};
    for (const auto& a : corpus)
      for (const auto& b : corpus)
        for (const auto& c : corpus)
          for (const auto& d : corpus) {
            Poly p1 = P(a), p2 = P(b), q1 = P(c), q2 = P(d);
            PolyMor z = interchange(p1, p2, q1, q2).materialize();
            CHECK(z.is_cartesian());
            // The codomain position's exponent is p1[I] × q1[K].
            for (std::size_t i = 0; i < z.dom().position_count(); ++i) {
              const Label& src = z.dom().positions()[i];
              const Label& img = z.on_position(i);
              CHECK(img.at(0) == Label::pair(src.at(0).at(0), src.at(1).at(0)));
              CHECK(img.at(1).size() == src.at(0).at(1).size() * src.at(1).at(1).size());
            }
          }
  }
  SUBCASE("naturality against enumerated morphisms") {
    Poly p1 = P("y+1"), p2 = P("y"), q1 = P("y"), q2 = P("2y");
    Poly p1b = P("y^2"), q2b = P("y+1");
    PolyMor st = start(tensor(compose_tri(p1, p2), compose_tri(q1, q2)));
    for (const auto& f : hom_enumerate(p1, p1b))
      for (const auto& g : hom_enumerate(q2, q2b)) {
        LazyMor idp2 = lazy_identity(p2), idq1 = lazy_identity(q1);
        PolyMor lhs = then(then(st, tensor(tri(LazyMor::of(f), idp2), tri(idq1, LazyMor::of(g)))),
                           interchange(p1b, p2, q1, q2b));
        PolyMor rhs = then(then(st, interchange(p1, p2, q1, q2)),
                           tri(tensor(LazyMor::of(f), idq1), tensor(idp2, LazyMor::of(g))));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("duoidal coherence of the interchange") {
  const std::vector<std::string> corpus{"1", "y", "y+1", "y^2"};
  SUBCASE("against the ⊗ associator") {
    for (const auto& a : corpus)
      for (const auto& b : corpus)
        for (const auto& c : corpus) {
          Poly p1 = P(a), p2 = P("y"), q1 = P(b), q2 = P("y+1"), r1 = P(c), r2 = P("2y");
          PolyMor st = start(tensor(tensor(compose_tri(p1, p2), compose_tri(q1, q2)), compose_tri(r1, r2)));
          PolyMor lhs = then(then(then(st, tensor(interchange(p1, p2, q1, q2), lazy_identity(compose_tri(r1, r2)))),
                                  interchange(tensor(p1, q1), tensor(p2, q2), r1, r2)),
                             tri(tensor_associator(p1, q1, r1), tensor_associator(p2, q2, r2)));
          PolyMor rhs =
              then(then(then(st, tensor_associator(compose_tri(p1, p2), compose_tri(q1, q2), compose_tri(r1, r2))),
                        tensor(lazy_identity(compose_tri(p1, p2)), interchange(q1, q2, r1, r2))),
                   interchange(p1, p2, tensor(q1, r1), tensor(q2, r2)));
          CHECK(lhs == rhs);
        }
  }
  SUBCASE("against the ◁ associator") {
    for (const auto& a : corpus)
      for (const auto& b : corpus) {
        Poly p1 = P(a), p2 = P("y+1"), p3 = P("y"), q1 = P(b), q2 = P("y"), q3 = P("2y");
        Poly l = compose_tri(compose_tri(p1, p2), p3), r = compose_tri(compose_tri(q1, q2), q3);
        PolyMor st = start(tensor(l, r));
        PolyMor lhs = then(then(then(st, interchange(compose_tri(p1, p2), p3, compose_tri(q1, q2), q3)),
                                tri(interchange(p1, p2, q1, q2), lazy_identity(tensor(p3, q3)))),
                           tri_associator(tensor(p1, q1), tensor(p2, q2), tensor(p3, q3)));
        PolyMor rhs = then(then(then(st, tensor(tri_associator(p1, p2, p3), tri_associator(q1, q2, q3))),
                                interchange(p1, compose_tri(p2, p3), q1, compose_tri(q2, q3))),
                           tri(lazy_identity(tensor(p1, q1)), interchange(p2, p3, q2, q3)));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("closure examples") {
  CHECK(sorted_arities(closure(P("y^2"), P("2y"))) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(sorted_arities(closure(P("y^2"), P("y"))) == std::vector<std::size_t>{1, 1});
  for (const auto& s : std::vector<std::string>{"0", "1", "y^2+1", "2y", "y^3+y"}) {
    Poly q = P(s);
    Poly c = closure(Poly::y(), q);
    // q ≅ [y, q]: J ↦ the morphism y → q picking J, directions [[], j] ↦ j.
    PolyMor iso = PolyMor::from_functions(
        q, c,
        [&](const Label& J) {
          std::vector<std::vector<std::size_t>> sharp{std::vector<std::size_t>(q.directions(J).size(), 0)};
          return mor_label(PolyMor(Poly::y(), q, {J}, sharp));
        },
        [](const Label&, const Label& Ij) { return Ij.at(1); });
    CHECK(iso.is_iso());
  }
}

TEST_CASE("closure adjunction") {
  SUBCASE("counts on both sides") {
    CHECK(hom_enumerate(tensor(Poly::y(), P("y^2")), P("2y")).size() == 4);
    CHECK(hom_enumerate(Poly::y(), closure(P("y^2"), P("2y"))).size() == 4);
    CHECK(hom_enumerate(tensor(Poly::y(), Poly::y()), Poly::y()).size() == 1);
  }
  SUBCASE("round trips over the full hom-sets") {
    const std::vector<std::array<std::string, 3>> triples{
        {"y^2", "y^2", "2y"}, {"y", "y^2", "2y"}, {"y+1", "y", "y^2"}, {"2y", "y+1", "y+1"}, {"0", "y", "y"}};
    for (const auto& [a, b, c] : triples) {
      Poly p = P(a), q = P(b), r = P(c);
      auto left = hom_enumerate(tensor(p, q), r);
      auto right = hom_enumerate(p, closure(q, r));
      REQUIRE(left.size() == right.size());
      for (const auto& phi : left) {
        PolyMor t = closure_transpose(phi, p, q);
        CHECK(closure_untranspose(t, q, r) == phi);
        // φ = ev ∘ (id_q ⊗ φ^t) ∘ σ
        PolyMor via = then(then(then(start(tensor(p, q)), braiding(p, q)), tensor(lazy_identity(q), LazyMor::of(t))),
                           closure_eval(q, r));
        CHECK(via == phi);
      }
      for (const auto& psi : right) CHECK(closure_transpose(closure_untranspose(psi, q, r), p, q) == psi);
    }
  }
  SUBCASE("triangle identities for (y^2, 2y)") {
    Poly p = P("y^2"), q = P("2y");
    // ev_{p⊗q} ∘ (p ⊗ η_q) = id
    PolyMor eta = closure_pair(p, q);
    PolyMor first = then(start(tensor(p, q)), tensor(lazy_identity(p), LazyMor::of(eta)));
    CHECK(then(first, closure_eval(p, tensor(p, q))) == start(tensor(p, q)));
    // [p, ev_q] ∘ η_{[p,q]} = id
    Poly c = closure(p, q);
    PolyMor eta_c = closure_pair(p, c);
    PolyMor ev = closure_eval(p, q).materialize();
    CHECK(mor_compose(eta_c, closure_map(p, ev)) == PolyMor::identity(c));
  }
  SUBCASE("functoriality of [-,-]") {
    Poly p = P("y+1"), q = P("y^2");
    for (const auto& g : hom_enumerate(q, P("2y")))
      for (const auto& h : hom_enumerate(P("2y"), P("y+1")))
        CHECK(mor_compose(closure_map(p, g), closure_map(p, h)) == closure_map(p, mor_compose(g, h)));
    for (const auto& g : hom_enumerate(P("y"), p)) {
      PolyMor a = closure_comap(g, q);
      for (const auto& h : hom_enumerate(q, P("2y"))) {
        // The two actions commute.
        CHECK(mor_compose(closure_map(p, h), closure_comap(g, P("2y"))) ==
              mor_compose(a, closure_map(P("y"), h)));
      }
    }
  }
}

TEST_CASE("right coclosure") {
  for (const auto& s : std::vector<std::string>{"0", "1", "y^2+1", "2y", "y^3+y"}) {
    Poly p = P(s);
    Poly c = right_coclosure(p, Poly::y());
    // ⟨p|y⟩ ≅ p, with directions [[], [d]] ↦ d.
    PolyMor iso = PolyMor::from_functions(
        c, p, [](const Label& I) { return I; },
        [](const Label&, const Label& d) { return Label::pair(Label::unit(), Label::list({d})); });
    CHECK(iso.is_iso());
    CHECK(iso.is_vertical());
  }
  CHECK(sorted_arities(right_coclosure(P("y^2"), P("2y"))) == std::vector<std::size_t>{4});
  CHECK(sorted_arities(right_coclosure(P("2y"), P("y^2"))) == std::vector<std::size_t>{1, 1});
  CHECK(hom_enumerate(P("y^2"), compose_tri(Poly::y(), P("2y"))).size() == 4);
  CHECK(hom_enumerate(right_coclosure(P("y^2"), P("2y")), Poly::y()).size() == 4);

  SUBCASE("unit of the adjunction") {
    Poly p = P("y^2+1"), q = P("y+1");
    Poly c = right_coclosure(p, q);
    PolyMor eta = rc_untranspose(PolyMor::identity(c), p, q);
    CHECK(rc_transpose(eta, q) == PolyMor::identity(c));
  }
  SUBCASE("round trips") {
    const std::vector<std::array<std::string, 3>> triples{
        {"2y", "y^2", "y"}, {"y^2", "y", "2y"}, {"y^2+1", "y+1", "y"}, {"y", "2y", "y^2"}, {"y^2", "0", "y+1"}};
    for (const auto& [a, b, c] : triples) {
      Poly p = P(a), r = P(b), q = P(c);
      auto left = hom_enumerate(p, compose_tri(r, q));
      auto right = hom_enumerate(right_coclosure(p, q), r);
      REQUIRE(left.size() == right.size());
      for (const auto& psi : left) CHECK(rc_untranspose(rc_transpose(psi, q), p, q) == psi);
      for (const auto& phi : right) CHECK(rc_transpose(rc_untranspose(phi, p, q), q) == phi);
    }
  }
}

TEST_CASE("frown") {
  SUBCASE("p ⌢_id p is p_*") {
    for (const auto& s : std::vector<std::string>{"0", "2", "y^2+y", "y^3+2y"}) {
      Poly p = P(s);
      CHECK(frown(p, FinFn::identity(p.positions()), p) == p_star(p).poly);
    }
  }
  SUBCASE("p ⌢ y relabels p") {
    Poly p = P("y^2+y+1");
    Poly f = frown(p, FinFn::constant(p.positions(), Poly::y().positions(), 0), Poly::y());
    CHECK(f.arities() == p.arities());
  }
  SUBCASE("(2y) ⌢_f (y^2+y)") {
    Poly p = P("2y"), q = P("y^2+y");
    Poly f = frown(p, FinFn(p.positions(), q.positions(), {0, 1}), q);
    CHECK(sorted_arities(f) == std::vector<std::size_t>{1, 1, 1});
  }
  SUBCASE("mistyped index") {
    CHECK_THROWS_AS(frown(P("y"), FinFn::identity(FinSet::range(2)), P("2y")), DomainError);
  }
  SUBCASE("naturality along cartesian maps") {
    Poly p = P("y^2+y"), q = P("y^2+2y"), q2 = P("y^2+y");
    for (const auto& phi : hom_enumerate(q, q2)) {
      if (!phi.is_cartesian()) continue;
      for (const auto& t : std::vector<std::vector<std::size_t>>{{0, 1}, {1, 2}, {0, 0}}) {
        FinFn f(p.positions(), q.positions(), t);
        FinFn g = FinFn::from_labels(p.positions(), q2.positions(), [&](const Label& I) {
          return phi.on_position(f(I));
        });
        // [I, e'] ↦ [I, φ♯ e'] identifies the two frowns.
        PolyMor iso = PolyMor::from_functions(
            frown(p, g, q2), frown(p, f, q),
            [&](const Label& Ie) { return Label::pair(Ie.at(0), phi.on_direction(f(Ie.at(0)), Ie.at(1))); },
            [](const Label&, const Label& d) { return d; });
        CHECK(iso.is_iso());
      }
    }
  }
}

TEST_CASE("indexed left coclosure") {
  SUBCASE("q = y") {
    Poly p = P("y^2+1"), r = P("y+1");
    auto homs = hom_enumerate(p, compose_tri(Poly::y(), r));
    CHECK(homs.size() == hom_enumerate(p, r).size());
    for (const auto& psi : homs) CHECK(frown_transpose(psi).f == FinFn::constant(p.positions(), Poly::y().positions(), 0));
  }
  SUBCASE("counts partitioned by f for (y^2, 2y, y)") {
    Poly p = P("y^2"), q = P("2y"), r = Poly::y();
    std::map<std::vector<std::size_t>, std::size_t> by_f;
    for (const auto& psi : hom_enumerate(p, compose_tri(q, r))) ++by_f[frown_transpose(psi).f.table()];
    for (const auto& f : all_functions(p.positions(), q.positions()))
      CHECK(by_f[f.table()] == hom_enumerate(frown(p, f, q), r).size());
  }
  SUBCASE("round trips") {
    const std::vector<std::array<std::string, 3>> triples{
        {"2y", "y+1", "y"}, {"y^2", "2y", "y"}, {"y^2+1", "y^2", "y+1"}, {"y", "0", "y"}};
    for (const auto& [a, b, c] : triples) {
      Poly p = P(a), q = P(b), r = P(c);
      for (const auto& psi : hom_enumerate(p, compose_tri(q, r))) {
        FrownTranspose t = frown_transpose(psi);
        CHECK(frown_untranspose(p, t.f, q, t.map) == psi);
      }
      for (const auto& f : all_functions(p.positions(), q.positions()))
        for (const auto& phi : hom_enumerate(frown(p, f, q), r)) {
          FrownTranspose t = frown_transpose(frown_untranspose(p, f, q, phi));
          CHECK(t.f == f);
          CHECK(t.map == phi);
        }
    }
  }
}

TEST_CASE("derived comparison maps") {
  SUBCASE("closure_tri_lax with everything y") {
    Poly y = Poly::y();
    PolyMor m = closure_tri_lax(y, y, y, y);
    CHECK(m.is_iso());
  }
  SUBCASE("closure_tri_lax on (y^2, 2y, y, y) and naturality in q2") {
    Poly p1 = P("y^2"), q1 = P("2y"), p2 = Poly::y(), q2 = Poly::y();
    PolyMor m = closure_tri_lax(p1, q1, p2, q2);
    CHECK(m.dom() == compose_tri(closure(p1, q1), closure(p2, q2)));
    Poly q2b = P("y+1");
    for (const auto& g : hom_enumerate(q2, q2b)) {
      PolyMor mb = closure_tri_lax(p1, q1, p2, q2b);
      PolyMor lhs = mor_compose(m, closure_map(compose_tri(p1, p2), tri(PolyMor::identity(q1), g).materialize()));
      PolyMor rhs = then(start(m.dom()), tri(lazy_identity(closure(p1, q1)), LazyMor::of(closure_map(p2, g))));
      CHECK(lhs == mor_compose(rhs, mb));
    }
  }
  SUBCASE("coclosure_tensor_map with q1 = q2 = y") {
    Poly y = Poly::y();
    CHECK(coclosure_tensor_map(P("y^2+1"), y, P("2y"), y).is_iso());
  }
  SUBCASE("coclosure_tensor_map on (y^2, 2y, y, y) is natural in p1") {
    Poly p1 = P("y^2"), q1 = P("2y"), p2 = Poly::y(), q2 = Poly::y();
    PolyMor m = coclosure_tensor_map(p1, q1, p2, q2);
    Poly p1b = P("y^2+1");
    PolyMor mb = coclosure_tensor_map(p1b, q1, p2, q2);
    for (const auto& g : hom_enumerate(p1, p1b)) {
      PolyMor gt = tensor(LazyMor::of(g), lazy_identity(p2)).materialize();
      PolyMor lhs = mor_compose(coclosure_map(gt, tensor(q1, q2)), mb);
      PolyMor rhs = then(m, tensor(LazyMor::of(coclosure_map(g, q1)), lazy_identity(right_coclosure(p2, q2))));
      CHECK(lhs == rhs);
    }
  }
  SUBCASE("frown_tensor_iso") {
    Poly p1 = P("2y"), q1 = P("y^2"), p2 = P("y+1"), q2 = P("2y");
    FinFn f1 = FinFn::constant(p1.positions(), q1.positions(), 0);
    FinFn f2(p2.positions(), q2.positions(), {1, 0});
    Classification c = classify(frown_tensor_iso(p1, f1, q1, p2, f2, q2));
    CHECK(c.iso);
    Poly p = P("y^2+y");
    PolyMor id_index = frown_tensor_iso(p, FinFn::identity(p.positions()), p, p1, f1, q1);
    CHECK(id_index.is_iso());
  }
}

}  // TEST_SUITE
