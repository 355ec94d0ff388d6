#include <doctest.h>

#include <map>
#include <random>

#include "helpers.hpp"
#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"
#include "polycalc/fincat.hpp"
#include "polycalc/label.hpp"
#include "polycalc/slice.hpp"

using namespace polycalc;
using testing_helpers::fn;
using testing_helpers::tables;

TEST_SUITE("base-cats") {

TEST_CASE("labels order ints before strings before lists") {
  CHECK(Label(5) < Label("a"));
  CHECK(Label("z") < Label::list({}));
  CHECK(Label::list({1, 2}) < Label::list({1, 3}));
  CHECK(Label::list({1}) < Label::list({1, 0}));
  CHECK(Label::pair("a", Label::list({1, "b"})).to_string() == R"(["a",[1,"b"]])");
  CHECK(Label() == Label::unit());
}

TEST_CASE("finset rejects duplicates and sorts") {
  CHECK_THROWS_AS(FinSet::of({1, 1}), DomainError);
  FinSet s = FinSet::of({"b", 3, "a"});
  CHECK(s[0] == Label(3));
  CHECK(s[2] == Label("b"));
  CHECK(s.index_of("a") == 1);
}

TEST_CASE("pullback examples") {
  SUBCASE("along an identity") {
    Pullback pb = pullback(fn(2, 1, {0, 0}), FinFn::identity(FinSet::range(1)));
    CHECK(pb.object.size() == 2);
    CHECK(pb.p1.bijective());
  }
  SUBCASE("2 and 3 over a point") {
    CHECK(pullback(fn(2, 1, {0, 0}), fn(3, 1, {0, 0, 0})).object.size() == 6);
  }
  SUBCASE("empty domain") {
    CHECK(pullback(fn(0, 1, {}), fn(3, 1, {0, 0, 0})).object.empty());
  }
  SUBCASE("codomain mismatch") {
    CHECK_THROWS_AS(pullback(fn(1, 1, {0}), fn(1, 2, {0})), DomainError);
  }
}

TEST_CASE("pullback universal property against every cone from probes up to size 4") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t na = 1 + rng() % 3, nb = 1 + rng() % 3, nc = 1 + rng() % 2;
    FinFn f = testing_helpers::random_fn(rng, na, nc);
    FinFn g = testing_helpers::random_fn(rng, nb, nc);
    Pullback pb = pullback(f, g);
    for (std::size_t nd = 0; nd <= 4; ++nd) {
      auto probes_a = tables(nd, na);
      auto probes_b = tables(nd, nb);
      auto mediators = tables(nd, pb.object.size());
      for (const auto& ta : probes_a)
        for (const auto& tb : probes_b) {
          bool cone = true;
          for (std::size_t i = 0; i < nd; ++i) cone = cone && f(ta[i]) == g(tb[i]);
          if (!cone) continue;
          int found = 0;
          for (const auto& m : mediators) {
            bool ok = true;
            for (std::size_t i = 0; i < nd; ++i) ok = ok && pb.p1(m[i]) == ta[i] && pb.p2(m[i]) == tb[i];
            found += ok;
          }
          CHECK(found == 1);
        }
    }
  }
}

// Oracle: |Π_f Z over a| = Π_{b ∈ f⁻¹ a} |g⁻¹ b|, the number of sections.
static std::vector<std::size_t> section_counts(const FinFn& f, const FinFn& g) {
  std::vector<std::size_t> out(f.cod().size(), 1);
  for (std::size_t b = 0; b < f.dom().size(); ++b) {
    std::size_t fib = 0;
    for (std::size_t z = 0; z < g.dom().size(); ++z) fib += g(z) == b;
    out[f(b)] *= fib;
  }
  return out;
}

TEST_CASE("pi_finset examples") {
  SUBCASE("fibers of sizes 2 and 3 over two points of one fiber") {
    DependentProduct pi = pi_finset(fn(2, 1, {0, 0}), fn(5, 2, {0, 0, 1, 1, 1}));
    CHECK(pi.object.size() == 6);
  }
  SUBCASE("f iso gives Z over A") {
    FinFn f = fn(3, 3, {2, 0, 1});
    FinFn g = fn(4, 3, {0, 1, 1, 2});
    DependentProduct pi = pi_finset(f, g);
    CHECK(pi.object.size() == 4);
    auto counts = section_counts(f, g);
    for (std::size_t a = 0; a < 3; ++a) CHECK(pi.proj.fiber(a).size() == counts[a]);
  }
  SUBCASE("g iso gives A itself") {
    FinFn f = fn(3, 2, {0, 0, 1});
    DependentProduct pi = pi_finset(f, FinFn::identity(FinSet::range(3)));
    CHECK(pi.object.size() == 2);
    CHECK(pi.proj.bijective());
  }
  SUBCASE("empty fiber contributes one empty section") {
    DependentProduct pi = pi_finset(fn(0, 2, {}), fn(0, 0, {}));
    CHECK(pi.object.size() == 2);
    CHECK(pi.object[0].at(1).size() == 0);
  }
}

TEST_CASE("pi_finset section counts on random inputs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t na = 1 + rng() % 3, nb = rng() % 4;
    const std::size_t nz = nb == 0 ? 0 : rng() % 5;
    FinFn f = testing_helpers::random_fn(rng, nb, na);
    FinFn g = testing_helpers::random_fn(rng, nz, nb);
    DependentProduct pi = pi_finset(f, g);
    auto counts = section_counts(f, g);
    for (std::size_t a = 0; a < na; ++a) CHECK(pi.proj.fiber(a).size() == counts[a]);
  }
}

TEST_CASE("distributivity pullback examples") {
  SUBCASE("f = id returns (C, g)") {
    FinFn g = fn(3, 2, {0, 1, 1});
    DistributivityPullback dp = distributivity_pullback(FinFn::identity(FinSet::range(2)), g);
    CHECK(dp.pi.object.size() == 3);
    // Π_id g = g: the projection has g's fibers.
    CHECK(dp.pi.proj.fiber(0).size() == 1);
    CHECK(dp.pi.proj.fiber(1).size() == 2);
    CHECK(dp.counit.bijective());
  }
  SUBCASE("g = id returns (A, id)") {
    FinFn f = fn(2, 1, {0, 0});
    DistributivityPullback dp = distributivity_pullback(f, FinFn::identity(FinSet::range(2)));
    CHECK(dp.pi.proj.bijective());
  }
  SUBCASE("the square commutes with f and g") {
    FinFn f = fn(2, 1, {0, 0});
    FinFn g = fn(3, 2, {0, 0, 1});
    DistributivityPullback dp = distributivity_pullback(f, g);
    CHECK(dp.pi.object.size() == 2);
    CHECK(then(dp.counit, g) == dp.delta.p2);
    CHECK(then(dp.delta.p1, dp.pi.proj) == then(dp.delta.p2, f));
  }
}

// Hom_{/A}(Σ_f D, C) ≅ Hom_{/B}(D, Δ_f C): h ↦ (d ↦ [h d, d]) into C ×_A B.
TEST_CASE("sigma is left adjoint to delta with explicit bijections") {
  for (std::size_t na = 1; na <= 2; ++na)
    for (std::size_t nb = 1; nb <= 3; ++nb)
      for (const auto& ft : tables(nb, na)) {
        FinFn f = fn(nb, na, ft);
        for (std::size_t nd = 0; nd <= 2; ++nd)
          for (const auto& dt : tables(nd, nb))
            for (std::size_t nc = 0; nc <= 2; ++nc)
              for (const auto& ct : tables(nc, na)) {
                FinFn d = fn(nd, nb, dt);
                FinFn c = fn(nc, na, ct);
                Pullback dc = pullback(c, f);
                auto left = slice_homs(then(d, f), c);
                auto right = slice_homs(d, dc.p2);
                REQUIRE(left.size() == right.size());
                for (const FinFn& h : left) {
                  FinFn k = FinFn::from_labels(d.dom(), dc.object, [&](const Label& x) {
                    const std::size_t i = d.dom().index_of(x);
                    return Label::pair(c.dom()[h(i)], f.dom()[d(i)]);
                  });
                  CHECK(then(k, dc.p2) == d);
                  CHECK(then(k, dc.p1) == h);
                }
              }
      }
}

TEST_CASE("delta is left adjoint to pi with mutually inverse transposes") {
  std::size_t instances = 0;
  for (std::size_t na = 1; na <= 2; ++na)
    for (std::size_t nb = 0; nb <= 3; ++nb)
      for (const auto& ft : tables(nb, na)) {
        FinFn f = fn(nb, na, ft);
        for (std::size_t nz = 0; nz <= 3; ++nz)
          for (const auto& gt : tables(nz, nb)) {
            FinFn g = fn(nz, nb, gt);
            DependentProduct pi = pi_finset(f, g);
            for (std::size_t nd = 0; nd <= 2; ++nd)
              for (const auto& dt : tables(nd, na)) {
                FinFn d = fn(nd, na, dt);
                Pullback dd = pullback(d, f);
                auto left = slice_homs(dd.p2, g);
                auto right = slice_homs(d, pi.proj);
                REQUIRE(left.size() == right.size());
                for (const FinFn& h : left) {
                  FinFn k = pi_transpose(f, g, d, h);
                  CHECK(then(k, pi.proj) == d);
                  CHECK(pi_untranspose(f, g, d, k) == h);
                }
                for (const FinFn& k : right) CHECK(pi_transpose(f, g, d, pi_untranspose(f, g, d, k)) == k);
                ++instances;
              }
          }
      }
  CHECK(instances > 1000);
}

TEST_CASE("all_functions agrees with the odometer") {
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t m = 0; m <= 3; ++m) {
      auto fs = all_functions(FinSet::range(n), FinSet::range(m));
      auto ts = tables(n, m);
      REQUIRE(fs.size() == ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i) CHECK(fs[i].table() == ts[i]);
    }
}

TEST_CASE("budget fails fast") {
  ScopedBudget cap(10);
  CHECK_THROWS_AS(all_functions(FinSet::range(3), FinSet::range(3)), BudgetExceeded);
}

TEST_CASE("fincat validation") {
  CHECK(FinCat::terminal().validate().ok());
  CHECK(FinCat::walking_arrow().validate().ok());
  CHECK(FinCat::parallel_pair().validate().ok());
  CHECK(FinCat::discrete(FinSet::range(3)).validate().ok());

  // Z/3 as a one-object category.
  std::vector<std::vector<std::size_t>> mul{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  FinCat z3 = FinCat::monoid(FinSet::range(3), mul, 0);
  CHECK(z3.validate().ok());
  CHECK(z3.opposite().validate().ok());

  SUBCASE("a broken associativity entry is witnessed") {
    auto bad = mul;
    bad[1][1] = 1;  // 1∘1 = 1, while 1∘(1∘2) = 1∘0 = 1 but (1∘1)∘2 = 1∘2 = 0
    Verdict v = FinCat::monoid(FinSet::range(3), bad, 0).validate();
    REQUIRE_FALSE(v.ok());
    bool assoc = false;
    for (const Violation& x : v.violations()) assoc = assoc || x.law == "associativity";
    CHECK(assoc);
  }
  SUBCASE("a missing composite is reported") {
    FinCat w = FinCat::walking_arrow();
    auto table = w.compose_table();
    table.pop_back();
    Verdict v = FinCat::make(w.objects(), w.morphisms(), w.src(), w.tgt(), w.id(), table).validate();
    CHECK_FALSE(v.ok());
  }
}

}  // TEST_SUITE
