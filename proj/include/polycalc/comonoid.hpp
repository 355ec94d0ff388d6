#pragma once

/// @file comonoid.hpp
/// ◁-comonoids over FinSet, their dictionary with finite categories, and
/// cofunctors as comonoid homomorphisms.
///
/// Dictionary: positions are objects, c[x] the morphisms out of x,
/// ε♯ the identities, δ₁ the targets and δ♯ composition:
/// δ₁(x) = [x, [tgt f for f in c[x]]] and δ♯_x([f, g]) = g ∘ f.

#include <string>

#include "polycalc/fincat.hpp"
#include "polycalc/poly.hpp"
#include "polycalc/verdict.hpp"

namespace polycalc {

struct Comonoid {
  Poly carrier;
  PolyMor counit;  ///< c → y
  PolyMor comult;  ///< c → c ◁ c
};

/// Left counit, right counit and coassociativity, each with the first
/// position where the two sides differ.
Verdict comonoid_check(const Comonoid& c);

/// Category with c[x] = morphisms out of x (direction labels are the morphism labels).
Comonoid cat_to_comonoid(const FinCat& cat);
/// Translated (t, i, k) of any candidate (ε, δ), unvalidated. A δ that moves
/// positions has no translation as a target map; that is reported as the
/// "position-fixing" law rather than thrown.
struct Translation {
  bool position_fixing = true;
  std::string witness;
  FinCat cat;  ///< meaningful only when position_fixing
  /// Morphism labels are the bare directions; otherwise they are [x, d].
  bool distinct = true;
};
Translation translate_comonoid(const Comonoid& c);
/// Internal-category equations of the translation: position fixing, then
/// FinCat::validate (identity typing, composite typing, units, associativity).
Verdict internal_category_check(const Translation& t);
/// Validates both sides; morphism labels are the directions when those are
/// globally distinct and [x, d] otherwise. Throws DomainError on a non-comonoid.
FinCat comonoid_to_cat(const Comonoid& c);

/// Comonoid homomorphism equations (ε' φ = ε, δ' φ = (φ◁φ) δ) and the cofunctor
/// equations (identity, target, composition) evaluated independently.
struct CofunctorReport {
  Verdict homomorphism;
  Verdict cofunctor;
  bool agree() const { return homomorphism.ok() == cofunctor.ok(); }
};
CofunctorReport cofunctor_check(const PolyMor& phi, const Comonoid& c, const Comonoid& d);

/// A y: positions A, one direction [] each, diagonal comultiplication.
Comonoid discrete_comonoid(const FinSet& a);
/// p_* with the indiscrete category on each fiber: objects [I,d], a unique
/// morphism [I,d] → [I,e] labelled e.
Comonoid pstar_comonoid(const Poly& p);
/// ⟨p|p⟩: objects P, morphisms I → J the functions p[J] → p[I], labelled [J, h].
/// Identity is [I, id]; composite of [J,h] then [K,g] is [K, h∘g].
Comonoid selfclosure_comonoid(const Poly& p);

}  // namespace polycalc
