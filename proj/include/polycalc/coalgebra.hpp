#pragma once

/// @file coalgebra.hpp
/// Coalgebras for the comonad P(c) of a ◁-comonoid c over FinSet, and their
/// equivalents: copresheaves on the category of c and discrete opfibrations.
///
/// A coalgebra κ: S → P(c)(S) is stored as κ1: S → C and the action
/// κ♯: S ×_C C_* → S, whose domain is labelled [s, [x, f]] with x = κ1 s.

#include <vector>

#include "polycalc/comonoid.hpp"
#include "polycalc/finset.hpp"
#include "polycalc/presheaf.hpp"
#include "polycalc/verdict.hpp"

namespace polycalc {

struct Coalgebra {
  Comonoid c;
  FinSet S;
  FinFn kappa1;       ///< S → C
  FinFn kappa_sharp;  ///< S ×_C C_* → S

  /// The element reached from s along f ∈ c[κ1 s].
  const Label& act(const Label& s, const Label& f) const;
  /// κ(s) = [κ1 s, [act(s, f) for f in c[κ1 s]]] as an element of P(c)(S).
  Label coaction(const Label& s) const;
};

/// S ×_C C_* for a given κ1, labels [s, [x, f]].
FinSet action_domain(const Comonoid& c, const FinFn& kappa1);
/// Tabulates the action; `act(s, f)` must land in S.
Coalgebra make_coalgebra(const Comonoid& c, const FinSet& S, const FinFn& kappa1,
                         const std::function<Label(const Label& s, const Label& f)>& act);

/// Counit P(ε)∘κ = id and comultiplication P(δ)∘κ = P(c)(κ)∘κ, elementwise
/// in P(c◁c)(S) ≅ P(c)(P(c)(S)). Ill-typed data is reported as "typing".
Verdict coalg_check(const Coalgebra& x);

/// h: S → S' with κ' ∘ h = P(c)(h) ∘ κ.
bool is_coalgebra_hom(const Coalgebra& a, const Coalgebra& b, const FinFn& h);
/// Every coalgebra map a → b, in canonical order. Budgeted.
std::vector<FinFn> coalgebra_homs(const Coalgebra& a, const Coalgebra& b);

/// The representable copresheaf at x: S = c[x], κ1 f = target of f,
/// f acting by g to the composite of f then g.
Coalgebra representable_coalgebra(const Comonoid& c, const Label& x);

/// A coalgebra as a discrete opfibration: its category of elements (objects S,
/// morphisms [s, f]) as a comonoid, with the cartesian cofunctor to c.
struct Opfibration {
  FinCat elements;
  Comonoid total;
  PolyMor proj;  ///< total.carrier → c.carrier; s ↦ κ1 s, f ↦ [s, f]
};
/// Throws DomainError on an invalid coalgebra.
Opfibration coalg_to_opfib(const Coalgebra& x);
/// S = positions of the total comonoid; the action is the target of the lifted
/// direction. Throws DomainError unless proj is a cartesian cofunctor into c.
Coalgebra opfib_to_coalg(const Opfibration& o, const Comonoid& c);

/// Copresheaves on the category of c are presheaves on its opposite (as built
/// by comonoid_to_cat). A copresheaf X gives S = {[x, e] : e ∈ X(x)}.
FinCatPtr copresheaf_base(const Comonoid& c);
Coalgebra copresheaf_to_coalg(const Comonoid& c, const psh::Presheaf& x);
/// X(x) = κ1⁻¹(x), keeping the labels of S. Throws DomainError on an invalid coalgebra.
psh::Presheaf coalg_to_copresheaf(const Coalgebra& x);

/// Pullback of coalgebra maps f: A → C and g: B → C, on the pullback of
/// carriers (labels [a, b]) with the componentwise action.
struct CoalgebraPullback {
  Coalgebra object;
  FinFn p1, p2;
};
CoalgebraPullback coalgebra_pullback(const Coalgebra& a, const Coalgebra& b, const Coalgebra& c, const FinFn& f,
                                     const FinFn& g);

}  // namespace polycalc
