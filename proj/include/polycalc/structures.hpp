#pragma once

/// @file structures.hpp
/// Duoidal interchange, the internal hom [p,q] for ⊗, the right coclosure
/// ⟨p|q⟩ and the frown p ⌢_f q for ◁, and maps derived from them.

#include "polycalc/finset.hpp"
#include "polycalc/poly.hpp"

namespace polycalc {

/// (p1◁p2) ⊗ (q1◁q2) → (p1⊗q1) ◁ (p2⊗q2): ((I,J),(K,L)) ↦ ((I,K), (i,k) ↦ (J i, L k)).
/// Cartesian: ((i,k),(a,b)) ↦ ((i,a),(k,b)).
LazyMor interchange(const Poly& p1, const Poly& p2, const Poly& q1, const Poly& q2);

/// [p,q]: positions are morphism labels p → q; directions at φ are [I, j] with j ∈ q[φ₁ I].
Poly closure(const Poly& p, const Poly& q);
/// p ⊗ [p,q] → q.
LazyMor closure_eval(const Poly& p, const Poly& q);
/// q → [p, p ⊗ q].
PolyMor closure_pair(const Poly& p, const Poly& q);
/// φ: p ⊗ q → r  ↦  p → [q, r].
PolyMor closure_transpose(const PolyMor& phi, const Poly& p, const Poly& q);
/// ψ: p → [q, r]  ↦  p ⊗ q → r.
PolyMor closure_untranspose(const PolyMor& psi, const Poly& q, const Poly& r);
/// [p, χ]: [p,q] → [p,q'] (post-composition).
PolyMor closure_map(const Poly& p, const PolyMor& chi);
/// [γ, q]: [p',q] → [p,q] for γ: p → p' (pre-composition).
PolyMor closure_comap(const PolyMor& gamma, const Poly& q);

/// ⟨p|q⟩: positions of p; directions at I are [J, h] with h: q[J] → p[I].
Poly right_coclosure(const Poly& p, const Poly& q);
/// ψ: p → r ◁ q  ↦  ⟨p|q⟩ → r.
PolyMor rc_transpose(const PolyMor& psi, const Poly& q);
/// φ: ⟨p|q⟩ → r  ↦  p → r ◁ q.
PolyMor rc_untranspose(const PolyMor& phi, const Poly& p, const Poly& q);

/// p ⌢_f q for f: P → Q: positions [I, e] with e ∈ q[f I], directions p[I].
Poly frown(const Poly& p, const FinFn& f, const Poly& q);
/// ψ: p → q ◁ r  ↦  (f, p ⌢_f q → r).
struct FrownTranspose {
  FinFn f;
  PolyMor map;
};
FrownTranspose frown_transpose(const PolyMor& psi);
/// Inverse of frown_transpose.
PolyMor frown_untranspose(const Poly& p, const FinFn& f, const Poly& q, const PolyMor& phi);

/// [p1,q1] ◁ [p2,q2] → [p1◁p2, q1◁q2], the transpose of
/// (ev ◁ ev) ∘ interchange ∘ braiding.
PolyMor closure_tri_lax(const Poly& p1, const Poly& q1, const Poly& p2, const Poly& q2);
/// ⟨p1⊗p2 | q1⊗q2⟩ → ⟨p1|q1⟩ ⊗ ⟨p2|q2⟩, the transpose of
/// interchange ∘ (η1 ⊗ η2) where ηi transposes the identity of ⟨pi|qi⟩.
PolyMor coclosure_tensor_map(const Poly& p1, const Poly& q1, const Poly& p2, const Poly& q2);
/// (p1⊗p2) ⌢_{f1×f2} (q1⊗q2) ≅ (p1 ⌢_{f1} q1) ⊗ (p2 ⌢_{f2} q2).
PolyMor frown_tensor_iso(const Poly& p1, const FinFn& f1, const Poly& q1, const Poly& p2, const FinFn& f2,
                         const Poly& q2);
/// f1 × f2 on position sets of p1 ⊗ p2 → q1 ⊗ q2.
FinFn position_product(const Poly& p1, const FinFn& f1, const Poly& p2, const FinFn& f2, const Poly& q1,
                       const Poly& q2);

}  // namespace polycalc
