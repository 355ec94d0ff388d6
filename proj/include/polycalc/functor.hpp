#pragma once

/// @file functor.hpp
/// The polynomial functor P(p)(X) = ⨿_I X^{p[I]} on finite sets.
/// Elements are labelled [I, [g(d) for d in p[I]]].

#include <functional>

#include "polycalc/finset.hpp"
#include "polycalc/poly.hpp"

namespace polycalc {

/// P(p)(X). Budgeted.
FinSet eval_functor(const Poly& p, const FinSet& x);
/// P(p)(h) for h: X → X'.
FinFn eval_functor_map(const Poly& p, const FinFn& h);
/// P(φ)_X: P(p)(X) → P(q)(X), (I, g) ↦ (φ₁ I, g ∘ φ♯_I).
FinFn eval_nat(const PolyMor& phi, const FinSet& x);

/// Elementwise versions; these never enumerate P(p)(X).
Label functor_apply(const LazyMor& phi, const Label& elem);
Label functor_apply(const PolyMor& phi, const Label& elem);
Label functor_map(const std::function<Label(const Label&)>& h, const Label& elem);

/// The canonical bijection P(p ◁ q)(X) → P(p)(P(q)(X)).
Label unfold_composite(const Poly& q, const Label& elem);
/// Its inverse.
Label fold_composite(const Label& elem);

/// τ: A × P(p)(B) → P(p)(A × B), (a, (I, g)) ↦ (I, d ↦ (a, g d)).
FinFn strength(const Poly& p, const FinSet& a, const FinSet& b);

/// A q: positions [a, J], directions q[J].
Poly scalar(const FinSet& a, const Poly& q);

}  // namespace polycalc
