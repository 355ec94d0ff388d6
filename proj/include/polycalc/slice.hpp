#pragma once

/// @file slice.hpp
/// Pullback, dependent product and the distributivity pullback in FinSet.

#include <vector>

#include "polycalc/finset.hpp"

namespace polycalc {

/// Canonical pullback of f: A → C and g: B → C: pairs [a,b] with f a = g b.
struct Pullback {
  FinSet object;
  FinFn p1;  ///< to A
  FinFn p2;  ///< to B
};
Pullback pullback(const FinFn& f, const FinFn& g);

/// Π_f Z over A for f: B → A and g: Z → B. The element over a is
/// `[a, [z_b for b in f⁻¹(a)]]`, a section of g over the fiber.
/// An empty fiber contributes exactly one (empty) section.
struct DependentProduct {
  FinSet object;
  FinFn proj;  ///< Π_f Z → A
};
DependentProduct pi_finset(const FinFn& f, const FinFn& g);

/// The distributivity pullback around (f, g): Π_f Z, the pullback
/// Δ_f Π_f Z = Π_f Z ×_A B (labels [π,b]), and the counit Δ_f Π_f Z → Z.
struct DistributivityPullback {
  DependentProduct pi;
  Pullback delta;
  FinFn counit;
};
DistributivityPullback distributivity_pullback(const FinFn& f, const FinFn& g);

/// Maps h: dom x → dom y with y ∘ h = x, in canonical order. Budgeted.
std::vector<FinFn> slice_homs(const FinFn& x, const FinFn& y);

/// Transpose of h: Δ_f D → Z over B to D → Π_f Z over A, where D is
/// given by d: D → A and Δ_f D = pullback(d, f).
FinFn pi_transpose(const FinFn& f, const FinFn& g, const FinFn& d, const FinFn& h);
/// Inverse of pi_transpose: k: D → Π_f Z over A to Δ_f D → Z over B.
FinFn pi_untranspose(const FinFn& f, const FinFn& g, const FinFn& d, const FinFn& k);

}  // namespace polycalc
