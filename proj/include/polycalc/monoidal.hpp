#pragma once

/// @file monoidal.hpp
/// The composition (◁) and parallel (⊗) products with their structure maps.
///
/// Structure maps are LazyMors: materializing α on (c◁c)◁c is hopeless, but
/// evaluating it on the image of a comultiplication is cheap.

#include "polycalc/poly.hpp"

namespace polycalc {

/// p ◁ q (symbolic; positions enumerate on demand).
inline Poly compose_tri(const Poly& p, const Poly& q) { return Poly::composite(p, q); }
/// p ⊗ q (symbolic): positions [I,J], directions [d,e].
Poly tensor(const Poly& p, const Poly& q);

LazyMor lazy_identity(const Poly& p);
/// φ ◁ ψ: p ◁ q → p' ◁ q'.
LazyMor tri(const LazyMor& phi, const LazyMor& psi);
inline LazyMor tri(const PolyMor& phi, const PolyMor& psi) { return tri(LazyMor::of(phi), LazyMor::of(psi)); }
/// φ ⊗ ψ.
LazyMor tensor(const LazyMor& phi, const LazyMor& psi);
inline LazyMor tensor(const PolyMor& phi, const PolyMor& psi) { return tensor(LazyMor::of(phi), LazyMor::of(psi)); }

// ◁ structure: y ◁ p ≅ p, p ◁ y ≅ p, (p ◁ q) ◁ r ≅ p ◁ (q ◁ r).
LazyMor tri_left_unitor(const Poly& p);
LazyMor tri_left_unitor_inv(const Poly& p);
LazyMor tri_right_unitor(const Poly& p);
LazyMor tri_right_unitor_inv(const Poly& p);
LazyMor tri_associator(const Poly& p, const Poly& q, const Poly& r);
LazyMor tri_associator_inv(const Poly& p, const Poly& q, const Poly& r);

// ⊗ structure.
LazyMor tensor_left_unitor(const Poly& p);
LazyMor tensor_left_unitor_inv(const Poly& p);
LazyMor tensor_right_unitor(const Poly& p);
LazyMor tensor_right_unitor_inv(const Poly& p);
LazyMor tensor_associator(const Poly& p, const Poly& q, const Poly& r);
LazyMor tensor_associator_inv(const Poly& p, const Poly& q, const Poly& r);
/// σ: p ⊗ q → q ⊗ p.
LazyMor braiding(const Poly& p, const Poly& q);

}  // namespace polycalc
