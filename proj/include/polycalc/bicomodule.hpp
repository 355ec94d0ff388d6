#pragma once

/// @file bicomodule.hpp
/// Comodules and bicomodules over FinSet comonoids, typed polynomials as
/// bicomodules between discrete comonoids, bicomodule composition and the
/// induced migration of coalgebras.

#include <optional>

#include "polycalc/coalgebra.hpp"
#include "polycalc/comonoid.hpp"
#include "polycalc/poly.hpp"
#include "polycalc/verdict.hpp"

namespace polycalc {

enum class Side { Left, Right };

/// Left: κ: m → c ◁ m with (ε◁id)κ = λ⁻¹ and α(δ◁id)κ = (id◁κ)κ.
/// Right: χ: m → m ◁ d with (id◁ε)χ = ρ⁻¹ and α(χ◁id)χ = (id◁δ)χ.
/// Throws DomainError when the coaction has the wrong shape.
Verdict comodule_check(const Comonoid& c, const PolyMor& coaction, Side side);

/// A (c, d)-bicomodule: left coaction from c, right coaction from d.
struct Bicomodule {
  Comonoid c, d;
  Poly m;
  PolyMor left;   ///< κ: m → c ◁ m
  PolyMor right;  ///< χ: m → m ◁ d
};

/// Both comodule laws, the compatibility α(κ◁id)χ = (id◁χ)κ, and, once the
/// comodule laws hold, the induced coalgebras on M and M_*.
Verdict bicomodule_check(const Bicomodule& b);

/// (c, δ, δ).
Bicomodule identity_bicomodule(const Comonoid& c);

/// The c-coalgebra on positions M induced by κ: κ1 I = x, I acts by f to the
/// position chosen over f.
Coalgebra left_coalgebra(const Bicomodule& b);
/// The d-coalgebra on M_* (labels [I, e]) induced by χ.
Coalgebra right_coalgebra(const Bicomodule& b);
/// The fiber m[I] ⊆ M_* as a d-coalgebra (labels e). χ fixes positions, so it is closed.
Coalgebra fiber_coalgebra(const Bicomodule& b, const Label& pos);

/// γ: m → m' is a (φ, ψ)-homomorphism: (φ◁γ)κ = κ'γ and (γ◁ψ)χ = χ'γ.
Verdict bicomodule_hom_check(const PolyMor& gamma, const Bicomodule& b, const Bicomodule& b2, const PolyMor& phi,
                             const PolyMor& psi);

/// Polynomial m with types tgt: M → C on positions and src: M_* → D on
/// directions (M_* labelled [I, e]), a polynomial from D to C.
struct TypedPoly {
  Poly m;
  FinFn src;  ///< M_* → D
  FinFn tgt;  ///< M → C
};
/// Throws DomainError unless src and tgt are defined on M_* and M.
void typed_check(const TypedPoly& t);
/// The identity on C: Cy with both types the identity.
TypedPoly typed_identity(const FinSet& C);
/// κ: I ↦ [tgt I, [I]], χ: I ↦ [I, [src(I, e) for e]], both identity on directions,
/// between the discrete comonoids on tgt.cod() and src.cod().
Bicomodule bicomod_from_typed(const TypedPoly& t);
/// Reads the types off the coactions. Throws DomainError unless b is a valid
/// bicomodule between discrete comonoids.
TypedPoly typed_from_bicomod(const Bicomodule& b);
/// γ: m → m' commuting with the types.
bool is_typed_hom(const PolyMor& gamma, const TypedPoly& t, const TypedPoly& t2);

/// A typed isomorphism t.m → t2.m (types preserved exactly), matching positions
/// and directions by their types, if one exists.
std::optional<PolyMor> typed_iso(const TypedPoly& t, const TypedPoly& t2);

/// p from D to C after q from E to D: positions [I, [J_d for d in p[I]]] with
/// tgt J_d = src(I, d), directions [d, e], typed by tgt_p and src_q.
/// It is the sub-polynomial of p ◁ q with the same labels. Budgeted.
TypedPoly typed_compose(const TypedPoly& p, const TypedPoly& q);

/// m ◁_d m': the equalizer of α(χ◁id), id◁κ': m◁m' ⇉ m◁(d◁m') with the induced
/// (c, e)-coactions. Positions keep their m◁m' labels. With χ and κ' cartesian
/// the equalizer is a cartesian limit and always exists. Otherwise the call
/// throws DomainError, unless `allow_general` is set: then the equalizer is
/// formed anyway and its preservation by − ◁ e is checked afterwards.
Bicomodule bicomod_compose(const Bicomodule& m, const Bicomodule& n, bool allow_general = false);

/// m ◁_d S for a (c, d)-bicomodule m and a d-coalgebra S: elements
/// [I, [s_e for e in m[I]]] of P(m)(S) equalized by P(χ) and P(m)(κ'),
/// with the c-coalgebra structure induced by κ.
Coalgebra migrate(const Bicomodule& m, const Coalgebra& x);
/// The induced map migrate(m, x) → migrate(m, y) of a coalgebra map h: x → y.
FinFn migrate_hom(const Bicomodule& m, const Coalgebra& x, const Coalgebra& y, const FinFn& h);
/// The (y, d)-bicomodule y^R with one position, R a d-coalgebra; migrating
/// along it computes Hom(R, −).
Bicomodule bicomod_from_coalgebra(const Coalgebra& r);

}  // namespace polycalc
