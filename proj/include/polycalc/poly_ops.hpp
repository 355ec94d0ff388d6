#pragma once

/// @file poly_ops.hpp
/// Morphism classification and factorization, hom-sets, isomorphism,
/// the total-space polynomial p_*, and limits of cartesian diagrams.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "polycalc/poly.hpp"

namespace polycalc {

struct Classification {
  bool cartesian = false;
  bool vertical = false;
  bool iso = false;
};
Classification classify(const PolyMor& phi);

/// φ = cart ∘ vert through Σ_I y^{q[φ₁ I]} (positions of p, directions of q).
struct VertCart {
  Poly middle;
  PolyMor vertical;
  PolyMor cartesian;
};
VertCart vert_cart_factorize(const PolyMor& phi);

/// p_*: positions [I, d] with d ∈ p[I], directions p[I]; and the cartesian p_* → p.
struct PStar {
  Poly poly;
  PolyMor proj;
};
PStar p_star(const Poly& p);

/// Π_I Σ_J |p[I]|^{|q[J]|}, saturating.
std::uint64_t hom_count(const Poly& p, const Poly& q);
/// All morphisms p → q in canonical order (the order of their labels). Budgeted.
std::vector<PolyMor> hom_enumerate(const Poly& p, const Poly& q);
/// Visits morphisms in canonical order until `visit` returns false. Budgeted.
void for_each_hom(const Poly& p, const Poly& q, const std::function<bool(const PolyMor&)>& visit);

/// [[φ₁ I for I in P], [[φ♯_I j for j in q[φ₁ I]] for I in P]].
Label mor_label(const PolyMor& phi);
PolyMor mor_from_label(const Poly& p, const Poly& q, const Label& label);

/// An isomorphism p ≅ q when the arity multisets agree.
std::optional<PolyMor> iso_check(const Poly& p, const Poly& q);

/// Finite connected diagram whose edges are cartesian morphisms.
struct Diagram {
  struct Edge {
    std::size_t src, tgt;
    PolyMor mor;
  };
  std::vector<Poly> nodes;
  std::vector<Edge> edges;
};

/// Limit of a cartesian diagram. Positions are tuples [x_0, ..., x_n] in the
/// limit of position sets; directions are the colimit of the fibers, labelled by
/// their least representative in node 0. When every cycle acts trivially on
/// fibers (`coherent`), this is node 0's fiber unchanged.
struct Limit {
  Poly object;
  std::vector<PolyMor> legs;
  bool coherent = true;
};
Limit cartesian_limit(const Diagram& d);

/// Equalizer of φ, ψ: p → q (any morphisms). Positions are those I with
/// φ₁ I = ψ₁ I, keeping p's labels; directions are p[I] modulo φ♯ j ~ ψ♯ j,
/// each class labelled by its least member.
struct Equalizer {
  Poly object;
  PolyMor incl;  ///< object → p
};
Equalizer equalizer(const PolyMor& phi, const PolyMor& psi);
Equalizer equalizer(const PolyMor& phi, const LazyMor& psi);

/// The unique v: r → s with m ∘ v = u, for m injective on positions and
/// surjective on directions. `preimage` inverts m on positions.
/// Throws DomainError when u does not factor.
PolyMor lift_through(const PolyMor& u, const LazyMor& m, const PosFn& preimage);

}  // namespace polycalc
