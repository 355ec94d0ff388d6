#pragma once

/// @file psh_poly.hpp
/// Polynomials over a finite presheaf base: every map P_* → P of presheaves
/// is exponentiable, so a polynomial is just a PshMor. Composition goes
/// through presheaf_pi. Internal categories and the dictionary with
/// ◁-comonoids are provided as validation and translation operations.

#include <optional>
#include <utility>

#include "polycalc/presheaf.hpp"

namespace polycalc::psh {

struct Polynomial {
  PshMor proj;  ///< P_* → P
  const Presheaf& total() const { return proj.dom(); }
  const Presheaf& positions() const { return proj.cod(); }
};

/// y: the identity on the terminal presheaf.
Polynomial linear(const FinCatPtr& base);
/// A y: the identity on A.
Polynomial monomial(const Presheaf& a);

/// p ◁ q as the top row of the composition diagram: positions Π_p(Q × P_*),
/// total space (Π ×_P P_*) ×_Q Q_* with labels [[π, y], e].
struct Composite {
  Polynomial poly;
  Product qp;              ///< Q × P_*, labels [q, y]
  DependentProduct pi;     ///< Π_p(Q × P_*)
  PshMor to_q;             ///< Π ×_P P_* → Q
  Pullback total;          ///< (Π ×_P P_*) ×_Q Q_*
};
Composite compose(const Polynomial& p, const Polynomial& q);

/// p ⊗ q: P_* × Q_* → P × Q.
Polynomial tensor(const Polynomial& p, const Polynomial& q);

/// A × walking arrow; an arrow X → Y of presheaves on A is a presheaf on it.
FinCatPtr arrow_base(const FinCat& a);
/// X at [x, "b"], Y at [x, "a"], and the arrow as the action of [id_x, f].
Presheaf arrow_presheaf(const PshMor& m, const FinCatPtr& arrow);
/// Isomorphism of polynomials: an iso on total spaces and on positions commuting with the projections.
std::optional<std::pair<PshMor, PshMor>> find_poly_iso(const Polynomial& p, const Polynomial& q);

/// φ: p → q with φ1: P → Q and φ♯: P ×_Q Q_* → P_* over P.
struct PolyMorphism {
  Polynomial dom, cod;
  PshMor on_pos;
  PshMor sharp;
};
Verdict validate(const PolyMorphism& m);

/// Category internal to presheaves. Composable pairs are pullback(tgt, src), labelled [f, g] (f, then g).
struct InternalCategory {
  Presheaf ob, mor;
  PshMor src, tgt, id;
  PshMor comp;
};
/// Naturality of the structure maps and the category equations at each object of the base.
Verdict validate(const InternalCategory& c);
/// The ordinary category at one object of the base.
FinCat component(const InternalCategory& c, std::size_t obj);

/// ◁-comonoid on c = src, in the form of the dictionary: ε♯ = i, δ1 picks out t as a
/// section of Π_c(C × C_*), δ♯ = k through the composite's total space.
struct Comonoid {
  Polynomial carrier;
  PolyMorphism counit;  ///< c → y
  PolyMorphism comult;  ///< c → c ◁ c
  Composite square;     ///< c ◁ c
};
Comonoid internal_to_comonoid(const InternalCategory& c);
/// Reads t off δ1 and k off δ♯. Throws DomainError when δ1 moves positions.
InternalCategory comonoid_to_internal(const Comonoid& c);

}  // namespace polycalc::psh
