#pragma once

/// @file presheaf.hpp
/// Presheaves on finite categories, natural transformations between them,
/// and the dependent product along a presheaf map.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "polycalc/fincat.hpp"
#include "polycalc/finset.hpp"
#include "polycalc/verdict.hpp"

namespace polycalc::psh {

/// Contravariant functor base^op → FinSet. `action(m)` runs at(tgt m) → at(src m).
class Presheaf {
 public:
  Presheaf() = default;
  Presheaf(FinCatPtr base, std::vector<FinSet> at, std::vector<FinFn> action);

  const FinCat& base() const { return *base_; }
  const FinCatPtr& base_ptr() const { return base_; }
  const FinSet& at(std::size_t obj) const { return at_[obj]; }
  const FinFn& action(std::size_t mor) const { return action_[mor]; }
  const std::vector<FinSet>& components() const { return at_; }
  std::size_t total_size() const;

  /// Typing of each action map, identities act trivially, action(g∘f) = action(f)∘action(g).
  Verdict validate() const;

  friend bool operator==(const Presheaf& a, const Presheaf& b);

 private:
  FinCatPtr base_;
  std::vector<FinSet> at_;
  std::vector<FinFn> action_;
};

/// Natural transformation, one component per object.
class PshMor {
 public:
  PshMor() = default;
  PshMor(Presheaf dom, Presheaf cod, std::vector<FinFn> comps);
  static PshMor identity(const Presheaf& x);

  const Presheaf& dom() const { return dom_; }
  const Presheaf& cod() const { return cod_; }
  const FinFn& at(std::size_t obj) const { return comps_[obj]; }
  bool is_iso() const;
  Verdict validate() const;

  friend bool operator==(const PshMor& a, const PshMor& b) = default;

 private:
  Presheaf dom_, cod_;
  std::vector<FinFn> comps_;
};

/// g ∘ f.
PshMor then(const PshMor& f, const PshMor& g);
PshMor inverse(const PshMor& f);

Presheaf terminal(const FinCatPtr& base);
Presheaf empty(const FinCatPtr& base);
/// y(a): at b the morphisms b → a; action by precomposition.
Presheaf representable(const FinCatPtr& base, std::size_t a);
/// The map y(a) → X classifying x ∈ X(a).
PshMor classify(const Presheaf& x, std::size_t a, std::size_t elem);
PshMor to_terminal(const Presheaf& x);

struct Product {
  Presheaf object;  ///< labels [x,y]
  PshMor p1, p2;
};
Product product(const Presheaf& x, const Presheaf& y);

struct Pullback {
  Presheaf object;  ///< labels [x,y]
  PshMor p1, p2;
};
Pullback pullback(const PshMor& f, const PshMor& g);

/// Natural transformations W → Z; when `over` is given as (u: W → Y, v: Z → Y)
/// only those γ with v ∘ γ = u. Canonical order; budgeted on search nodes.
/// `limit` stops after that many results (0 = all).
std::vector<PshMor> homs(const Presheaf& w, const Presheaf& z,
                         const std::optional<std::pair<PshMor, PshMor>>& over = std::nullopt,
                         std::size_t limit = 0, bool injective_only = false);
std::uint64_t count_homs(const Presheaf& w, const Presheaf& z,
                         const std::optional<std::pair<PshMor, PshMor>>& over = std::nullopt);

/// Some isomorphism X ≅ Y, if one exists.
std::optional<PshMor> find_iso(const Presheaf& x, const Presheaf& y);

/// Π_f Z for f: Y → X and g: Z → Y. The element at a is
/// `[x, γ]` with x ∈ X(a) and γ: Δ_x Y → Z over Y, where
/// Δ_x Y = y(a) ×_X Y and γ is tabulated object by object.
struct DependentProduct {
  Presheaf object;
  PshMor proj;     ///< Π_f Z → X
  PshMor f, g;     ///< the inputs
  /// Δ_f Π_f Z (labels [π, y]) and its counit to Z.
  Pullback delta;
  PshMor counit;
};
DependentProduct presheaf_pi(const PshMor& f, const PshMor& g);

/// Transpose of τ: W → Π_f Z to (σ = proj ∘ τ, γ: W ×_X Y → Z over Y).
struct PiTranspose {
  PshMor sigma;
  Pullback pulled;  ///< Δ_σ Y = W ×_X Y
  PshMor gamma;
};
PiTranspose pi_untranspose(const DependentProduct& pi, const PshMor& tau);
/// Inverse of pi_untranspose.
PshMor pi_transpose(const DependentProduct& pi, const PshMor& sigma, const PshMor& gamma);

}  // namespace polycalc::psh
