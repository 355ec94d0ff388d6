#pragma once

/// @file poly.hpp
/// Polynomials over FinSet and the morphisms between them.
///
/// A polynomial is a set of positions with a direction set at each. Products
/// p ◁ q and p ⊗ q are kept symbolic until their positions are enumerated, so a morphism
/// into c ◁ c ◁ c can be stored and compared without building its codomain.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "polycalc/finset.hpp"

namespace polycalc {

namespace detail {
struct PolyNode;
}

class Poly {
 public:
  /// The zero polynomial.
  Poly();
  static Poly make(FinSet positions, std::vector<FinSet> dirs);
  /// Positions 0..n-1, position i having directions 0..arities[i]-1.
  static Poly from_arities(const std::vector<std::size_t>& arities);
  /// Sum notation such as "y^2 + 2y + 1"; positions and directions are numbered.
  static Poly parse(const std::string& text);
  /// y: one position [] with one direction [].
  static Poly y();
  /// A y^B: positions A, each with directions B.
  static Poly monomial(const FinSet& coeffs, const FinSet& exponent);
  /// Symbolic p ◁ q. Positions are [I, [f(d) for d in p[I]]], directions [d, e].
  static Poly composite(Poly p, Poly q);
  /// Symbolic p ⊗ q. Positions are [I, J], directions [d, e].
  static Poly tensor_of(Poly p, Poly q);

  bool is_composite() const;
  bool is_tensor() const;
  const Poly& left() const;
  const Poly& right() const;

  /// Enumerates positions (budgeted for composites; cached).
  const FinSet& positions() const;
  /// Directions at the i-th enumerated position.
  const FinSet& directions(std::size_t i) const;
  /// Directions at a position label; never enumerates positions.
  FinSet directions(const Label& pos) const;
  /// |p[pos]| and the index of dir in p[pos], without building composite direction sets.
  std::size_t direction_count(const Label& pos) const;
  std::size_t direction_index(const Label& pos, const Label& dir) const;
  bool has_position(const Label& pos) const;
  std::size_t index_of(const Label& pos) const;
  /// Saturating position count; enumerates only left factors of composites.
  std::uint64_t position_count() const;
  /// Same data as an explicit (non-symbolic) polynomial.
  Poly materialized() const;
  std::vector<std::size_t> arities() const;
  /// Sum notation of the arity multiset, e.g. "y^2 + 2y + 1".
  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  friend struct detail::PolyNode;
  explicit Poly(std::shared_ptr<const detail::PolyNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::PolyNode> node_;
};

using PosFn = std::function<Label(const Label& pos)>;
/// Backward direction map: (domain position, codomain direction) ↦ domain direction.
using DirFn = std::function<Label(const Label& pos, const Label& codDir)>;

/// A morphism φ: p → q. For each position I of p it stores φ₁(I) as a label
/// of q and φ♯_I as a table from q[φ₁ I] (canonical order) to p[I] indices.
class PolyMor {
 public:
  PolyMor() = default;
  /// Validates membership of every image position and table sizes.
  PolyMor(Poly dom, Poly cod, std::vector<Label> on_pos, std::vector<std::vector<std::size_t>> sharp);
  static PolyMor identity(const Poly& p);
  /// Tabulates label-level maps over every position of `dom`.
  static PolyMor from_functions(Poly dom, Poly cod, const PosFn& pos, const DirFn& dir);

  const Poly& dom() const { return dom_; }
  const Poly& cod() const { return cod_; }
  const Label& on_position(std::size_t i) const { return pos_[i]; }
  Label on_position(const Label& pos) const;
  const std::vector<std::size_t>& sharp(std::size_t i) const { return sharp_[i]; }
  Label on_direction(const Label& pos, const Label& codDir) const;
  /// q[φ₁ I] for the i-th domain position.
  FinSet cod_directions(std::size_t i) const { return cod_.directions(pos_[i]); }

  bool is_cartesian() const;
  bool is_vertical() const;
  bool is_iso() const;

  friend bool operator==(const PolyMor& a, const PolyMor& b);

 private:
  Poly dom_, cod_;
  std::vector<Label> pos_;
  std::vector<std::vector<std::size_t>> sharp_;
};

/// A morphism given by label-level functions; evaluated only where needed.
/// Structure maps (unitors, associators, ◁ of morphisms) are of this kind.
struct LazyMor {
  Poly dom, cod;
  PosFn pos;
  DirFn dir;

  static LazyMor of(const PolyMor& m);
  PolyMor materialize() const { return PolyMor::from_functions(dom, cod, pos, dir); }
};

/// second ∘ first, evaluating `second` only on the image of `first`.
PolyMor then(const PolyMor& first, const LazyMor& second);
inline PolyMor then(const PolyMor& first, const PolyMor& second) { return then(first, LazyMor::of(second)); }
/// ψ ∘ φ for φ: p → q, ψ: q → r.
inline PolyMor mor_compose(const PolyMor& phi, const PolyMor& psi) { return then(phi, psi); }
LazyMor then(const LazyMor& first, const LazyMor& second);

/// First position (as "pos: reason") where two parallel morphisms differ, or "".
std::string first_difference(const PolyMor& a, const PolyMor& b);

}  // namespace polycalc
