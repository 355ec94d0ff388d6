#pragma once

/// @file fincat.hpp
/// Finite categories given by explicit composition tables.

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "polycalc/finset.hpp"
#include "polycalc/verdict.hpp"

namespace polycalc {

class FinCat {
 public:
  /// `compose` lists triples [g, f, g∘f] for every pair with tgt f = src g.
  /// The table is stored without validation; call validate().
  static FinCat make(FinSet objects, FinSet morphisms, FinFn src, FinFn tgt, FinFn id,
                     const std::vector<std::array<Label, 3>>& compose);

  static FinCat terminal();
  /// a --f--> b with identities id_a, id_b.
  static FinCat walking_arrow();
  /// a ⇉ b with parallel arrows s, t.
  static FinCat parallel_pair();
  static FinCat discrete(const FinSet& objects);
  /// One object "*" whose endomorphisms are the elements of `elems`,
  /// multiplied by `mul[x][y] = x∘y` (indices into elems; elems[unit] is the identity).
  static FinCat monoid(const FinSet& elems, const std::vector<std::vector<std::size_t>>& mul,
                       std::size_t unit);

  const FinSet& objects() const { return objects_; }
  const FinSet& morphisms() const { return morphisms_; }
  const FinFn& src() const { return src_; }
  const FinFn& tgt() const { return tgt_; }
  const FinFn& id() const { return id_; }
  /// g∘f as a morphism index, if tabulated.
  std::optional<std::size_t> compose(std::size_t g, std::size_t f) const;
  /// g∘f; throws DomainError when not composable.
  std::size_t comp(std::size_t g, std::size_t f) const;
  /// Triples [g, f, g∘f] in canonical order.
  std::vector<std::array<Label, 3>> compose_table() const;

  /// Morphisms with the given source (resp. target) object, in canonical order.
  std::vector<std::size_t> out_of(std::size_t obj) const;
  std::vector<std::size_t> into(std::size_t obj) const;
  std::vector<std::size_t> hom(std::size_t from, std::size_t to) const;

  /// Checks identity typing, table domain, composite typing, unit laws and associativity.
  Verdict validate() const;
  FinCat opposite() const;
  /// Objects [a, b] and morphisms [m, n], composed componentwise.
  static FinCat product(const FinCat& a, const FinCat& b);

  friend bool operator==(const FinCat& a, const FinCat& b);

 private:
  FinSet objects_, morphisms_;
  FinFn src_, tgt_, id_;
  std::vector<std::optional<std::size_t>> table_;  // [g * |Mor| + f]
};

using FinCatPtr = std::shared_ptr<const FinCat>;

}  // namespace polycalc
