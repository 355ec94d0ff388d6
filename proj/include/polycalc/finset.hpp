#pragma once

/// @file finset.hpp
/// Finite sets of labels in canonical order, and functions between them.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "polycalc/label.hpp"

namespace polycalc {

/// Sorted, duplicate-free list of labels. Element order is the label order,
/// so index tables over a FinSet are canonical.
class FinSet {
 public:
  FinSet();
  /// Sorts; throws DomainError on duplicates.
  static FinSet of(std::vector<Label> elems);
  /// Caller promises the elements are already strictly increasing
  /// (checked; falls back to sorting when they are not).
  static FinSet from_sorted(std::vector<Label> elems);
  /// {0, 1, ..., n-1}.
  static FinSet range(std::size_t n);
  /// {[]}.
  static FinSet unit();

  std::size_t size() const { return elems_->size(); }
  bool empty() const { return elems_->empty(); }
  const Label& operator[](std::size_t i) const { return (*elems_)[i]; }
  auto begin() const { return elems_->begin(); }
  auto end() const { return elems_->end(); }
  std::span<const Label> elements() const { return *elems_; }

  std::optional<std::size_t> find(const Label& x) const;
  /// Index of `x`; throws DomainError naming `what` when absent.
  std::size_t index_of(const Label& x, const char* what = "element") const;
  bool contains(const Label& x) const { return find(x).has_value(); }

  friend bool operator==(const FinSet& a, const FinSet& b);

 private:
  explicit FinSet(std::shared_ptr<const std::vector<Label>> e) : elems_(std::move(e)) {}
  std::shared_ptr<const std::vector<Label>> elems_;
};

/// Function between finite sets, stored as an index table.
class FinFn {
 public:
  FinFn() = default;
  /// `map[i]` is the index in `cod` of the image of `dom[i]`.
  FinFn(FinSet dom, FinSet cod, std::vector<std::size_t> map);
  static FinFn from_labels(FinSet dom, FinSet cod, const std::function<Label(const Label&)>& f);
  static FinFn identity(const FinSet& s);
  static FinFn constant(const FinSet& dom, const FinSet& cod, std::size_t target);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  std::size_t operator()(std::size_t i) const { return map_[i]; }
  const Label& operator()(const Label& x) const;
  const std::vector<std::size_t>& table() const { return map_; }

  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }
  /// Inverse of a bijection; throws DomainError otherwise.
  FinFn inverse() const;
  /// Indices of the fiber over cod element `j`, in dom order.
  std::vector<std::size_t> fiber(std::size_t j) const;

  friend bool operator==(const FinFn& a, const FinFn& b) = default;

 private:
  FinSet dom_, cod_;
  std::vector<std::size_t> map_;
};

/// g ∘ f; requires cod f == dom g.
FinFn then(const FinFn& f, const FinFn& g);

/// All functions dom → cod in canonical (lexicographic table) order. Budgeted.
std::vector<FinFn> all_functions(const FinSet& dom, const FinSet& cod);

/// Cartesian product with pair labels [a,b].
FinSet product(const FinSet& a, const FinSet& b);

}  // namespace polycalc
