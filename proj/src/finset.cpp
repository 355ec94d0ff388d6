#include "polycalc/finset.hpp"

#include <algorithm>
#include <string>

#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"

namespace polycalc {
namespace {

void require_distinct(const std::vector<Label>& sorted) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1] == sorted[i]) throw DomainError("duplicate set element " + sorted[i].to_string());
  }
}

}  // namespace

FinSet::FinSet() {
  static const auto empty = std::make_shared<const std::vector<Label>>();
  elems_ = empty;
}

FinSet FinSet::of(std::vector<Label> elems) {
  std::sort(elems.begin(), elems.end());
  require_distinct(elems);
  return FinSet(std::make_shared<const std::vector<Label>>(std::move(elems)));
}

FinSet FinSet::from_sorted(std::vector<Label> elems) {
  for (std::size_t i = 1; i < elems.size(); ++i) {
    if (!(elems[i - 1] < elems[i])) return of(std::move(elems));
  }
  return FinSet(std::make_shared<const std::vector<Label>>(std::move(elems)));
}

FinSet FinSet::range(std::size_t n) {
  std::vector<Label> e;
  e.reserve(n);
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<std::int64_t>(i));
  return FinSet(std::make_shared<const std::vector<Label>>(std::move(e)));
}

FinSet FinSet::unit() {
  static const FinSet u = of({Label::unit()});
  return u;
}

std::optional<std::size_t> FinSet::find(const Label& x) const {
  auto it = std::lower_bound(elems_->begin(), elems_->end(), x);
  if (it == elems_->end() || !(*it == x)) return std::nullopt;
  return static_cast<std::size_t>(it - elems_->begin());
}

std::size_t FinSet::index_of(const Label& x, const char* what) const {
  if (auto i = find(x)) return *i;
  throw DomainError(std::string(what) + " " + x.to_string() + " not found");
}

bool operator==(const FinSet& a, const FinSet& b) {
  return a.elems_ == b.elems_ || *a.elems_ == *b.elems_;
}

FinFn::FinFn(FinSet dom, FinSet cod, std::vector<std::size_t> map)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
  if (map_.size() != dom_.size()) throw DomainError("function table size does not match its domain");
  for (std::size_t v : map_) {
    if (v >= cod_.size()) throw DomainError("function value outside its codomain");
  }
}

FinFn FinFn::from_labels(FinSet dom, FinSet cod, const std::function<Label(const Label&)>& f) {
  std::vector<std::size_t> m;
  m.reserve(dom.size());
  for (const Label& x : dom) m.push_back(cod.index_of(f(x), "function value"));
  return FinFn(std::move(dom), std::move(cod), std::move(m));
}

FinFn FinFn::identity(const FinSet& s) {
  std::vector<std::size_t> m(s.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
  return FinFn(s, s, std::move(m));
}

FinFn FinFn::constant(const FinSet& dom, const FinSet& cod, std::size_t target) {
  return FinFn(dom, cod, std::vector<std::size_t>(dom.size(), target));
}

const Label& FinFn::operator()(const Label& x) const { return cod_[map_[dom_.index_of(x, "argument")]]; }

bool FinFn::injective() const {
  std::vector<char> seen(cod_.size(), 0);
  for (std::size_t v : map_) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool FinFn::surjective() const {
  std::vector<char> seen(cod_.size(), 0);
  for (std::size_t v : map_) seen[v] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

FinFn FinFn::inverse() const {
  if (!bijective()) throw DomainError("function is not a bijection");
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return FinFn(cod_, dom_, std::move(inv));
}

std::vector<std::size_t> FinFn::fiber(std::size_t j) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] == j) out.push_back(i);
  }
  return out;
}

FinFn then(const FinFn& f, const FinFn& g) {
  if (!(f.cod() == g.dom())) throw DomainError("functions are not composable");
  std::vector<std::size_t> m(f.dom().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g(f(i));
  return FinFn(f.dom(), g.cod(), std::move(m));
}

std::vector<FinFn> all_functions(const FinSet& dom, const FinSet& cod) {
  const std::uint64_t count = sat_pow(cod.size(), dom.size());
  Budget::charge(count, "function enumeration");
  std::vector<FinFn> out;
  out.reserve(count);
  std::vector<std::size_t> t(dom.size(), 0);
  for (std::uint64_t n = 0; n < count; ++n) {
    out.emplace_back(dom, cod, t);
    for (std::size_t k = t.size(); k-- > 0;) {
      if (++t[k] < cod.size()) break;
      t[k] = 0;
    }
  }
  return out;
}

FinSet product(const FinSet& a, const FinSet& b) {
  std::vector<Label> e;
  e.reserve(a.size() * b.size());
  for (const Label& x : a) {
    for (const Label& y : b) e.push_back(Label::pair(x, y));
  }
  return FinSet::from_sorted(std::move(e));
}

}  // namespace polycalc
