#include "polycalc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>

#include "polycalc/budget.hpp"
#include "polycalc/error.hpp"

namespace polycalc {
namespace detail {

enum class NodeKind { Explicit, Composite, Tensor };

struct PolyNode {
  NodeKind kind = NodeKind::Explicit;
  // Factors of a product; null for explicit nodes (a default Poly would recurse into the zero node).
  Poly a{std::shared_ptr<const PolyNode>()}, b{std::shared_ptr<const PolyNode>()};
  mutable std::once_flag once;
  mutable FinSet positions;
  mutable std::vector<FinSet> dirs;
};

}  // namespace detail

namespace {

std::shared_ptr<const detail::PolyNode> explicit_node(FinSet positions, std::vector<FinSet> dirs) {
  auto n = std::make_shared<detail::PolyNode>();
  n->positions = std::move(positions);
  n->dirs = std::move(dirs);
  return n;
}

}  // namespace

Poly::Poly() {
  static const auto zero = explicit_node(FinSet(), {});
  node_ = zero;
}

Poly Poly::make(FinSet positions, std::vector<FinSet> dirs) {
  if (positions.size() != dirs.size()) throw DomainError("polynomial needs one direction set per position");
  return Poly(explicit_node(std::move(positions), std::move(dirs)));
}

Poly Poly::from_arities(const std::vector<std::size_t>& arities) {
  std::vector<FinSet> dirs;
  dirs.reserve(arities.size());
  for (std::size_t k : arities) dirs.push_back(FinSet::range(k));
  return make(FinSet::range(arities.size()), std::move(dirs));
}

Poly Poly::parse(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw DomainError("empty polynomial expression");
  std::vector<std::size_t> arities;
  std::size_t i = 0;
  auto number = [&](std::size_t& out) {
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) return false;
    out = std::stoul(s.substr(start, i - start));
    return true;
  };
  while (i < s.size()) {
    std::size_t coeff = 1;
    const bool has_coeff = number(coeff);
    std::size_t exp = 0;
    if (i < s.size() && s[i] == 'y') {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!number(exp)) throw DomainError("expected exponent in '" + text + "'");
      }
    } else if (!has_coeff) {
      throw DomainError("cannot parse polynomial '" + text + "'");
    }
    for (std::size_t k = 0; k < coeff; ++k) arities.push_back(exp);
    if (i < s.size()) {
      if (s[i] != '+') throw DomainError("cannot parse polynomial '" + text + "'");
      ++i;
      if (i == s.size()) throw DomainError("dangling '+' in '" + text + "'");
    }
  }
  return from_arities(arities);
}

Poly Poly::y() {
  static const Poly v = make(FinSet::unit(), {FinSet::unit()});
  return v;
}

Poly Poly::monomial(const FinSet& coeffs, const FinSet& exponent) {
  return make(coeffs, std::vector<FinSet>(coeffs.size(), exponent));
}

Poly Poly::composite(Poly p, Poly q) {
  auto n = std::make_shared<detail::PolyNode>();
  n->kind = detail::NodeKind::Composite;
  n->a = std::move(p);
  n->b = std::move(q);
  return Poly(n);
}

Poly Poly::tensor_of(Poly p, Poly q) {
  auto n = std::make_shared<detail::PolyNode>();
  n->kind = detail::NodeKind::Tensor;
  n->a = std::move(p);
  n->b = std::move(q);
  return Poly(n);
}

bool Poly::is_composite() const { return node_->kind == detail::NodeKind::Composite; }
bool Poly::is_tensor() const { return node_->kind == detail::NodeKind::Tensor; }

const Poly& Poly::left() const {
  if (node_->kind == detail::NodeKind::Explicit) throw DomainError("polynomial is not a product");
  return node_->a;
}

const Poly& Poly::right() const {
  if (node_->kind == detail::NodeKind::Explicit) throw DomainError("polynomial is not a product");
  return node_->b;
}

const FinSet& Poly::positions() const {
  const detail::PolyNode& n = *node_;
  if (n.kind == detail::NodeKind::Explicit) return n.positions;
  if (n.kind == detail::NodeKind::Tensor) {
    std::call_once(n.once, [&n, this] {
      Budget::charge(position_count(), "tensor enumeration");
      const FinSet& pp = n.a.positions();
      const FinSet& qp = n.b.positions();
      std::vector<Label> pos;
      std::vector<FinSet> dirs;
      for (std::size_t I = 0; I < pp.size(); ++I) {
        for (std::size_t J = 0; J < qp.size(); ++J) {
          pos.push_back(Label::pair(pp[I], qp[J]));
          dirs.push_back(product(n.a.directions(I), n.b.directions(J)));
        }
      }
      n.positions = FinSet::from_sorted(std::move(pos));
      n.dirs = std::move(dirs);
    });
    return n.positions;
  }
  std::call_once(n.once, [&n, this] {
    Budget::charge(position_count(), "composite enumeration");
    const FinSet& qp = n.b.positions();
    std::vector<Label> pos;
    std::vector<FinSet> dirs;
    const FinSet& pp = n.a.positions();
    for (std::size_t I = 0; I < pp.size(); ++I) {
      const FinSet& pd = n.a.directions(I);
      if (qp.empty() && !pd.empty()) continue;
      std::vector<std::size_t> odo(pd.size(), 0);
      while (true) {
        Label::List f;
        f.reserve(odo.size());
        std::vector<Label> ds;
        for (std::size_t k = 0; k < odo.size(); ++k) {
          f.push_back(qp[odo[k]]);
          for (const Label& e : n.b.directions(odo[k])) ds.push_back(Label::pair(pd[k], e));
        }
        pos.push_back(Label::pair(pp[I], Label::list(std::move(f))));
        dirs.push_back(FinSet::from_sorted(std::move(ds)));
        std::size_t k = odo.size();
        while (k-- > 0) {
          if (++odo[k] < qp.size()) break;
          odo[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
    }
    n.positions = FinSet::from_sorted(std::move(pos));
    n.dirs = std::move(dirs);
  });
  return n.positions;
}

const FinSet& Poly::directions(std::size_t i) const {
  positions();
  return node_->dirs.at(i);
}

FinSet Poly::directions(const Label& pos) const {
  const detail::PolyNode& n = *node_;
  if (n.kind == detail::NodeKind::Explicit) return n.dirs[n.positions.index_of(pos, "position")];
  if (n.kind == detail::NodeKind::Tensor) {
    if (!pos.is_list() || pos.size() != 2) throw DomainError("position " + pos.to_string() + " is not a tensor position");
    return product(n.a.directions(pos.at(0)), n.b.directions(pos.at(1)));
  }
  if (!pos.is_list() || pos.size() != 2 || !pos.at(1).is_list()) {
    throw DomainError("position " + pos.to_string() + " is not a composite position");
  }
  const FinSet pd = n.a.directions(pos.at(0));
  auto f = pos.at(1).items();
  if (f.size() != pd.size()) throw DomainError("position " + pos.to_string() + " has the wrong arity");
  std::vector<Label> ds;
  for (std::size_t k = 0; k < f.size(); ++k) {
    for (const Label& e : n.b.directions(f[k])) ds.push_back(Label::pair(pd[k], e));
  }
  return FinSet::from_sorted(std::move(ds));
}

std::size_t Poly::direction_count(const Label& pos) const {
  const detail::PolyNode& n = *node_;
  if (n.kind == detail::NodeKind::Explicit) return n.dirs[n.positions.index_of(pos, "position")].size();
  if (!pos.is_list() || pos.size() != 2) throw DomainError("position " + pos.to_string() + " is not a product position");
  if (n.kind == detail::NodeKind::Tensor) return n.a.direction_count(pos.at(0)) * n.b.direction_count(pos.at(1));
  std::size_t total = 0;
  for (const Label& J : pos.at(1).items()) total += n.b.direction_count(J);
  return total;
}

std::size_t Poly::direction_index(const Label& pos, const Label& dir) const {
  const detail::PolyNode& n = *node_;
  if (n.kind == detail::NodeKind::Explicit) {
    return n.dirs[n.positions.index_of(pos, "position")].index_of(dir, "direction");
  }
  if (!pos.is_list() || pos.size() != 2) throw DomainError("position " + pos.to_string() + " is not a product position");
  if (!dir.is_list() || dir.size() != 2) throw DomainError("direction " + dir.to_string() + " not found");
  // Both product direction sets are ordered first-factor-major.
  if (n.kind == detail::NodeKind::Tensor) {
    return n.a.direction_index(pos.at(0), dir.at(0)) * n.b.direction_count(pos.at(1)) +
           n.b.direction_index(pos.at(1), dir.at(1));
  }
  if (!pos.at(1).is_list()) throw DomainError("position " + pos.to_string() + " is not a composite position");
  auto f = pos.at(1).items();
  const std::size_t k = n.a.direction_index(pos.at(0), dir.at(0));
  if (k >= f.size()) throw DomainError("position " + pos.to_string() + " has the wrong arity");
  std::size_t offset = 0;
  for (std::size_t i = 0; i < k; ++i) offset += n.b.direction_count(f[i]);
  return offset + n.b.direction_index(f[k], dir.at(1));
}

bool Poly::has_position(const Label& pos) const {
  const detail::PolyNode& n = *node_;
  if (n.kind == detail::NodeKind::Explicit) return n.positions.contains(pos);
  if (n.kind == detail::NodeKind::Tensor) {
    return pos.is_list() && pos.size() == 2 && n.a.has_position(pos.at(0)) && n.b.has_position(pos.at(1));
  }
  if (!pos.is_list() || pos.size() != 2 || !pos.at(1).is_list()) return false;
  if (!n.a.has_position(pos.at(0))) return false;
  auto f = pos.at(1).items();
  if (f.size() != n.a.directions(pos.at(0)).size()) return false;
  return std::all_of(f.begin(), f.end(), [&](const Label& j) { return n.b.has_position(j); });
}

std::size_t Poly::index_of(const Label& pos) const { return positions().index_of(pos, "position"); }

std::uint64_t Poly::position_count() const {
  const detail::PolyNode& n = *node_;
  if (n.kind == detail::NodeKind::Explicit) return n.positions.size();
  if (n.kind == detail::NodeKind::Tensor) return sat_mul(n.a.position_count(), n.b.position_count());
  const std::uint64_t q = n.b.position_count();
  std::uint64_t total = 0;
  const FinSet& pp = n.a.positions();
  for (std::size_t I = 0; I < pp.size(); ++I) total = sat_add(total, sat_pow(q, n.a.directions(I).size()));
  return total;
}

Poly Poly::materialized() const {
  if (node_->kind == detail::NodeKind::Explicit) return *this;
  positions();
  return make(node_->positions, node_->dirs);
}

std::vector<std::size_t> Poly::arities() const {
  std::vector<std::size_t> out;
  const FinSet& ps = positions();
  for (std::size_t i = 0; i < ps.size(); ++i) out.push_back(directions(i).size());
  return out;
}

std::string Poly::to_string() const {
  std::map<std::size_t, std::size_t, std::greater<>> counts;
  for (std::size_t k : arities()) ++counts[k];
  if (counts.empty()) return "0";
  std::string out;
  for (const auto& [exp, c] : counts) {
    if (!out.empty()) out += " + ";
    std::string term;
    if (exp == 0) {
      term = std::to_string(c);
    } else {
      if (c != 1) term = std::to_string(c);
      term += "y";
      if (exp != 1) term += "^" + std::to_string(exp);
    }
    out += term;
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.node_ == b.node_) return true;
  const detail::PolyNode& x = *a.node_;
  const detail::PolyNode& y = *b.node_;
  using detail::NodeKind;
  if (x.kind == y.kind && x.kind != NodeKind::Explicit && x.a == y.a && x.b == y.b) return true;
  if (x.kind == NodeKind::Explicit && y.kind == NodeKind::Explicit) {
    return x.positions == y.positions && x.dirs == y.dirs;
  }
  if (a.position_count() != b.position_count()) return false;
  const FinSet& pa = a.positions();
  if (!(pa == b.positions())) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!(a.directions(i) == b.directions(i))) return false;
  }
  return true;
}

PolyMor::PolyMor(Poly dom, Poly cod, std::vector<Label> on_pos, std::vector<std::vector<std::size_t>> sharp)
    : dom_(std::move(dom)), cod_(std::move(cod)), pos_(std::move(on_pos)), sharp_(std::move(sharp)) {
  const FinSet& dp = dom_.positions();
  if (pos_.size() != dp.size() || sharp_.size() != dp.size()) {
    throw DomainError("morphism tables do not match the domain positions");
  }
  for (std::size_t i = 0; i < dp.size(); ++i) {
    if (!cod_.has_position(pos_[i])) {
      throw DomainError("image " + pos_[i].to_string() + " of " + dp[i].to_string() + " is not a codomain position");
    }
    const std::size_t nd = dom_.directions(i).size();
    if (sharp_[i].size() != cod_.directions(pos_[i]).size()) {
      throw DomainError("direction table at " + dp[i].to_string() + " has the wrong size");
    }
    for (std::size_t v : sharp_[i]) {
      if (v >= nd) throw DomainError("direction table at " + dp[i].to_string() + " leaves the domain");
    }
  }
}

PolyMor PolyMor::identity(const Poly& p) {
  std::vector<Label> pos(p.positions().begin(), p.positions().end());
  std::vector<std::vector<std::size_t>> sharp;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    std::vector<std::size_t> t(p.directions(i).size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = k;
    sharp.push_back(std::move(t));
  }
  PolyMor m;
  m.dom_ = p;
  m.cod_ = p;
  m.pos_ = std::move(pos);
  m.sharp_ = std::move(sharp);
  return m;
}

PolyMor PolyMor::from_functions(Poly dom, Poly cod, const PosFn& pos, const DirFn& dir) {
  PolyMor m;
  const FinSet& dp = dom.positions();
  m.pos_.reserve(dp.size());
  m.sharp_.reserve(dp.size());
  for (std::size_t i = 0; i < dp.size(); ++i) {
    Label J = pos(dp[i]);
    const FinSet cd = cod.directions(J);
    const FinSet& dd = dom.directions(i);
    std::vector<std::size_t> t;
    t.reserve(cd.size());
    for (const Label& j : cd) t.push_back(dd.index_of(dir(dp[i], j), "direction"));
    m.pos_.push_back(std::move(J));
    m.sharp_.push_back(std::move(t));
  }
  m.dom_ = std::move(dom);
  m.cod_ = std::move(cod);
  return m;
}

Label PolyMor::on_position(const Label& pos) const { return pos_[dom_.index_of(pos)]; }

Label PolyMor::on_direction(const Label& pos, const Label& codDir) const {
  const std::size_t i = dom_.index_of(pos);
  const std::size_t j = cod_.direction_index(pos_[i], codDir);
  if (j >= sharp_[i].size()) throw DomainError("codomain direction " + codDir.to_string() + " not found");
  return dom_.directions(i)[sharp_[i][j]];
}

bool PolyMor::is_cartesian() const {
  for (std::size_t i = 0; i < sharp_.size(); ++i) {
    if (sharp_[i].size() != dom_.directions(i).size()) return false;
    std::vector<char> seen(sharp_[i].size(), 0);
    for (std::size_t v : sharp_[i]) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool PolyMor::is_vertical() const {
  if (dom_.position_count() != cod_.position_count()) return false;
  const FinSet& dp = dom_.positions();
  if (!(dp == cod_.positions())) return false;
  for (std::size_t i = 0; i < dp.size(); ++i) {
    if (!(pos_[i] == dp[i])) return false;
  }
  return true;
}

bool PolyMor::is_iso() const {
  if (!is_cartesian() || dom_.position_count() != cod_.position_count()) return false;
  std::set<Label> images(pos_.begin(), pos_.end());
  return images.size() == pos_.size();
}

bool operator==(const PolyMor& a, const PolyMor& b) {
  return a.pos_ == b.pos_ && a.sharp_ == b.sharp_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
}

LazyMor LazyMor::of(const PolyMor& m) {
  auto sp = std::make_shared<const PolyMor>(m);
  return {m.dom(), m.cod(), [sp](const Label& I) { return sp->on_position(I); },
          [sp](const Label& I, const Label& j) { return sp->on_direction(I, j); }};
}

PolyMor then(const PolyMor& first, const LazyMor& second) {
  if (!(first.cod() == second.dom)) throw DomainError("morphisms are not composable");
  std::vector<Label> pos;
  std::vector<std::vector<std::size_t>> sharp;
  const std::size_t n = first.dom().positions().size();
  pos.reserve(n);
  sharp.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Label& J = first.on_position(i);
    Label K = second.pos(J);
    const FinSet cdK = second.cod.directions(K);
    std::vector<std::size_t> t;
    t.reserve(cdK.size());
    for (const Label& k : cdK) t.push_back(first.sharp(i).at(first.cod().direction_index(J, second.dir(J, k))));
    pos.push_back(std::move(K));
    sharp.push_back(std::move(t));
  }
  return PolyMor(first.dom(), second.cod, std::move(pos), std::move(sharp));
}

LazyMor then(const LazyMor& first, const LazyMor& second) {
  PosFn fp = first.pos;
  PosFn sp = second.pos;
  DirFn fd = first.dir;
  DirFn sd = second.dir;
  return {first.dom, second.cod, [fp, sp](const Label& I) { return sp(fp(I)); },
          [fp, fd, sd](const Label& I, const Label& k) { return fd(I, sd(fp(I), k)); }};
}

std::string first_difference(const PolyMor& a, const PolyMor& b) {
  if (!(a.dom() == b.dom())) return "domains differ";
  if (!(a.cod() == b.cod())) return "codomains differ";
  const FinSet& dp = a.dom().positions();
  for (std::size_t i = 0; i < dp.size(); ++i) {
    if (!(a.on_position(i) == b.on_position(i))) {
      return dp[i].to_string() + ": positions " + a.on_position(i).to_string() + " vs " + b.on_position(i).to_string();
    }
    if (a.sharp(i) != b.sharp(i)) {
      const FinSet cd = a.cod_directions(i);
      for (std::size_t k = 0; k < cd.size(); ++k) {
        if (a.sharp(i)[k] != b.sharp(i)[k]) {
          return dp[i].to_string() + ": direction " + cd[k].to_string() + " maps to " +
                 a.dom().directions(i)[a.sharp(i)[k]].to_string() + " vs " +
                 b.dom().directions(i)[b.sharp(i)[k]].to_string();
        }
      }
    }
  }
  return "";
}

}  // namespace polycalc
