#include "polycalc/label.hpp"

#include <json.hpp>

#include "polycalc/error.hpp"

namespace polycalc {
namespace {

const Label::List& empty_list() {
  static const Label::List e;
  return e;
}

void write(const Label& l, std::string& out) {
  switch (l.kind()) {
    case Label::Kind::Int:
      out += std::to_string(l.as_int());
      break;
    case Label::Kind::Str:
      out += nlohmann::json(l.as_str()).dump();
      break;
    case Label::Kind::List: {
      out += '[';
      bool first = true;
      for (const Label& x : l.items()) {
        if (!first) out += ',';
        first = false;
        write(x, out);
      }
      out += ']';
      break;
    }
  }
}

}  // namespace

Label Label::list(List items) {
  Label l;
  if (!items.empty()) l.rep_ = std::make_shared<const List>(std::move(items));
  return l;
}

Label::Kind Label::kind() const {
  switch (rep_.index()) {
    case 1:
      return Kind::Int;
    case 2:
      return Kind::Str;
    default:
      return Kind::List;
  }
}

std::int64_t Label::as_int() const {
  if (const auto* v = std::get_if<std::int64_t>(&rep_)) return *v;
  throw DomainError("label " + to_string() + " is not an integer");
}

const std::string& Label::as_str() const {
  if (const auto* v = std::get_if<std::string>(&rep_)) return *v;
  throw DomainError("label " + to_string() + " is not a string");
}

std::span<const Label> Label::items() const {
  if (const auto* v = std::get_if<std::shared_ptr<const List>>(&rep_)) {
    return *v ? std::span<const Label>(**v) : std::span<const Label>(empty_list());
  }
  throw DomainError("label " + to_string() + " is not a list");
}

const Label& Label::at(std::size_t i) const {
  auto xs = items();
  if (i >= xs.size()) throw DomainError("label " + to_string() + " has no component " + std::to_string(i));
  return xs[i];
}

std::string Label::to_string() const {
  std::string out;
  write(*this, out);
  return out;
}

std::size_t Label::hash() const {
  switch (kind()) {
    case Kind::Int:
      return std::hash<std::int64_t>{}(as_int()) * 0x9e3779b97f4a7c15ULL;
    case Kind::Str:
      return std::hash<std::string>{}(as_str()) ^ 0x51ed270b27a4ae13ULL;
    case Kind::List: {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (const Label& x : items()) h = (h ^ x.hash()) * 0x100000001b3ULL;
      return h;
    }
  }
  return 0;
}

bool operator==(const Label& a, const Label& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  switch (a.kind()) {
    case Label::Kind::Int:
      return std::get<std::int64_t>(a.rep_) == std::get<std::int64_t>(b.rep_);
    case Label::Kind::Str:
      return std::get<std::string>(a.rep_) == std::get<std::string>(b.rep_);
    case Label::Kind::List: {
      const auto& pa = std::get<0>(a.rep_);
      const auto& pb = std::get<0>(b.rep_);
      if (pa == pb) return true;
      auto xa = a.items();
      auto xb = b.items();
      if (xa.size() != xb.size()) return false;
      for (std::size_t i = 0; i < xa.size(); ++i) {
        if (!(xa[i] == xb[i])) return false;
      }
      return true;
    }
  }
  return false;
}

std::strong_ordering operator<=>(const Label& a, const Label& b) {
  const Label::Kind ka = a.kind();
  const Label::Kind kb = b.kind();
  if (ka != kb) return static_cast<int>(ka) <=> static_cast<int>(kb);
  switch (ka) {
    case Label::Kind::Int:
      return std::get<std::int64_t>(a.rep_) <=> std::get<std::int64_t>(b.rep_);
    case Label::Kind::Str: {
      int c = std::get<std::string>(a.rep_).compare(std::get<std::string>(b.rep_));
      return c <=> 0;
    }
    case Label::Kind::List: {
      if (std::get<0>(a.rep_) == std::get<0>(b.rep_)) return std::strong_ordering::equal;
      auto xa = a.items();
      auto xb = b.items();
      const std::size_t n = std::min(xa.size(), xb.size());
      for (std::size_t i = 0; i < n; ++i) {
        auto c = xa[i] <=> xb[i];
        if (c != 0) return c;
      }
      return xa.size() <=> xb.size();
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace polycalc
