#pragma once

/// @file label.hpp
/// Structured element labels: integers, strings, or finite lists of labels.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polycalc {

/// Immutable label tree. Lists share storage, so copies are cheap.
/// Total order: integers < strings < lists; lists compare lexicographically.
class Label {
 public:
  using List = std::vector<Label>;
  enum class Kind { Int, Str, List };

  /// The empty list, used as the canonical point of a singleton set.
  Label() = default;
  Label(std::int64_t v) : rep_(v) {}  // NOLINT(google-explicit-constructor)
  Label(int v) : rep_(static_cast<std::int64_t>(v)) {}  // NOLINT
  Label(std::string v) : rep_(std::move(v)) {}  // NOLINT
  Label(const char* v) : rep_(std::string(v)) {}  // NOLINT

  static Label list(List items);
  static Label list(std::initializer_list<Label> items) { return list(List(items)); }
  static Label pair(Label a, Label b) { return list({std::move(a), std::move(b)}); }
  static Label unit() { return Label(); }

  Kind kind() const;
  bool is_int() const { return kind() == Kind::Int; }
  bool is_str() const { return kind() == Kind::Str; }
  bool is_list() const { return kind() == Kind::List; }

  std::int64_t as_int() const;
  const std::string& as_str() const;
  std::span<const Label> items() const;
  std::size_t size() const { return items().size(); }
  /// i-th item of a list label; throws DomainError when out of range.
  const Label& at(std::size_t i) const;

  /// Compact JSON text, e.g. `["a",[1,2]]`.
  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const Label& a, const Label& b);
  friend std::strong_ordering operator<=>(const Label& a, const Label& b);

 private:
  std::variant<std::shared_ptr<const List>, std::int64_t, std::string> rep_;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const { return l.hash(); }
};

}  // namespace polycalc
