#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace logibench {

/// Ground term of the fact language: integer, symbol, tuple, or function
/// application such as `object(robot,1)`.
class Term {
 public:
  struct Symbol {
    std::string name;
    auto operator<=>(const Symbol&) const = default;
  };
  struct Tuple {
    std::vector<Term> items;
    bool operator==(const Tuple&) const;
    std::strong_ordering operator<=>(const Tuple&) const;
  };
  struct Function {
    std::string name;
    std::vector<Term> args;
    bool operator==(const Function&) const;
    std::strong_ordering operator<=>(const Function&) const;
  };

  Term() : value_(Tuple{}) {}
  Term(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Term(int v) : value_(std::int64_t{v}) {}  // NOLINT(google-explicit-constructor)

  static Term symbol(std::string name) { return Term(Symbol{std::move(name)}); }
  static Term tuple(std::vector<Term> items) { return Term(Tuple{std::move(items)}); }
  static Term tuple(std::initializer_list<Term> items) { return Term(Tuple{std::vector<Term>(items)}); }
  static Term function(std::string name, std::vector<Term> args) {
    return Term(Function{std::move(name), std::move(args)});
  }

  bool is_int() const { return std::holds_alternative<std::int64_t>(value_); }
  bool is_symbol() const { return std::holds_alternative<Symbol>(value_); }
  bool is_tuple() const { return std::holds_alternative<Tuple>(value_); }
  bool is_function() const { return std::holds_alternative<Function>(value_); }

  std::int64_t as_int() const { return std::get<std::int64_t>(value_); }
  const std::string& as_symbol() const { return std::get<Symbol>(value_).name; }
  const std::vector<Term>& items() const { return std::get<Tuple>(value_).items; }
  const Function& as_function() const { return std::get<Function>(value_); }

  /// Tuple arity; 0 for the empty tuple, throws for non-tuples.
  std::size_t size() const { return items().size(); }

  /// Canonical rendering without whitespace, e.g. `(1,(2,3))`.
  std::string str() const;

  bool operator==(const Term&) const = default;
  std::strong_ordering operator<=>(const Term& other) const;

 private:
  using Value = std::variant<std::int64_t, Symbol, Tuple, Function>;
  explicit Term(Value v) : value_(std::move(v)) {}
  Value value_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

/// Convenience for the ubiquitous `(x,y)` pair.
inline Term pair_term(std::int64_t a, std::int64_t b) { return Term::tuple({Term(a), Term(b)}); }

}  // namespace logibench
