#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logibench/term.hpp"

namespace logibench {

/// `init(object(T,I),value(A,V)).`
struct InitFact {
  std::string object_type;
  std::int64_t object_id = 0;
  std::string attribute;
  Term value;

  auto operator<=>(const InitFact&) const = default;
};

/// `occurs(object(T,I),action(A,V),S).` -- the step argument S >= 1 is required.
struct OccursFact {
  std::string object_type;
  std::int64_t object_id = 0;
  std::string action;
  Term args;
  std::int64_t step = 0;

  auto operator<=>(const OccursFact&) const = default;
};

/// `err(F,C,P).`
struct ErrFact {
  std::string file;
  std::string constraint;
  Term params;

  auto operator<=>(const ErrFact&) const = default;
};

/// A well-formed fact whose predicate is not one of the three schemas above.
struct RawFact {
  std::string predicate;
  std::vector<Term> args;

  std::string str() const;
  auto operator<=>(const RawFact&) const = default;
};

struct FactSet {
  std::vector<std::string> header_comments;  // without the leading '%'
  std::vector<InitFact> inits;
  std::vector<OccursFact> occurs;
  std::vector<ErrFact> errs;
  std::vector<RawFact> extras;

  bool empty() const { return inits.empty() && occurs.empty() && errs.empty() && extras.empty(); }

  /// Sorts every list into serialization order and removes duplicates.
  void canonicalize();

  bool operator==(const FactSet&) const = default;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, std::string expected);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

class ArityError : public std::runtime_error {
 public:
  ArityError(std::string predicate, std::size_t got, std::size_t expected);
  const std::string& predicate() const { return predicate_; }
  std::size_t got() const { return got_; }
  std::size_t expected() const { return expected_; }

 private:
  std::string predicate_;
  std::size_t got_;
  std::size_t expected_;
};

class UnknownPredicate : public std::runtime_error {
 public:
  explicit UnknownPredicate(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct ParseOptions {
  /// When false, a predicate outside init/occurs/err raises UnknownPredicate
  /// instead of landing in FactSet::extras.
  bool allow_unknown = true;
};

FactSet parse_facts(std::string_view text, const ParseOptions& options = {});

/// Parses a single ground term, e.g. `(1,(2,-3))`.
Term parse_term(std::string_view text);

std::string format_fact(const InitFact& f);
std::string format_fact(const OccursFact& f);
std::string format_fact(const ErrFact& f);

/// Header comment lines followed by one fact per line in the stored order.
std::string format_facts(const FactSet& facts);

}  // namespace logibench
