#include "logibench/facts.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <sstream>

namespace logibench {

SyntaxError::SyntaxError(int line, int column, std::string expected)
    : std::runtime_error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
                         ": expected " + expected),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

ArityError::ArityError(std::string predicate, std::size_t got, std::size_t expected)
    : std::runtime_error("predicate " + predicate + " has arity " + std::to_string(got) + ", expected " +
                         std::to_string(expected)),
      predicate_(std::move(predicate)),
      got_(got),
      expected_(expected) {}

UnknownPredicate::UnknownPredicate(std::string name)
    : std::runtime_error("unknown predicate " + name), name_(std::move(name)) {}

std::string RawFact::str() const {
  if (args.empty()) return predicate + ".";
  return Term::function(predicate, args).str() + ".";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  // Collects '%' comment lines seen before the first fact.
  void read_header(std::vector<std::string>& out) {
    while (true) {
      skip_blank();
      if (pos_ < text_.size() && text_[pos_] == '%') {
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        std::string_view line = text_.substr(pos_ + 1, end - pos_ - 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        out.emplace_back(line);
        advance_to(end);
      } else {
        return;
      }
    }
  }

  // Parses `name(args).` or `name.`
  std::pair<std::string, std::vector<Term>> fact(int& line, int& column) {
    skip_space();
    line = line_;
    column = column_;
    std::string name = identifier("predicate name");
    std::vector<Term> args;
    skip_space();
    if (peek() == '(') {
      bump();
      args = term_list(')');
    }
    expect('.');
    return {std::move(name), std::move(args)};
  }

  Term term() {
    skip_space();
    const char c = peek();
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return Term(integer());
    if (c == '(') {
      bump();
      skip_space();
      if (peek() == ')') {
        bump();
        return Term::tuple(std::vector<Term>{});
      }
      std::vector<Term> items;
      items.push_back(term());
      skip_space();
      if (peek() == ')') {
        bump();
        return items.front();
      }
      bool trailing = false;
      while (true) {
        expect(',');
        skip_space();
        if (peek() == ')') {
          trailing = true;
          bump();
          break;
        }
        items.push_back(term());
        skip_space();
        if (peek() == ')') {
          bump();
          break;
        }
      }
      (void)trailing;
      return Term::tuple(std::move(items));
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::string name = identifier("symbol");
      skip_space();
      if (peek() == '(') {
        bump();
        return Term::function(std::move(name), term_list(')'));
      }
      return Term::symbol(std::move(name));
    }
    fail("term");
  }

  void expect_end() {
    skip_space();
    if (pos_ < text_.size()) fail("end of input");
  }

 private:
  std::vector<Term> term_list(char close) {
    std::vector<Term> items;
    skip_space();
    if (peek() == close) {
      bump();
      return items;
    }
    while (true) {
      items.push_back(term());
      skip_space();
      if (peek() == close) {
        bump();
        return items;
      }
      expect(',');
    }
  }

  std::int64_t integer() {
    skip_space();
    const std::size_t start = pos_;
    if (peek() == '-') bump();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("integer");
    while (std::isdigit(static_cast<unsigned char>(peek()))) bump();
    std::int64_t v = 0;
    const auto* first = text_.data() + start;
    const auto* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) fail("integer in 64-bit range");
    return v;
  }

  std::string identifier(const char* what) {
    skip_space();
    if (!std::islower(static_cast<unsigned char>(peek()))) fail(what);
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') bump();
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("'") + c + "'");
    bump();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void advance_to(std::size_t end) {
    while (pos_ < end) bump();
  }

  void skip_blank() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
  }

  void skip_space() {
    while (true) {
      skip_blank();
      if (pos_ < text_.size() && text_[pos_] == '%') {
        std::size_t end = text_.find('\n', pos_);
        advance_to(end == std::string_view::npos ? text_.size() : end);
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(line_, column_, expected); }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool is_function(const Term& t, std::string_view name, std::size_t arity) {
  return t.is_function() && t.as_function().name == name && t.as_function().args.size() == arity;
}

void check_arity(const std::string& pred, std::size_t got, std::size_t expected) {
  if (got != expected) throw ArityError(pred, got, expected);
}

InitFact to_init(const std::vector<Term>& args, int line, int column) {
  check_arity("init", args.size(), 2);
  const Term& obj = args[0];
  const Term& val = args[1];
  if (!is_function(obj, "object", 2) || !obj.as_function().args[0].is_symbol() ||
      !obj.as_function().args[1].is_int()) {
    throw SyntaxError(line, column, "object(TYPE,ID) as first argument of init");
  }
  if (!is_function(val, "value", 2) || !val.as_function().args[0].is_symbol()) {
    throw SyntaxError(line, column, "value(ATTRIBUTE,TERM) as second argument of init");
  }
  return InitFact{obj.as_function().args[0].as_symbol(), obj.as_function().args[1].as_int(),
                  val.as_function().args[0].as_symbol(), val.as_function().args[1]};
}

OccursFact to_occurs(const std::vector<Term>& args, int line, int column) {
  check_arity("occurs", args.size(), 3);
  const Term& obj = args[0];
  const Term& act = args[1];
  if (!is_function(obj, "object", 2) || !obj.as_function().args[0].is_symbol() ||
      !obj.as_function().args[1].is_int()) {
    throw SyntaxError(line, column, "object(TYPE,ID) as first argument of occurs");
  }
  if (!is_function(act, "action", 2) || !act.as_function().args[0].is_symbol()) {
    throw SyntaxError(line, column, "action(NAME,TERM) as second argument of occurs");
  }
  if (!args[2].is_int() || args[2].as_int() < 1) {
    throw SyntaxError(line, column, "positive step as third argument of occurs");
  }
  return OccursFact{obj.as_function().args[0].as_symbol(), obj.as_function().args[1].as_int(),
                    act.as_function().args[0].as_symbol(), act.as_function().args[1], args[2].as_int()};
}

ErrFact to_err(const std::vector<Term>& args, int line, int column) {
  check_arity("err", args.size(), 3);
  if (!args[0].is_symbol() || !args[1].is_symbol()) {
    throw SyntaxError(line, column, "err(FILE,CONSTRAINT,PARAMS) with symbolic FILE and CONSTRAINT");
  }
  return ErrFact{args[0].as_symbol(), args[1].as_symbol(), args[2]};
}

int type_rank(const std::string& type) {
  static constexpr std::array<std::string_view, 7> kOrder = {"node",  "highway", "pickingStation", "shelf",
                                                             "robot", "product", "order"};
  for (std::size_t i = 0; i < kOrder.size(); ++i) {
    if (kOrder[i] == type) return static_cast<int>(i);
  }
  return static_cast<int>(kOrder.size());
}

template <typename T, typename Less>
void sort_unique(std::vector<T>& v, Less less) {
  std::stable_sort(v.begin(), v.end(), less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

FactSet parse_facts(std::string_view text, const ParseOptions& options) {
  FactSet out;
  Parser p(text);
  p.read_header(out.header_comments);
  while (!p.at_end()) {
    int line = 0;
    int column = 0;
    auto [name, args] = p.fact(line, column);
    if (name == "init") {
      out.inits.push_back(to_init(args, line, column));
    } else if (name == "occurs") {
      out.occurs.push_back(to_occurs(args, line, column));
    } else if (name == "err") {
      out.errs.push_back(to_err(args, line, column));
    } else if (options.allow_unknown) {
      out.extras.push_back(RawFact{std::move(name), std::move(args)});
    } else {
      throw UnknownPredicate(name);
    }
  }
  return out;
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.expect_end();
  return t;
}

void FactSet::canonicalize() {
  sort_unique(inits, [](const InitFact& a, const InitFact& b) {
    const int ra = type_rank(a.object_type);
    const int rb = type_rank(b.object_type);
    if (ra != rb) return ra < rb;
    return std::tie(a.object_type, a.object_id, a.attribute, a.value) <
           std::tie(b.object_type, b.object_id, b.attribute, b.value);
  });
  sort_unique(occurs, [](const OccursFact& a, const OccursFact& b) {
    return std::tie(a.object_type, a.object_id, a.step, a.action, a.args) <
           std::tie(b.object_type, b.object_id, b.step, b.action, b.args);
  });
  sort_unique(errs, std::less<>{});
  sort_unique(extras, std::less<>{});
}

std::string format_fact(const InitFact& f) {
  std::ostringstream os;
  os << "init(object(" << f.object_type << ',' << f.object_id << "),value(" << f.attribute << ',' << f.value
     << ")).";
  return os.str();
}

std::string format_fact(const OccursFact& f) {
  std::ostringstream os;
  os << "occurs(object(" << f.object_type << ',' << f.object_id << "),action(" << f.action << ',' << f.args
     << ")," << f.step << ").";
  return os.str();
}

std::string format_fact(const ErrFact& f) {
  std::ostringstream os;
  os << "err(" << f.file << ',' << f.constraint << ',' << f.params << ").";
  return os.str();
}

std::string format_facts(const FactSet& facts) {
  std::string out;
  for (const auto& line : facts.header_comments) {
    out += line.empty() ? "%" : "% " + line;
    out += '\n';
  }
  for (const auto& f : facts.inits) out += format_fact(f) + '\n';
  for (const auto& f : facts.occurs) out += format_fact(f) + '\n';
  for (const auto& f : facts.errs) out += format_fact(f) + '\n';
  for (const auto& f : facts.extras) out += f.str() + '\n';
  return out;
}

}  // namespace logibench
