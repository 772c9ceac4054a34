#include "logibench/term.hpp"

#include <sstream>

namespace logibench {

namespace {

std::strong_ordering compare_lists(const std::vector<Term>& a, const std::vector<Term>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return a.size() <=> b.size();
}

void render(std::ostream& os, const Term& t) {
  if (t.is_int()) {
    os << t.as_int();
  } else if (t.is_symbol()) {
    os << t.as_symbol();
  } else if (t.is_tuple()) {
    const auto& items = t.items();
    os << '(';
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) os << ',';
      render(os, items[i]);
    }
    if (items.size() == 1) os << ',';
    os << ')';
  } else {
    const auto& f = t.as_function();
    os << f.name << '(';
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      if (i > 0) os << ',';
      render(os, f.args[i]);
    }
    os << ')';
  }
}

}  // namespace

bool Term::Tuple::operator==(const Tuple& o) const { return items == o.items; }
std::strong_ordering Term::Tuple::operator<=>(const Tuple& o) const { return compare_lists(items, o.items); }

bool Term::Function::operator==(const Function& o) const { return name == o.name && args == o.args; }
std::strong_ordering Term::Function::operator<=>(const Function& o) const {
  if (auto c = name <=> o.name; c != 0) return c;
  return compare_lists(args, o.args);
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (value_.index() != other.value_.index()) return value_.index() <=> other.value_.index();
  return std::visit(
      [&](const auto& lhs) -> std::strong_ordering {
        using T = std::decay_t<decltype(lhs)>;
        return lhs <=> std::get<T>(other.value_);
      },
      value_);
}

std::string Term::str() const {
  std::ostringstream os;
  render(os, *this);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  render(os, t);
  return os;
}

}  // namespace logibench
