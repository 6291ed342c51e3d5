#include "cekb/ast.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace cekb {

const char* rel_text(Rel r) {
  switch (r) {
    case Rel::Ge: return ">=";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Gt: return ">";
    case Rel::Lt: return "<";
  }
  return "?";
}

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::string num = text.substr(0, slash), den = text.substr(slash + 1);
      if (num.empty() || den.empty()) return std::nullopt;
      for (char c : num + den)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      Rat r(text);
      if (r.get_den() == 0) return std::nullopt;
      r.canonicalize();
      return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
      for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      Rat r(text);
      r.canonicalize();
      return r;
    }
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    for (char c : whole + frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    mpz_class num(whole.empty() ? std::string("0") : whole);
    mpz_class den(1);
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

std::string rat_to_decimal(const Rat& r, int max_digits) {
  mpz_class num = r.get_num(), den = r.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  mpz_class whole = num / den, rem = num % den;
  std::string digits;
  bool exact = (rem == 0);
  for (int i = 0; i < max_digits && rem != 0; ++i) {
    rem *= 10;
    mpz_class d = rem / den;
    rem %= den;
    digits += static_cast<char>('0' + d.get_si());
    exact = (rem == 0);
  }
  std::string out = (negative ? "-" : "") + whole.get_str();
  if (!digits.empty()) out += "." + digits;
  if (!exact) out = "~" + out;
  return out;
}

std::string rat_compact(const Rat& r) {
  std::string dec = rat_to_decimal(r, 12);
  if (!dec.empty() && dec[0] == '~') return rat_to_string(r);
  return dec;
}

FormulaPtr Formula::top() {
  static FormulaPtr t = FormulaPtr(new Formula());
  return t;
}

FormulaPtr Formula::atom(std::string pred, std::vector<Term> args) {
  auto f = new Formula();
  f->kind_ = Kind::Atom;
  f->pred_ = std::move(pred);
  f->args_ = std::move(args);
  return FormulaPtr(f);
}

FormulaPtr Formula::equality(Term a, Term b) {
  auto f = new Formula();
  f->kind_ = Kind::Equality;
  f->args_ = {std::move(a), std::move(b)};
  return FormulaPtr(f);
}

FormulaPtr Formula::negation(FormulaPtr c) {
  auto f = new Formula();
  f->kind_ = Kind::Not;
  f->left_ = std::move(c);
  return FormulaPtr(f);
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  auto f = new Formula();
  f->kind_ = Kind::And;
  f->left_ = std::move(a);
  f->right_ = std::move(b);
  return FormulaPtr(f);
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  auto f = new Formula();
  f->kind_ = Kind::Or;
  f->left_ = std::move(a);
  f->right_ = std::move(b);
  return FormulaPtr(f);
}

FormulaPtr Formula::stat_term(FormulaPtr phi, FormulaPtr psi,
                              std::vector<std::string> bound_vars, Rel rel, Rat p) {
  auto f = new Formula();
  f->kind_ = Kind::StatTerm;
  f->left_ = std::move(phi);
  f->right_ = std::move(psi);
  f->bound_ = std::move(bound_vars);
  f->rel_ = rel;
  f->bound_value_ = std::move(p);
  return FormulaPtr(f);
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Atom:
      return a->pred() == b->pred() && a->args() == b->args();
    case Formula::Kind::Equality:
      return a->args() == b->args();
    case Formula::Kind::Not:
      return formula_equal(a->child(), b->child());
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return formula_equal(a->left(), b->left()) && formula_equal(a->right(), b->right());
    case Formula::Kind::StatTerm:
      return a->bound_vars() == b->bound_vars() && a->rel() == b->rel() &&
             a->bound() == b->bound() && formula_equal(a->phi(), b->phi()) &&
             formula_equal(a->psi(), b->psi());
  }
  return false;
}

static void free_vars_impl(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind()) {
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
      for (const Term& t : f->args())
        if (t.kind == Term::Kind::Variable) out.insert(t.name);
      return;
    case Formula::Kind::Not:
      free_vars_impl(f->child(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      free_vars_impl(f->left(), out);
      free_vars_impl(f->right(), out);
      return;
    case Formula::Kind::StatTerm: {
      std::set<std::string> inner;
      free_vars_impl(f->phi(), inner);
      free_vars_impl(f->psi(), inner);
      for (const auto& v : f->bound_vars()) inner.erase(v);
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  free_vars_impl(f, out);
  return out;
}

static void walk(const FormulaPtr& f, const std::function<void(const Formula&)>& fn) {
  fn(*f);
  switch (f->kind()) {
    case Formula::Kind::Not:
      walk(f->child(), fn);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::StatTerm:
      walk(f->left(), fn);
      walk(f->right(), fn);
      break;
    default:
      break;
  }
}

std::set<std::string> constants_of(const FormulaPtr& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& n) {
    if (n.kind() == Formula::Kind::Atom || n.kind() == Formula::Kind::Equality)
      for (const Term& t : n.args())
        if (t.kind == Term::Kind::Constant) out.insert(t.name);
  });
  return out;
}

std::set<std::string> predicates_of(const FormulaPtr& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& n) {
    if (n.kind() == Formula::Kind::Atom) out.insert(n.pred());
  });
  return out;
}

bool contains_stat_term(const FormulaPtr& f) {
  bool found = false;
  walk(f, [&](const Formula& n) {
    if (n.kind() == Formula::Kind::StatTerm) found = true;
  });
  return found;
}

int Signature::arity_of(const std::string& pred) const {
  for (const auto& [name, arity] : predicates)
    if (name == pred) return arity;
  return -1;
}

bool Signature::has_constant(const std::string& name) const {
  return std::find(constants.begin(), constants.end(), name) != constants.end();
}

bool Signature::has_binary_predicate() const {
  return std::any_of(predicates.begin(), predicates.end(),
                     [](const auto& p) { return p.second == 2; });
}

bool operator==(const StatSentence& a, const StatSentence& b) {
  return a.bound_vars == b.bound_vars && a.rel == b.rel && a.bound == b.bound &&
         formula_equal(a.phi, b.phi) && formula_equal(a.psi, b.psi);
}

bool operator==(const HardAxiom& a, const HardAxiom& b) {
  return a.vars == b.vars && formula_equal(a.matrix, b.matrix);
}

bool operator==(const BeliefSentence& a, const BeliefSentence& b) {
  return a.subjects == b.subjects && a.rel == b.rel && a.bound == b.bound &&
         formula_equal(a.phi, b.phi) && formula_equal(a.psi, b.psi);
}

bool kb_equal(const KnowledgeBase& a, const KnowledgeBase& b) {
  return a.sig.predicates == b.sig.predicates && a.sig.constants == b.sig.constants &&
         a.axioms == b.axioms && a.statistical == b.statistical && a.beliefs == b.beliefs;
}

StatSentence canonicalize(const StatSentence& s) {
  StatSentence out = s;
  if (s.rel == Rel::Le || s.rel == Rel::Lt) {
    out.phi = Formula::negation(s.phi);
    out.rel = (s.rel == Rel::Le) ? Rel::Ge : Rel::Gt;
    out.bound = 1 - s.bound;
  }
  return out;
}

}  // namespace cekb
