#include "cekb/printer.hpp"

#include <sstream>

namespace cekb {
namespace {

// Precedence levels for minimal parenthesization: | = 1, & = 2, ! = 3.
int level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    case Formula::Kind::Not: return 3;
    default: return 4;
  }
}

void print(const FormulaPtr& f, int min_level, std::ostream& os);

void print_bracket(const FormulaPtr& phi, const FormulaPtr& psi,
                   const std::vector<std::string>& bound, std::ostream& os) {
  os << "[";
  // A top-level disjunction in phi would be read as the separator bar.
  print(phi, phi->kind() == Formula::Kind::Or ? 2 : 1, os);
  if (psi->kind() != Formula::Kind::Top) {
    os << " | ";
    print(psi, 1, os);
  }
  os << "]{";
  for (size_t i = 0; i < bound.size(); ++i) os << (i ? "," : "") << bound[i];
  os << "}";
}

void print(const FormulaPtr& f, int min_level, std::ostream& os) {
  bool parens = level(*f) < min_level;
  if (parens) os << "(";
  switch (f->kind()) {
    case Formula::Kind::Top:
      // Only reachable when printed standalone; the separator form is omitted.
      os << "v0 == v0";
      break;
    case Formula::Kind::Atom: {
      os << f->pred() << "(";
      const auto& a = f->args();
      for (size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << a[i].name;
      os << ")";
      break;
    }
    case Formula::Kind::Equality:
      os << f->lhs().name << " == " << f->rhs().name;
      break;
    case Formula::Kind::Not:
      os << "!";
      print(f->child(), 4, os);
      break;
    case Formula::Kind::And:
      print(f->left(), 2, os);
      os << " & ";
      print(f->right(), 2, os);
      break;
    case Formula::Kind::Or:
      print(f->left(), 1, os);
      os << " | ";
      print(f->right(), 1, os);
      break;
    case Formula::Kind::StatTerm:
      print_bracket(f->phi(), f->psi(), f->bound_vars(), os);
      os << " " << rel_text(f->rel()) << " " << rat_compact(f->bound());
      break;
  }
  if (parens) os << ")";
}

}  // namespace

std::string format_formula(const FormulaPtr& f) {
  std::ostringstream os;
  print(f, 0, os);
  return os.str();
}

std::string format_stat(const StatSentence& s) {
  std::ostringstream os;
  print_bracket(s.phi, s.psi, s.bound_vars, os);
  os << " " << rel_text(s.rel) << " " << rat_compact(s.bound);
  return os.str();
}

std::string format_axiom(const HardAxiom& a) {
  std::ostringstream os;
  os << "axiom ";
  if (!a.vars.empty()) {
    os << "forall ";
    for (size_t i = 0; i < a.vars.size(); ++i) os << (i ? ", " : "") << a.vars[i];
    os << " . ";
  }
  print(a.matrix, 0, os);
  return os.str();
}

std::string format_belief(const BeliefSentence& b) {
  std::ostringstream os;
  os << "prob(";
  print(b.phi, b.phi->kind() == Formula::Kind::Or ? 2 : 1, os);
  if (b.psi->kind() != Formula::Kind::Top) {
    os << " | ";
    print(b.psi, 1, os);
  }
  os << ") " << rel_text(b.rel) << " " << rat_compact(b.bound);
  return os.str();
}

std::string format_kb(const KnowledgeBase& kb) {
  std::ostringstream os;
  for (const auto& [name, arity] : kb.sig.predicates)
    os << "pred " << name << "/" << arity << "\n";
  if (!kb.sig.constants.empty()) {
    os << "const ";
    for (size_t i = 0; i < kb.sig.constants.size(); ++i)
      os << (i ? ", " : "") << kb.sig.constants[i];
    os << "\n";
  }
  if (!kb.axioms.empty()) {
    os << "\n";
    for (const auto& a : kb.axioms) os << format_axiom(a) << "\n";
  }
  if (!kb.statistical.empty()) {
    os << "\n";
    for (const auto& s : kb.statistical) os << format_stat(s) << "\n";
  }
  if (!kb.beliefs.empty()) {
    os << "\n";
    for (const auto& b : kb.beliefs) os << format_belief(b) << "\n";
  }
  return os.str();
}

}  // namespace cekb
