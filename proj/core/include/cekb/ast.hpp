#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cekb/rational.hpp"

namespace cekb {

struct Term {
  enum class Kind { Variable, Constant };
  Kind kind = Kind::Variable;
  std::string name;

  bool operator==(const Term&) const = default;
};

inline Term var(std::string name) { return {Term::Kind::Variable, std::move(name)}; }
inline Term cst(std::string name) { return {Term::Kind::Constant, std::move(name)}; }

enum class Rel { Ge, Le, Eq, Gt, Lt };

const char* rel_text(Rel r);

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. StatTerm nodes carry a probability bound, so a
// top-level StatTerm is what the surface syntax writes as "[phi|psi]{v} rel p".
class Formula {
 public:
  enum class Kind { Top, Atom, Equality, Not, And, Or, StatTerm };

  Kind kind() const { return kind_; }

  // Atom
  const std::string& pred() const { return pred_; }
  const std::vector<Term>& args() const { return args_; }
  // Equality
  const Term& lhs() const { return args_[0]; }
  const Term& rhs() const { return args_[1]; }
  // Not / And / Or
  const FormulaPtr& child() const { return left_; }
  const FormulaPtr& left() const { return left_; }
  const FormulaPtr& right() const { return right_; }
  // StatTerm
  const FormulaPtr& phi() const { return left_; }
  const FormulaPtr& psi() const { return right_; }
  const std::vector<std::string>& bound_vars() const { return bound_; }
  Rel rel() const { return rel_; }
  const Rat& bound() const { return bound_value_; }

  static FormulaPtr top();
  static FormulaPtr atom(std::string pred, std::vector<Term> args);
  static FormulaPtr equality(Term a, Term b);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr stat_term(FormulaPtr phi, FormulaPtr psi,
                              std::vector<std::string> bound_vars, Rel rel, Rat p);

 private:
  Formula() = default;
  Kind kind_ = Kind::Top;
  std::string pred_;
  std::vector<Term> args_;
  FormulaPtr left_, right_;
  std::vector<std::string> bound_;
  Rel rel_ = Rel::Ge;
  Rat bound_value_;
};

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

// Free variables per the statistical-term scoping rule: a bound tuple removes
// its variables from the free set of the enclosed pair.
std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> constants_of(const FormulaPtr& f);
std::set<std::string> predicates_of(const FormulaPtr& f);
bool contains_stat_term(const FormulaPtr& f);

struct StatSentence {
  FormulaPtr phi;
  FormulaPtr psi;  // Top when the conditioning part is omitted
  std::vector<std::string> bound_vars;
  Rel rel = Rel::Ge;
  Rat bound;
  int line = 0;
  std::string source;
};

// First-order sentence compiled as a hard (probability one) constraint; free
// variables of the matrix are universally quantified.
struct HardAxiom {
  FormulaPtr matrix;
  std::vector<std::string> vars;
  int line = 0;
  std::string source;
};

struct BeliefSentence {
  FormulaPtr phi;
  FormulaPtr psi;  // Top when omitted
  std::vector<std::string> subjects;  // in declaration order
  Rel rel = Rel::Ge;                  // Ge, Le or Eq only
  Rat bound;
  int line = 0;
  std::string source;
};

struct Signature {
  std::vector<std::pair<std::string, int>> predicates;  // declaration order
  std::vector<std::string> constants;                   // declaration order

  int arity_of(const std::string& pred) const;  // -1 when undeclared
  bool has_constant(const std::string& name) const;
  bool has_binary_predicate() const;
};

struct KnowledgeBase {
  Signature sig;
  std::vector<HardAxiom> axioms;
  std::vector<StatSentence> statistical;
  std::vector<BeliefSentence> beliefs;
};

struct Query {
  enum class Kind { Statistical, Subjective };
  Kind kind = Kind::Statistical;
  FormulaPtr phi;
  FormulaPtr psi;
  std::vector<std::string> bound_vars;  // statistical queries
  std::vector<std::string> subjects;    // subjective queries
  std::string text;
};

bool operator==(const StatSentence& a, const StatSentence& b);
bool operator==(const HardAxiom& a, const HardAxiom& b);
bool operator==(const BeliefSentence& a, const BeliefSentence& b);
bool kb_equal(const KnowledgeBase& a, const KnowledgeBase& b);

// Rewrites Le/Lt sentences to the Ge/Gt form on the negated formula; used by
// the compiler and by structural-identity checks, never by the printer.
StatSentence canonicalize(const StatSentence& s);

}  // namespace cekb
