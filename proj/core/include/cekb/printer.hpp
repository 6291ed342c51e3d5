#pragma once

#include <string>

#include "cekb/ast.hpp"

namespace cekb {

std::string format_formula(const FormulaPtr& f);
std::string format_stat(const StatSentence& s);
std::string format_axiom(const HardAxiom& a);
std::string format_belief(const BeliefSentence& b);

// Canonical document form; parse_kb(format_kb(kb)) is structurally equal to kb.
std::string format_kb(const KnowledgeBase& kb);

}  // namespace cekb
