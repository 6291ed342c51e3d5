#include "cekb/parser.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace cekb {
namespace {

enum class Tok {
  Ident, Number, LBracket, RBracket, LBrace, RBrace, LParen, RParen,
  Bar, Amp, Bang, Comma, Slash, Dot, EqEq, Eq, Ge, Le, Gt, Lt,
  Arrow, Iff, Question, End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back({Tok::End, "", line_, col_});
    return out;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token next() {
    int line = line_, col = col_;
    char c = src_[pos_];
    auto tok = [&](Tok k, std::string t) {
      for (size_t i = 0; i < t.size(); ++i) advance();
      return Token{k, t, line, col};
    };
    auto peek2 = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (peek2('=', '=')) return tok(Tok::EqEq, "==");
    if (peek2('>', '=')) return tok(Tok::Ge, ">=");
    if (peek2('<', '=')) return tok(Tok::Le, "<=");
    if (peek2('-', '>')) return tok(Tok::Arrow, "->");
    if (c == '<' && pos_ + 2 < src_.size() && src_[pos_ + 1] == '-' && src_[pos_ + 2] == '>')
      return tok(Tok::Iff, "<->");
    switch (c) {
      case '[': return tok(Tok::LBracket, "[");
      case ']': return tok(Tok::RBracket, "]");
      case '{': return tok(Tok::LBrace, "{");
      case '}': return tok(Tok::RBrace, "}");
      case '(': return tok(Tok::LParen, "(");
      case ')': return tok(Tok::RParen, ")");
      case '|': return tok(Tok::Bar, "|");
      case '&': return tok(Tok::Amp, "&");
      case '!': return tok(Tok::Bang, "!");
      case ',': return tok(Tok::Comma, ",");
      case '/': return tok(Tok::Slash, "/");
      case '=': return tok(Tok::Eq, "=");
      case '>': return tok(Tok::Gt, ">");
      case '<': return tok(Tok::Lt, "<");
      case '?': return tok(Tok::Question, "?");
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      std::string t;
      bool dot = false;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          t += d;
        } else if (d == '.' && !dot) {
          dot = true;
          t += d;
        } else {
          break;
        }
        advance();
      }
      return Token{Tok::Number, t, line, col};
    }
    if (c == '.') return tok(Tok::Dot, ".");
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string t;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t += src_[pos_];
        advance();
      }
      return Token{Tok::Ident, t, line, col};
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

constexpr int kMaxDepth = 200;

class Parser {
 public:
  Parser(const std::string& text, const Signature* sig)
      : tokens_(Lexer(text).run()), ext_sig_(sig) {}

  KnowledgeBase parse_document() {
    KnowledgeBase kb;
    sig_ = &kb.sig;
    while (!at(Tok::End)) {
      const Token& t = cur();
      if (t.kind == Tok::Ident && t.text == "pred") {
        parse_pred_decl(kb);
      } else if (t.kind == Tok::Ident && t.text == "const") {
        parse_const_decl(kb);
      } else if (t.kind == Tok::Ident && t.text == "axiom") {
        parse_axiom(kb);
      } else if (t.kind == Tok::Ident && t.text == "prob") {
        kb.beliefs.push_back(parse_belief());
      } else if (t.kind == Tok::LBracket) {
        kb.statistical.push_back(parse_stat_sentence());
      } else {
        fail("expected a declaration, statistical sentence or belief sentence");
      }
    }
    return kb;
  }

  Query parse_single_query() {
    sig_ = ext_sig_;
    Query q;
    const Token& t = cur();
    if (t.kind == Tok::LBracket) {
      q.kind = Query::Kind::Statistical;
      auto st = parse_bracket_term();
      parse_query_tail();
      q.phi = st.phi;
      q.psi = st.psi;
      q.bound_vars = st.bound_vars;
      validate_stat_query(q, t);
    } else if (t.kind == Tok::Ident && t.text == "prob") {
      q.kind = Query::Kind::Subjective;
      auto [phi, psi] = parse_prob_body();
      parse_query_tail();
      q.phi = phi;
      q.psi = psi;
      validate_belief_formulas(phi, psi, q.subjects, t);
    } else {
      fail("expected a statistical or subjective probability query");
    }
    if (!at(Tok::End)) fail("trailing input after query");
    return q;
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }

  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  bool accept(Tok k) {
    if (at(k)) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(cur().line, cur().col, msg);
  }

  std::string expect_name() {
    const Token& t = expect(Tok::Ident, "an identifier");
    return t.text;
  }

  // ---- declarations -------------------------------------------------------

  void parse_pred_decl(KnowledgeBase& kb) {
    ++pos_;  // pred
    std::string name = expect_name();
    expect(Tok::Slash, "'/'");
    const Token& n = expect(Tok::Number, "an arity (1 or 2)");
    if (n.text != "1" && n.text != "2")
      throw ParseError(n.line, n.col, "predicate arity must be 1 or 2");
    if (kb.sig.arity_of(name) >= 0)
      fail("predicate '" + name + "' declared twice");
    kb.sig.predicates.emplace_back(name, n.text == "1" ? 1 : 2);
  }

  void parse_const_decl(KnowledgeBase& kb) {
    ++pos_;  // const
    do {
      std::string name = expect_name();
      if (kb.sig.has_constant(name)) fail("constant '" + name + "' declared twice");
      if (kb.sig.arity_of(name) >= 0) fail("'" + name + "' already names a predicate");
      kb.sig.constants.push_back(name);
    } while (accept(Tok::Comma));
  }

  // ---- sentences ----------------------------------------------------------

  void parse_axiom(KnowledgeBase& kb) {
    const Token& kw = cur();
    ++pos_;  // axiom
    HardAxiom ax;
    ax.line = kw.line;
    if (at(Tok::Ident) && cur().text == "exists")
      fail("existential axioms are not supported");
    if (at(Tok::Ident) && cur().text == "forall") {
      ++pos_;
      do {
        ax.vars.push_back(expect_name());
      } while (accept(Tok::Comma));
      expect(Tok::Dot, "'.' after the quantified variables");
    }
    ax.matrix = parse_formula(false, 0);
    if (contains_stat_term(ax.matrix))
      throw ParseError(kw.line, kw.col, "axioms must be purely first-order");
    auto fv = free_vars(ax.matrix);
    for (const auto& v : ax.vars) fv.insert(v);
    ax.vars.assign(fv.begin(), fv.end());
    if (ax.vars.size() > 2)
      throw ParseError(kw.line, kw.col, "axioms may quantify over at most 2 variables");
    auto consts = constants_of(ax.matrix);
    if (!consts.empty())
      throw ParseError(kw.line, kw.col,
                       "subject constant '" + *consts.begin() + "' in axiom");
    kb.axioms.push_back(std::move(ax));
  }

  struct BracketTerm {
    FormulaPtr phi, psi;
    std::vector<std::string> bound_vars;
  };

  BracketTerm parse_bracket_term() {
    expect(Tok::LBracket, "'['");
    BracketTerm out;
    out.phi = parse_formula(true, 0);
    if (accept(Tok::Bar))
      out.psi = parse_formula(false, 0);
    else
      out.psi = Formula::top();
    expect(Tok::RBracket, "']'");
    expect(Tok::LBrace, "'{'");
    do {
      out.bound_vars.push_back(expect_name());
    } while (accept(Tok::Comma));
    expect(Tok::RBrace, "'}'");
    return out;
  }

  StatSentence parse_stat_sentence() {
    const Token& start = cur();
    auto bt = parse_bracket_term();
    StatSentence s;
    s.line = start.line;
    s.phi = bt.phi;
    s.psi = bt.psi;
    s.bound_vars = bt.bound_vars;
    s.rel = parse_rel();
    s.bound = parse_prob();
    validate_stat_sentence(s, start);
    return s;
  }

  std::pair<FormulaPtr, FormulaPtr> parse_prob_body() {
    ++pos_;  // prob
    expect(Tok::LParen, "'('");
    FormulaPtr phi = parse_formula(true, 0);
    FormulaPtr psi = accept(Tok::Bar) ? parse_formula(false, 0) : Formula::top();
    expect(Tok::RParen, "')'");
    return {phi, psi};
  }

  BeliefSentence parse_belief() {
    const Token& start = cur();
    auto [phi, psi] = parse_prob_body();
    BeliefSentence b;
    b.line = start.line;
    b.phi = phi;
    b.psi = psi;
    b.rel = parse_rel();
    if (b.rel == Rel::Gt || b.rel == Rel::Lt)
      throw ParseError(start.line, start.col,
                       "strict relations are not allowed in belief sentences");
    b.bound = parse_prob();
    validate_belief_formulas(phi, psi, b.subjects, start);
    return b;
  }

  Rel parse_rel() {
    if (accept(Tok::Ge)) return Rel::Ge;
    if (accept(Tok::Le)) return Rel::Le;
    if (accept(Tok::Eq)) return Rel::Eq;
    if (accept(Tok::Gt)) return Rel::Gt;
    if (accept(Tok::Lt)) return Rel::Lt;
    fail("expected a relation (>=, <=, =, >, <)");
  }

  Rat parse_prob() {
    const Token& n = expect(Tok::Number, "a probability literal");
    std::string text = n.text;
    if (accept(Tok::Slash)) {
      const Token& d = expect(Tok::Number, "a denominator");
      text += "/" + d.text;
    }
    auto r = parse_rational(text);
    if (!r) throw ParseError(n.line, n.col, "malformed probability literal '" + text + "'");
    if (*r < 0 || *r > 1)
      throw ParseError(n.line, n.col, "probability " + text + " outside [0,1]");
    return *r;
  }

  void parse_query_tail() {
    // Accept "", "= ?", ">= ?", ...: the bound must be '?', never a number.
    if (at(Tok::End)) return;
    parse_rel();
    expect(Tok::Question, "'?' in place of the bound");
  }

  // ---- formulas -----------------------------------------------------------
  //
  // Precedence: ! > & > | > -> (right assoc.) > <->. Inside "[phi | psi]" and
  // "prob(phi | psi)" the first '|' at bracket depth separates phi from psi;
  // a disjunction there needs parentheses.

  FormulaPtr parse_formula(bool bar_separates, int depth) {
    return parse_iff(bar_separates, depth);
  }

  FormulaPtr parse_iff(bool stop, int depth) {
    check_depth(depth);
    FormulaPtr a = parse_imp(stop, depth);
    while (at(Tok::Iff)) {
      ++pos_;
      FormulaPtr b = parse_imp(stop, depth);
      a = Formula::conj(Formula::disj(Formula::negation(a), b),
                        Formula::disj(Formula::negation(b), a));
    }
    return a;
  }

  FormulaPtr parse_imp(bool stop, int depth) {
    FormulaPtr a = parse_or(stop, depth);
    if (at(Tok::Arrow)) {
      ++pos_;
      FormulaPtr b = parse_imp(stop, depth);
      return Formula::disj(Formula::negation(a), b);
    }
    return a;
  }

  FormulaPtr parse_or(bool stop, int depth) {
    FormulaPtr a = parse_and(depth);
    while (at(Tok::Bar) && !stop) {
      ++pos_;
      a = Formula::disj(a, parse_and(depth));
    }
    return a;
  }

  FormulaPtr parse_and(int depth) {
    FormulaPtr a = parse_not(depth);
    while (accept(Tok::Amp)) a = Formula::conj(a, parse_not(depth));
    return a;
  }

  FormulaPtr parse_not(int depth) {
    check_depth(depth);
    if (accept(Tok::Bang)) return Formula::negation(parse_not(depth + 1));
    return parse_primary(depth);
  }

  FormulaPtr parse_primary(int depth) {
    check_depth(depth);
    if (accept(Tok::LParen)) {
      FormulaPtr f = parse_formula(false, depth + 1);
      expect(Tok::RParen, "')'");
      // A parenthesized term must continue as an equality; formulas are done.
      return f;
    }
    if (at(Tok::LBracket)) {
      auto bt = parse_bracket_term();
      Rel r = parse_rel();
      Rat p = parse_prob();
      return Formula::stat_term(bt.phi, bt.psi, bt.bound_vars, r, p);
    }
    if (at(Tok::Ident)) {
      const Token& id = cur();
      if (id.text == "prob")
        throw ParseError(id.line, id.col, "nested prob not allowed");
      if (id.text == "pred" || id.text == "const" || id.text == "axiom" ||
          id.text == "forall" || id.text == "exists")
        fail("keyword '" + id.text + "' cannot start a formula");
      ++pos_;
      if (accept(Tok::LParen)) {
        // Predicate application.
        int declared = sig_ ? sig_->arity_of(id.text) : -1;
        if (declared < 0)
          throw ParseError(id.line, id.col, "undeclared predicate '" + id.text + "'");
        std::vector<Term> args;
        do {
          args.push_back(parse_term());
        } while (accept(Tok::Comma));
        expect(Tok::RParen, "')'");
        if (static_cast<int>(args.size()) != declared)
          throw ParseError(id.line, id.col,
                           "predicate '" + id.text + "' expects " +
                               std::to_string(declared) + " argument(s), got " +
                               std::to_string(args.size()));
        return Formula::atom(id.text, std::move(args));
      }
      // Bare term: must be the left side of an equality.
      Term a = classify(id.text);
      expect(Tok::EqEq, "'==' (bare terms only occur in equalities)");
      Term b = parse_term();
      return Formula::equality(std::move(a), std::move(b));
    }
    fail("expected a formula");
  }

  Term parse_term() {
    const Token& t = expect(Tok::Ident, "a term");
    return classify(t.text);
  }

  Term classify(const std::string& name) const {
    if (sig_ && sig_->has_constant(name)) return cst(name);
    return var(name);
  }

  void check_depth(int depth) const {
    if (depth > kMaxDepth) fail("formula nesting too deep");
  }

  // ---- validation ---------------------------------------------------------

  void validate_stat_formula_pair(const FormulaPtr& phi, const FormulaPtr& psi,
                                  const Token& loc) {
    for (const FormulaPtr& f : {phi, psi}) {
      auto consts = constants_of(f);
      if (!consts.empty())
        throw ParseError(loc.line, loc.col,
                         "subject constant '" + *consts.begin() +
                             "' in statistical sentence");
      check_stat_nesting(f, loc, 0);
    }
  }

  // Inner statistical terms are allowed one level deep and must be closed.
  void check_stat_nesting(const FormulaPtr& f, const Token& loc, int level) const {
    switch (f->kind()) {
      case Formula::Kind::Not:
        check_stat_nesting(f->child(), loc, level);
        return;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        check_stat_nesting(f->left(), loc, level);
        check_stat_nesting(f->right(), loc, level);
        return;
      case Formula::Kind::StatTerm: {
        if (level >= 1)
          throw ParseError(loc.line, loc.col,
                           "statistical terms nested deeper than one level are not "
                           "supported");
        if (!free_vars(f).empty())
          throw ParseError(loc.line, loc.col,
                           "inner statistical term must be closed (no free variables)");
        check_stat_nesting(f->phi(), loc, level + 1);
        check_stat_nesting(f->psi(), loc, level + 1);
        return;
      }
      default:
        return;
    }
  }

  void validate_stat_sentence(const StatSentence& s, const Token& loc) {
    if (s.bound_vars.empty())
      throw ParseError(loc.line, loc.col, "statistical term binds no variables");
    if (s.bound_vars.size() > 2)
      throw ParseError(loc.line, loc.col, "statistical terms bind at most 2 variables");
    for (size_t i = 0; i < s.bound_vars.size(); ++i)
      for (size_t j = i + 1; j < s.bound_vars.size(); ++j)
        if (s.bound_vars[i] == s.bound_vars[j])
          throw ParseError(loc.line, loc.col,
                           "duplicate bound variable '" + s.bound_vars[i] + "'");
    std::set<std::string> fv = free_vars(s.phi);
    auto fv2 = free_vars(s.psi);
    fv.insert(fv2.begin(), fv2.end());
    for (const auto& v : s.bound_vars)
      if (!fv.count(v))
        throw ParseError(loc.line, loc.col,
                         "bound variable '" + v + "' does not occur in the formulas");
    for (const auto& v : s.bound_vars) fv.erase(v);
    if (!fv.empty())
      throw ParseError(loc.line, loc.col,
                       "statistical sentence has free variable '" + *fv.begin() + "'");
    validate_stat_formula_pair(s.phi, s.psi, loc);
  }

  void validate_belief_formulas(const FormulaPtr& phi, const FormulaPtr& psi,
                                std::vector<std::string>& subjects, const Token& loc) {
    for (const FormulaPtr& f : {phi, psi}) {
      auto fv = free_vars(f);
      if (!fv.empty())
        throw ParseError(loc.line, loc.col,
                         "'" + *fv.begin() +
                             "' is not a declared constant (belief sentences must be "
                             "closed)");
      check_stat_nesting(f, loc, 0);
    }
    std::set<std::string> seen = constants_of(phi);
    auto c2 = constants_of(psi);
    seen.insert(c2.begin(), c2.end());
    if (seen.empty())
      throw ParseError(loc.line, loc.col,
                       "belief sentence mentions no subject constant");
    subjects.clear();
    if (sig_) {
      for (const auto& c : sig_->constants)
        if (seen.count(c)) subjects.push_back(c);
    }
    if (subjects.size() > 2)
      throw ParseError(loc.line, loc.col,
                       "belief sentences over more than 2 constants are not supported");
  }

  void validate_stat_query(Query& q, const Token& loc) {
    StatSentence s;
    s.phi = q.phi;
    s.psi = q.psi;
    s.bound_vars = q.bound_vars;
    s.rel = Rel::Eq;
    s.bound = 0;
    validate_stat_sentence(s, at);
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  const Signature* sig_ = nullptr;      // signature used for classification
  const Signature* ext_sig_ = nullptr;  // supplied externally for queries
};

}  // namespace

KnowledgeBase parse_kb(const std::string& text) {
  Parser p(text, nullptr);
  return p.parse_document();
}

Query parse_query(const std::string& text, const Signature& sig) {
  Parser p(text, &sig);
  Query q = p.parse_single_query();
  q.text = text;
  return q;
}

}  // namespace cekb
