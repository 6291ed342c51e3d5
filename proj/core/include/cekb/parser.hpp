#pragma once

#include <stdexcept>
#include <string>

#include "cekb/ast.hpp"

namespace cekb {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col),
        message_(msg) {}

  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& message() const { return message_; }

 private:
  int line_, col_;
  std::string message_;
};

// Parses a knowledge-base document. Throws ParseError on any lexical,
// syntactic or signature violation; never returns a partially valid KB.
KnowledgeBase parse_kb(const std::string& text);

// Parses a single query line ("prob(HappyEnd(f1)) = ?" or
// "[HappyEnd(v) | Mystery(v)]{v} = ?") against an existing signature.
Query parse_query(const std::string& text, const Signature& sig);

}  // namespace cekb
