#include "shieldkit/expr.hpp"

#include <cctype>

#include "shieldkit/error.hpp"

namespace shieldkit {

bool BoolExpr::eval(Letter letter, int width) const {
  switch (kind) {
    case Kind::Const: return value;
    case Kind::Var: return letter_bit(letter, width, var);
    case Kind::Not: return !lhs->eval(letter, width);
    case Kind::And: return lhs->eval(letter, width) && rhs->eval(letter, width);
    case Kind::Or: return lhs->eval(letter, width) || rhs->eval(letter, width);
  }
  return false;
}

namespace {

class ExprParser {
public:
  ExprParser(const std::string& text, const std::vector<std::string>& names,
             int line, int column)
      : text_(text), names_(names), line_(line), base_column_(column) {}

  BoolExpr parse() {
    BoolExpr e = parse_or();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  BoolExpr parse_or() {
    BoolExpr e = parse_and();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      BoolExpr node;
      node.kind = BoolExpr::Kind::Or;
      node.lhs = std::make_unique<BoolExpr>(std::move(e));
      node.rhs = std::make_unique<BoolExpr>(parse_and());
      e = std::move(node);
      skip_space();
    }
    return e;
  }

  BoolExpr parse_and() {
    BoolExpr e = parse_unary();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '&') {
      ++pos_;
      BoolExpr node;
      node.kind = BoolExpr::Kind::And;
      node.lhs = std::make_unique<BoolExpr>(std::move(e));
      node.rhs = std::make_unique<BoolExpr>(parse_unary());
      e = std::move(node);
      skip_space();
    }
    return e;
  }

  BoolExpr parse_unary() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected expression");
    char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      BoolExpr node;
      node.kind = BoolExpr::Kind::Not;
      node.lhs = std::make_unique<BoolExpr>(parse_unary());
      return node;
    }
    if (c == '(') {
      ++pos_;
      BoolExpr e = parse_or();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    fail("unexpected '" + std::string(1, c) + "'");
    return {};
  }

  BoolExpr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "true" || name == "false") {
      BoolExpr e;
      e.value = name == "true";
      return e;
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) {
        BoolExpr e;
        e.kind = BoolExpr::Kind::Var;
        e.var = static_cast<int>(i);
        return e;
      }
    }
    pos_ = start;
    fail("unknown signal '" + name + "'");
    return {};
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(line_, base_column_ + static_cast<int>(pos_), msg);
  }

  const std::string& text_;
  const std::vector<std::string>& names_;
  int line_;
  int base_column_;
  std::size_t pos_ = 0;
};

}  // namespace

BoolExpr parse_expr(const std::string& text, const std::vector<std::string>& names,
                    int line, int column) {
  return ExprParser(text, names, line, column).parse();
}

std::vector<Letter> satisfying_letters(const BoolExpr& expr, int width) {
  std::vector<Letter> result;
  Letter count = 1u << width;
  for (Letter l = 0; l < count; ++l)
    if (expr.eval(l, width)) result.push_back(l);
  return result;
}

}  // namespace shieldkit
