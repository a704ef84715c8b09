#include "qtel/parser.hpp"

#include <cctype>

namespace qtel {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret,
                 LParen, RParen, Comma, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void error(const Token& at, const std::string& what) const {
    fail(ErrorKind::SyntaxError,
         "line " + std::to_string(at.line) + ", column " +
             std::to_string(at.column) + ": " + what);
  }

 private:
  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      bump();
    tok_.line = line_;
    tok_.column = column_;
    tok_.text.clear();
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = Tok::Number;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        tok_.text.push_back(src_[bump()]);
      return;
    }
    if (c >= 'a' && c <= 'z') {
      tok_.kind = Tok::Ident;
      while (pos_ < src_.size() &&
             ((src_[pos_] >= 'a' && src_[pos_] <= 'z') ||
              std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        tok_.text.push_back(src_[bump()]);
      return;
    }
    switch (c) {
      case '+': tok_.kind = Tok::Plus; break;
      case '*': tok_.kind = Tok::Star; break;
      case '/': tok_.kind = Tok::Slash; break;
      case '^': tok_.kind = Tok::Caret; break;
      case '(': tok_.kind = Tok::LParen; break;
      case ')': tok_.kind = Tok::RParen; break;
      case ',': tok_.kind = Tok::Comma; break;
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          tok_.kind = Tok::Arrow;
          bump();
          break;
        }
        tok_.kind = Tok::Minus;
        break;
      default:
        error(tok_, std::string("unexpected character '") + c + "'");
    }
    tok_.text.push_back(c);
    bump();
  }

  size_t bump() {
    size_t at = pos_++;
    if (src_[at] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return at;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token tok_;
};

/// Recursive-descent parser over RatX values; pexpr mode forbids x.
class Parser {
 public:
  Parser(const std::string& src, const ParseOptions& opts)
      : lex_(src), opts_(opts) {}

  RatX expression(bool allow_x) {
    RatX v = product(allow_x);
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      Token op = lex_.take();
      RatX rhs = product(allow_x);
      v = op.kind == Tok::Plus ? v + rhs : v - rhs;
    }
    return v;
  }

  ParamElem param_expression() {
    RatX v = expression(false);
    return v.constant_value();
  }

  int signed_int() {
    int sign = 1;
    if (lex_.peek().kind == Tok::Minus || lex_.peek().kind == Tok::Plus) {
      if (lex_.take().kind == Tok::Minus) sign = -1;
    }
    Token t = expect(Tok::Number, "expected an integer");
    long v = 0;
    for (char c : t.text) {
      v = v * 10 + (c - '0');
      if (v > 1'000'000) lex_.error(t, "integer literal out of range");
    }
    return sign * static_cast<int>(v);
  }

  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) lex_.error(lex_.peek(), what);
    return lex_.take();
  }

  void expect_end() {
    if (lex_.peek().kind != Tok::End)
      lex_.error(lex_.peek(), "unexpected trailing input");
  }

  const Token& peek() const { return lex_.peek(); }
  Token take() { return lex_.take(); }
  [[noreturn]] void error(const Token& at, const std::string& what) {
    lex_.error(at, what);
  }

  SymId symbol(const Token& t) {
    if (t.text == "q") return sym_q();
    if (opts_.declare_new) return sym(t.text);
    auto id = SymbolTable::instance().find(t.text);
    if (!id)
      fail(ErrorKind::UnknownSymbol,
           "line " + std::to_string(t.line) + ", column " +
               std::to_string(t.column) + ": unknown symbol '" + t.text + "'");
    return *id;
  }

 private:
  RatX product(bool allow_x) {
    RatX v = unary(allow_x);
    while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
      Token op = lex_.take();
      RatX rhs = unary(allow_x);
      if (op.kind == Tok::Slash && rhs.is_zero())
        lex_.error(op, "division by zero");
      v = op.kind == Tok::Star ? v * rhs : v / rhs;
    }
    return v;
  }

  RatX unary(bool allow_x) {
    if (lex_.peek().kind == Tok::Minus) {
      Token op = lex_.take();
      (void)op;
      return -unary(allow_x);
    }
    if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      return unary(allow_x);
    }
    return power(allow_x);
  }

  RatX power(bool allow_x) {
    RatX base = primary(allow_x);
    if (lex_.peek().kind != Tok::Caret) return base;
    Token op = lex_.take();
    int e = signed_int();
    if (base.is_zero() && e < 0) lex_.error(op, "division by zero");
    return base.pow(e);
  }

  RatX primary(bool allow_x) {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Number: {
        Token n = lex_.take();
        return RatX(ParamElem(rat_from_string(n.text)));
      }
      case Tok::Ident: {
        Token id = lex_.take();
        if (id.text == "x") {
          if (!allow_x)
            lex_.error(id,
                       "the variable x is not allowed in a parameter "
                       "expression");
          return RatX::x();
        }
        return RatX(PolyX(ParamElem::variable(symbol(id))));
      }
      case Tok::LParen: {
        lex_.take();
        RatX v = expression(allow_x);
        expect(Tok::RParen, "expected ')'");
        return v;
      }
      default:
        lex_.error(t, "expected expression");
    }
  }

  Lexer lex_;
  ParseOptions opts_;
};

}  // namespace

ParamElem parse_param(const std::string& src, const ParseOptions& opts) {
  Parser p(src, opts);
  ParamElem v = p.param_expression();
  p.expect_end();
  return v;
}

RatX parse_ratx(const std::string& src, const ParseOptions& opts) {
  Parser p(src, opts);
  RatX v = p.expression(true);
  p.expect_end();
  return v;
}

QTerm parse_term(const std::string& src, Support support,
                 const ParseOptions& opts) {
  Parser p(src, opts);
  ParamElem coeff(1), geom(1);
  int qquad = 0;
  RatX pre(1);
  std::vector<QFactorial> factors;
  while (true) {
    Token head = p.expect(Tok::Ident, "expected an atom");
    p.expect(Tok::LParen, "expected '('");
    if (head.text == "poch") {
      ParamElem arg = p.param_expression();
      p.expect(Tok::RParen, "expected ')'");
      int exp = 1;
      if (p.peek().kind == Tok::Caret) {
        p.take();
        exp = p.signed_int();
      }
      if (exp != 0) factors.push_back({std::move(arg), exp});
    } else if (head.text == "geom") {
      geom *= p.param_expression();
      p.expect(Tok::RParen, "expected ')'");
    } else if (head.text == "qquad") {
      qquad += p.signed_int();
      p.expect(Tok::RParen, "expected ')'");
    } else if (head.text == "pre") {
      pre *= p.expression(true);
      p.expect(Tok::RParen, "expected ')'");
    } else if (head.text == "const") {
      coeff *= p.param_expression();
      p.expect(Tok::RParen, "expected ')'");
    } else {
      p.error(head, "expected one of poch, geom, qquad, pre, const");
    }
    if (p.peek().kind != Tok::Star) break;
    p.take();
  }
  p.expect_end();
  if (geom.is_zero())
    fail(ErrorKind::SyntaxError, "geom argument must be nonzero");
  return QTerm(std::move(coeff), std::move(geom), qquad, std::move(pre),
               std::move(factors), support);
}

std::map<SymId, ParamElem> parse_substitution(const std::string& src,
                                              const ParseOptions& opts) {
  Parser p(src, opts);
  std::map<SymId, ParamElem> out;
  while (true) {
    Token id = p.expect(Tok::Ident, "expected a symbol");
    if (id.text == "q" || id.text == "x")
      fail(ErrorKind::InvalidSubstitution,
           "the reserved symbol '" + id.text + "' cannot be substituted");
    SymId target = p.symbol(id);
    p.expect(Tok::Arrow, "expected '->'");
    ParamElem value = p.param_expression();
    if (value.is_zero())
      fail(ErrorKind::InvalidSubstitution,
           "substitution value for '" + id.text + "' must be nonzero");
    if (!out.emplace(target, std::move(value)).second)
      fail(ErrorKind::InvalidSubstitution,
           "symbol '" + id.text + "' substituted twice");
    if (p.peek().kind != Tok::Comma) break;
    p.take();
  }
  p.expect_end();
  return out;
}

}  // namespace qtel
