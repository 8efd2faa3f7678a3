#include "stieltjes/expr/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

namespace stieltjes::expr {

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : InvalidArgument("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                      message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  number,
  ident,
  plus,
  minus,
  star,
  slash,
  caret,
  lparen,
  rparen,
  lbrace,
  rbrace,
  semicolon,
  colon,
  lt,
  le,
  gt,
  ge,
  eq,
  end
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (i_ >= s_.size()) {
        t.kind = Tok::end;
        out.push_back(t);
        return out;
      }
      char c = s_[i_];
      if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i_ + 1 < s_.size() &&
                                                          std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) advance();
        t.kind = Tok::ident;
        t.text = std::string(s_.substr(start, i_ - start));
      } else {
        lex_symbol(t, c);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
  }

  void lex_number(Token& t) {
    std::size_t start = i_;
    auto digits = [&] {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) advance();
    };
    digits();
    if (i_ < s_.size() && s_[i_] == '.') {
      advance();
      digits();
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t save = i_;
      int save_col = col_;
      advance();
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) advance();
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        digits();
      } else {
        i_ = save;
        col_ = save_col;
      }
    }
    t.kind = Tok::number;
    t.text = std::string(s_.substr(start, i_ - start));
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, t.number);
    if (ec != std::errc() || ptr != last || !std::isfinite(t.number)) {
      throw SyntaxError("number " + t.text + " is out of range", t.line, t.column);
    }
  }

  void lex_symbol(Token& t, char c) {
    auto two = [&](char next) { return i_ + 1 < s_.size() && s_[i_ + 1] == next; };
    t.text = std::string(1, c);
    switch (c) {
      case '+': t.kind = Tok::plus; break;
      case '-': t.kind = Tok::minus; break;
      case '*': t.kind = Tok::star; break;
      case '/': t.kind = Tok::slash; break;
      case '^': t.kind = Tok::caret; break;
      case '(': t.kind = Tok::lparen; break;
      case ')': t.kind = Tok::rparen; break;
      case '{': t.kind = Tok::lbrace; break;
      case '}': t.kind = Tok::rbrace; break;
      case ';': t.kind = Tok::semicolon; break;
      case ':': t.kind = Tok::colon; break;
      case '<':
        t.kind = two('=') ? Tok::le : Tok::lt;
        break;
      case '>':
        t.kind = two('=') ? Tok::ge : Tok::gt;
        break;
      case '=':
        if (!two('=')) throw SyntaxError("expected '==' ", t.line, t.column);
        t.kind = Tok::eq;
        break;
      default:
        throw SyntaxError("unexpected character '" + t.text + "'", t.line, t.column);
    }
    if (t.kind == Tok::le || t.kind == Tok::ge || t.kind == Tok::eq) {
      t.text += '=';
      advance();
    }
    advance();
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  ExprPtr run() {
    ExprPtr e = expr();
    if (peek().kind != Tok::end) fail("unexpected " + describe(peek()));
    return e;
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  const Token& take() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    take();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw SyntaxError(msg, t.line, t.column);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + ", found " + describe(peek()));
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept(Tok::plus)) lhs = make_binary(BinaryOp::add, lhs, term());
      else if (accept(Tok::minus)) lhs = make_binary(BinaryOp::sub, lhs, term());
      else return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept(Tok::star)) lhs = make_binary(BinaryOp::mul, lhs, unary());
      else if (accept(Tok::slash)) lhs = make_binary(BinaryOp::div, lhs, unary());
      else return lhs;
    }
  }

  ExprPtr unary() {
    if (accept(Tok::minus)) return make_negate(unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (accept(Tok::caret)) return make_binary(BinaryOp::pow, base, unary());
    return base;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number:
        take();
        return make_number(t.number);
      case Tok::lparen: {
        take();
        ExprPtr e = expr();
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident:
        return identifier();
      default:
        fail("unexpected " + describe(t));
    }
  }

  ExprPtr identifier() {
    const Token& t = take();
    if (t.text == "x") return make_variable();
    if (t.text == "piece") return piecewise(t);
    if (auto f = func_from_name(t.text)) {
      expect(Tok::lparen, "'(' after function name");
      ExprPtr arg = expr();
      expect(Tok::rparen, "')'");
      return make_call(*f, arg);
    }
    fail_at(t, "unknown name '" + t.text + "'");
  }

  double literal() {
    bool neg = accept(Tok::minus);
    const Token& t = peek();
    if (t.kind != Tok::number) fail("expected a numeric literal, found " + describe(t));
    take();
    return neg ? -t.number : t.number;
  }

  static bool is_cmp(Tok k) { return k == Tok::lt || k == Tok::le || k == Tok::gt || k == Tok::ge || k == Tok::eq; }

  // Guard "x op c".
  static GuardInterval guard_from(Tok op, double c) {
    GuardInterval g;
    switch (op) {
      case Tok::lt:
      case Tok::le:
        g.hi = c;
        g.hi_closed = op == Tok::le;
        break;
      case Tok::gt:
      case Tok::ge:
        g.lo = c;
        g.lo_closed = op == Tok::ge;
        break;
      default:
        g.lo = g.hi = c;
        g.lo_closed = g.hi_closed = true;
        break;
    }
    return g;
  }

  static Tok flip(Tok op) {
    switch (op) {
      case Tok::lt: return Tok::gt;
      case Tok::le: return Tok::ge;
      case Tok::gt: return Tok::lt;
      case Tok::ge: return Tok::le;
      default: return op;
    }
  }

  GuardInterval guard() {
    if (peek().kind == Tok::ident && peek().text == "x") {
      take();
      Tok op = peek().kind;
      if (!is_cmp(op)) fail("expected a comparison after x, found " + describe(peek()));
      take();
      return guard_from(op, literal());
    }
    const Token& start = peek();
    double c1 = literal();
    Tok op1 = peek().kind;
    if (!is_cmp(op1)) fail("expected a comparison, found " + describe(peek()));
    take();
    if (!(peek().kind == Tok::ident && peek().text == "x")) fail("expected x, found " + describe(peek()));
    take();
    if (!is_cmp(peek().kind)) return guard_from(flip(op1), c1);
    Tok op2 = take().kind;
    if (!((op1 == Tok::lt || op1 == Tok::le) && (op2 == Tok::lt || op2 == Tok::le))) {
      fail_at(start, "a two-sided guard must read 'a < x < b' (with < or <=)");
    }
    double c2 = literal();
    GuardInterval g;
    g.lo = c1;
    g.lo_closed = op1 == Tok::le;
    g.hi = c2;
    g.hi_closed = op2 == Tok::le;
    return g;
  }

  ExprPtr piecewise(const Token& kw) {
    expect(Tok::lbrace, "'{' after piece");
    std::vector<Piece> pieces;
    ExprPtr otherwise;
    for (;;) {
      if (peek().kind == Tok::rbrace && (!pieces.empty() || otherwise)) break;
      if (otherwise) fail("'else' must be the last piece");
      if (peek().kind == Tok::ident && peek().text == "else") {
        take();
        expect(Tok::colon, "':'");
        otherwise = expr();
      } else {
        GuardInterval g = guard();
        expect(Tok::colon, "':'");
        pieces.push_back({g, expr()});
      }
      if (!accept(Tok::semicolon)) break;
    }
    expect(Tok::rbrace, "'}' or ';'");
    if (auto why = check_guards(pieces, otherwise != nullptr)) fail_at(kw, *why);
    return make_piecewise(std::move(pieces), std::move(otherwise));
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view source) {
  Lexer lexer(source);
  Parser parser(lexer.run());
  return parser.run();
}

}  // namespace stieltjes::expr
