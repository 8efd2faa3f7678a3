#pragma once

#include <string_view>

#include "stieltjes/errors.hpp"
#include "stieltjes/expr/ast.hpp"

namespace stieltjes::expr {

/// Malformed source text. Line and column are 1-based.
class SyntaxError : public InvalidArgument {
 public:
  SyntaxError(const std::string& message, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Grammar (EBNF):
///
///   expr     = term { ("+" | "-") term } ;
///   term     = unary { ("*" | "/") unary } ;
///   unary    = "-" unary | power ;
///   power    = primary [ "^" unary ] ;
///   primary  = number | "x" | func "(" expr ")" | "(" expr ")" | piecewise ;
///   func     = "sin" | "cos" | "exp" | "log" | "abs" | "sign" | "floor" | "sqrt" ;
///   piecewise = "piece" "{" piece { ";" piece } [ ";" ] "}" ;
///   piece    = ( guard | "else" ) ":" expr ;
///   guard    = "x" cmp literal | literal cmp "x" | literal lt "x" lt literal ;
///   cmp      = "<" | "<=" | ">" | ">=" | "==" ;
///   lt       = "<" | "<=" ;
///   literal  = [ "-" ] number ;
///   number   = digits [ "." digits ] [ exponent ] | "." digits [ exponent ] ;
///
/// "else" may only be the last piece. Throws SyntaxError, including for
/// piecewise guards that overlap or leave part of the line uncovered.
ExprPtr parse(std::string_view source);

}  // namespace stieltjes::expr
