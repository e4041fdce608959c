#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "tiltmom/errors.hpp"

namespace tiltmom {

/// Value and first four derivatives of a univariate function at a point.
struct Jet4 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = 0.0;
};

/// Immutable AST over a single variable x. Constants, x, the four
/// arithmetic operators, powers with a constant exponent, exp and log.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Pow,  // lhs ^ value
    Exp,
    Log,
  };

  Kind kind = Kind::Constant;
  double value = 0.0;  // payload for Constant; exponent for Pow
  ExprPtr lhs;
  ExprPtr rhs;
};

ExprPtr make_constant(double v);
ExprPtr make_variable();
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_sub(ExprPtr a, ExprPtr b);
ExprPtr make_mul(ExprPtr a, ExprPtr b);
ExprPtr make_div(ExprPtr a, ExprPtr b);
ExprPtr make_pow(ExprPtr base, double exponent);
ExprPtr make_exp(ExprPtr a);
ExprPtr make_log(ExprPtr a);

/// Grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' number)?
///   base   := number | 'x' | '(' expr ')' | ('exp'|'log') '(' expr ')'
/// Whitespace is insignificant; numbers are decimal literals. A leading
/// unary minus is accepted so printed negative constants round-trip.
ExprPtr parse_expression(std::string_view source);

/// Prints a fully parenthesized form that parses back to an equivalent AST.
std::string print_expression(const ExprPtr& e);

/// Plain evaluation. Throws EvalError on domain violations; never returns
/// a silent NaN for them.
double eval_value(const ExprPtr& e, double x);

/// Extended-precision evaluation, used where exponent cancellation matters.
long double eval_value_ld(const ExprPtr& e, long double x);

/// Value and derivatives 1..4 via truncated-Taylor (jet) arithmetic.
Jet4 eval_jet(const ExprPtr& e, double x);

/// Symbolic derivative with respect to x, lightly simplified (zero and one
/// constants folded away).  Needed where a derivative must be evaluated in
/// extended precision, which the jet path cannot provide.
ExprPtr differentiate(const ExprPtr& e);

/// Shortest decimal representation that round-trips through from_chars.
std::string format_double(double v);

}  // namespace tiltmom
