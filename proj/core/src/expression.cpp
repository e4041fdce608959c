#include "tiltmom/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace tiltmom {

namespace {

// ---------------------------------------------------------------------------
// Truncated Taylor series of order 4: c[k] = f^(k)(x0) / k!.
// ---------------------------------------------------------------------------

struct Taylor {
  std::array<double, 5> c{};
};

Taylor taylor_const(double v) {
  Taylor t;
  t.c[0] = v;
  return t;
}

Taylor taylor_var(double x) {
  Taylor t;
  t.c[0] = x;
  t.c[1] = 1.0;
  return t;
}

Taylor operator+(const Taylor& a, const Taylor& b) {
  Taylor r;
  for (int k = 0; k < 5; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

Taylor operator-(const Taylor& a, const Taylor& b) {
  Taylor r;
  for (int k = 0; k < 5; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  Taylor r;
  for (int k = 0; k < 5; ++k)
    for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
  return r;
}

Taylor operator/(const Taylor& a, const Taylor& b) {
  if (b.c[0] == 0.0) throw EvalError("division by zero");
  Taylor q;
  for (int k = 0; k < 5; ++k) {
    double s = a.c[k];
    for (int j = 1; j <= k; ++j) s -= b.c[j] * q.c[k - j];
    q.c[k] = s / b.c[0];
  }
  return q;
}

Taylor taylor_exp(const Taylor& a) {
  Taylor e;
  e.c[0] = std::exp(a.c[0]);
  for (int k = 1; k < 5; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.c[j] * e.c[k - j];
    e.c[k] = s / k;
  }
  return e;
}

Taylor taylor_log(const Taylor& a) {
  if (!(a.c[0] > 0.0)) throw EvalError("log of non-positive value");
  Taylor l;
  l.c[0] = std::log(a.c[0]);
  for (int k = 1; k < 5; ++k) {
    double s = k * a.c[k];
    for (int j = 1; j < k; ++j) s -= j * l.c[j] * a.c[k - j];
    l.c[k] = s / (k * a.c[0]);
  }
  return l;
}

bool is_small_integer(double p, long& out) {
  if (std::abs(p) > 64.0) return false;
  double r = std::nearbyint(p);
  if (r != p) return false;
  out = static_cast<long>(r);
  return true;
}

Taylor taylor_pow(const Taylor& a, double p) {
  long n = 0;
  if (is_small_integer(p, n)) {
    if (n == 0) return taylor_const(1.0);
    bool neg = n < 0;
    unsigned long e = static_cast<unsigned long>(neg ? -n : n);
    Taylor acc = taylor_const(1.0);
    Taylor base = a;
    while (e > 0) {
      if (e & 1UL) acc = acc * base;
      base = base * base;
      e >>= 1UL;
    }
    if (neg) return taylor_const(1.0) / acc;
    return acc;
  }
  if (!(a.c[0] > 0.0))
    throw EvalError("fractional power of non-positive base");
  Taylor l = taylor_log(a);
  for (double& c : l.c) c *= p;
  return taylor_exp(l);
}

// ---------------------------------------------------------------------------
// Scalar evaluation with the same domain checks.
// ---------------------------------------------------------------------------

template <class T>
T scalar_pow(T base, double p) {
  long n = 0;
  if (is_small_integer(p, n)) {
    if (n == 0) return T(1);
    bool neg = n < 0;
    unsigned long e = static_cast<unsigned long>(neg ? -n : n);
    T acc(1), b = base;
    while (e > 0) {
      if (e & 1UL) acc *= b;
      b *= b;
      e >>= 1UL;
    }
    if (neg) {
      if (acc == T(0)) throw EvalError("division by zero in negative power");
      return T(1) / acc;
    }
    return acc;
  }
  if (!(base > T(0)))
    throw EvalError("fractional power of non-positive base");
  if constexpr (sizeof(T) > sizeof(double))
    return powl(base, static_cast<long double>(p));
  else
    return std::pow(base, p);
}

template <class T>
T eval_scalar(const Expr& e, T x) {
  switch (e.kind) {
    case Expr::Kind::Constant:
      return T(e.value);
    case Expr::Kind::Variable:
      return x;
    case Expr::Kind::Add:
      return eval_scalar(*e.lhs, x) + eval_scalar(*e.rhs, x);
    case Expr::Kind::Sub:
      return eval_scalar(*e.lhs, x) - eval_scalar(*e.rhs, x);
    case Expr::Kind::Mul:
      return eval_scalar(*e.lhs, x) * eval_scalar(*e.rhs, x);
    case Expr::Kind::Div: {
      T d = eval_scalar(*e.rhs, x);
      if (d == T(0)) throw EvalError("division by zero");
      return eval_scalar(*e.lhs, x) / d;
    }
    case Expr::Kind::Pow:
      return scalar_pow(eval_scalar(*e.lhs, x), e.value);
    case Expr::Kind::Exp: {
      T a = eval_scalar(*e.lhs, x);
      if constexpr (sizeof(T) > sizeof(double))
        return expl(a);
      else
        return std::exp(a);
    }
    case Expr::Kind::Log: {
      T a = eval_scalar(*e.lhs, x);
      if (!(a > T(0))) throw EvalError("log of non-positive value");
      if constexpr (sizeof(T) > sizeof(double))
        return logl(a);
      else
        return std::log(a);
    }
  }
  throw EvalError("corrupt expression node");
}

Taylor eval_taylor(const Expr& e, double x) {
  switch (e.kind) {
    case Expr::Kind::Constant:
      return taylor_const(e.value);
    case Expr::Kind::Variable:
      return taylor_var(x);
    case Expr::Kind::Add:
      return eval_taylor(*e.lhs, x) + eval_taylor(*e.rhs, x);
    case Expr::Kind::Sub:
      return eval_taylor(*e.lhs, x) - eval_taylor(*e.rhs, x);
    case Expr::Kind::Mul:
      return eval_taylor(*e.lhs, x) * eval_taylor(*e.rhs, x);
    case Expr::Kind::Div:
      return eval_taylor(*e.lhs, x) / eval_taylor(*e.rhs, x);
    case Expr::Kind::Pow:
      return taylor_pow(eval_taylor(*e.lhs, x), e.value);
    case Expr::Kind::Exp:
      return taylor_exp(eval_taylor(*e.lhs, x));
    case Expr::Kind::Log:
      return taylor_log(eval_taylor(*e.lhs, x));
  }
  throw EvalError("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() &&
           std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c))
      throw ParseError(pos, std::string("expected '") + c + "'");
  }

  double parse_number() {
    skip_ws();
    std::size_t start = pos;
    if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) ++pos;
    while (pos < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[pos])) ||
            src[pos] == '.'))
      ++pos;
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      std::size_t mark = pos;
      ++pos;
      if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) ++pos;
      if (pos < src.size() &&
          std::isdigit(static_cast<unsigned char>(src[pos]))) {
        while (pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos])))
          ++pos;
      } else {
        pos = mark;
      }
    }
    double v = 0.0;
    auto res = std::from_chars(src.data() + start, src.data() + pos, v);
    if (res.ec != std::errc{} || res.ptr == src.data() + start)
      throw ParseError(start, "expected a number");
    pos = static_cast<std::size_t>(res.ptr - src.data());
    return v;
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() &&
           std::isalpha(static_cast<unsigned char>(src[pos])))
      ++pos;
    return std::string(src.substr(start, pos - start));
  }

  ExprPtr parse_expr() {
    bool negate = consume('-');
    ExprPtr acc = parse_term();
    if (negate) acc = make_sub(make_constant(0.0), acc);
    for (;;) {
      if (consume('+'))
        acc = make_add(acc, parse_term());
      else if (consume('-'))
        acc = make_sub(acc, parse_term());
      else
        break;
    }
    return acc;
  }

  ExprPtr parse_term() {
    ExprPtr acc = parse_factor();
    for (;;) {
      if (consume('*'))
        acc = make_mul(acc, parse_factor());
      else if (consume('/'))
        acc = make_div(acc, parse_factor());
      else
        break;
    }
    return acc;
  }

  ExprPtr parse_factor() {
    ExprPtr b = parse_base();
    if (consume('^')) return make_pow(b, parse_number());
    return b;
  }

  ExprPtr parse_base() {
    char c = peek();
    if (c == '(') {
      ++pos;
      ExprPtr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return make_constant(parse_number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      std::string id = parse_ident();
      if (id == "x") return make_variable();
      if (id == "exp" || id == "log") {
        expect('(');
        ExprPtr a = parse_expr();
        expect(')');
        return id == "exp" ? make_exp(std::move(a)) : make_log(std::move(a));
      }
      throw ParseError(start, "unknown identifier '" + id + "'");
    }
    throw ParseError(pos, "expected a number, 'x', '(' or a function name");
  }
};

void print_rec(const ExprPtr& e, std::string& out) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      out += format_double(e->value);
      return;
    case Expr::Kind::Variable:
      out += 'x';
      return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      const char* op = e->kind == Expr::Kind::Add   ? " + "
                       : e->kind == Expr::Kind::Sub ? " - "
                       : e->kind == Expr::Kind::Mul ? " * "
                                                    : " / ";
      out += '(';
      print_rec(e->lhs, out);
      out += op;
      print_rec(e->rhs, out);
      out += ')';
      return;
    }
    case Expr::Kind::Pow:
      out += '(';
      print_rec(e->lhs, out);
      out += '^';
      out += format_double(e->value);
      out += ')';
      return;
    case Expr::Kind::Exp:
    case Expr::Kind::Log:
      out += e->kind == Expr::Kind::Exp ? "exp(" : "log(";
      print_rec(e->lhs, out);
      out += ')';
      return;
  }
}

ExprPtr node(Expr::Kind k, ExprPtr a, ExprPtr b, double v = 0.0) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->value = v;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

}  // namespace

ExprPtr make_constant(double v) {
  return node(Expr::Kind::Constant, nullptr, nullptr, v);
}
ExprPtr make_variable() { return node(Expr::Kind::Variable, nullptr, nullptr); }
ExprPtr make_add(ExprPtr a, ExprPtr b) {
  return node(Expr::Kind::Add, std::move(a), std::move(b));
}
ExprPtr make_sub(ExprPtr a, ExprPtr b) {
  return node(Expr::Kind::Sub, std::move(a), std::move(b));
}
ExprPtr make_mul(ExprPtr a, ExprPtr b) {
  return node(Expr::Kind::Mul, std::move(a), std::move(b));
}
ExprPtr make_div(ExprPtr a, ExprPtr b) {
  return node(Expr::Kind::Div, std::move(a), std::move(b));
}
ExprPtr make_pow(ExprPtr base, double exponent) {
  return node(Expr::Kind::Pow, std::move(base), nullptr, exponent);
}
ExprPtr make_exp(ExprPtr a) { return node(Expr::Kind::Exp, std::move(a), nullptr); }
ExprPtr make_log(ExprPtr a) { return node(Expr::Kind::Log, std::move(a), nullptr); }

namespace {

bool is_const(const ExprPtr& e, double v) {
  return e->kind == Expr::Kind::Constant && e->value == v;
}

ExprPtr simp_add(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make_add(std::move(a), std::move(b));
}

ExprPtr simp_sub(ExprPtr a, ExprPtr b) {
  if (is_const(b, 0.0)) return a;
  return make_sub(std::move(a), std::move(b));
}

ExprPtr simp_mul(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return make_mul(std::move(a), std::move(b));
}

}  // namespace

ExprPtr differentiate(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      return make_constant(0.0);
    case Expr::Kind::Variable:
      return make_constant(1.0);
    case Expr::Kind::Add:
      return simp_add(differentiate(e->lhs), differentiate(e->rhs));
    case Expr::Kind::Sub:
      return simp_sub(differentiate(e->lhs), differentiate(e->rhs));
    case Expr::Kind::Mul:
      return simp_add(simp_mul(differentiate(e->lhs), e->rhs),
                      simp_mul(e->lhs, differentiate(e->rhs)));
    case Expr::Kind::Div:
      return make_div(simp_sub(simp_mul(differentiate(e->lhs), e->rhs),
                               simp_mul(e->lhs, differentiate(e->rhs))),
                      make_pow(e->rhs, 2.0));
    case Expr::Kind::Pow: {
      if (e->value == 0.0) return make_constant(0.0);
      ExprPtr inner = simp_mul(make_constant(e->value),
                               make_pow(e->lhs, e->value - 1.0));
      return simp_mul(std::move(inner), differentiate(e->lhs));
    }
    case Expr::Kind::Exp:
      return simp_mul(make_exp(e->lhs), differentiate(e->lhs));
    case Expr::Kind::Log:
      return make_div(differentiate(e->lhs), e->lhs);
  }
  throw EvalError("corrupt expression node");
}

ExprPtr parse_expression(std::string_view source) {
  Parser p{source};
  ExprPtr e = p.parse_expr();
  if (!p.eof()) throw ParseError(p.pos, "unexpected trailing input");
  return e;
}

std::string print_expression(const ExprPtr& e) {
  std::string out;
  print_rec(e, out);
  return out;
}

double eval_value(const ExprPtr& e, double x) { return eval_scalar(*e, x); }

long double eval_value_ld(const ExprPtr& e, long double x) {
  return eval_scalar(*e, x);
}

Jet4 eval_jet(const ExprPtr& e, double x) {
  Taylor t = eval_taylor(*e, x);
  return Jet4{t.c[0], t.c[1], 2.0 * t.c[2], 6.0 * t.c[3], 24.0 * t.c[4]};
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace tiltmom
