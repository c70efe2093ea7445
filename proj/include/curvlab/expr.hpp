#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvlab/jet.hpp"

// Scalar expression language for user-supplied field entries.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-') factor | power
//   power  := primary ('^' signed-integer)?
//   primary:= number | 'x1'..'x4' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'
//
// Exponents are integers so evaluation stays total over jets at nonpositive
// bases. Evaluation is generic over the scalar type (double, Jet1, Jet2).

namespace curvlab {

// Bring the libm overloads into scope so eval<double> resolves alongside the
// jet overloads defined in this namespace.
using std::atan;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t col)
      : std::runtime_error("parse error at column " + std::to_string(col + 1) +
                           ": " + msg),
        column(col) {}
  std::size_t column;
};

enum class ExprOp {
  kConst,
  kVar,  // index in [0,4)
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kPow,  // integer exponent in `ivalue`
  kSin,
  kCos,
  kTan,
  kExp,
  kLog,
  kSqrt,
  kSinh,
  kCosh,
  kTanh,
  kAtan,
};

struct ExprNode {
  ExprOp op;
  double value = 0;      // kConst
  int var = 0;           // kVar
  long long ivalue = 0;  // kPow exponent
  int lhs = -1, rhs = -1;
};

class Expr {
 public:
  static Expr parse(const std::string& text);

  template <class T>
  T eval(const std::array<T, 4>& x) const {
    std::vector<T> st;
    st.reserve(nodes_.size());
    // Nodes are stored in postorder (children precede parents), so a single
    // left-to-right pass with an explicit stack evaluates the tree.
    for (const ExprNode& n : nodes_) {
      switch (n.op) {
        case ExprOp::kConst:
          st.push_back(T(n.value));
          break;
        case ExprOp::kVar:
          st.push_back(x[static_cast<std::size_t>(n.var)]);
          break;
        case ExprOp::kNeg:
          st.back() = -st.back();
          break;
        case ExprOp::kPow:
          st.back() = pow_int(st.back(), n.ivalue);
          break;
        case ExprOp::kAdd:
        case ExprOp::kSub:
        case ExprOp::kMul:
        case ExprOp::kDiv: {
          T b = st.back();
          st.pop_back();
          T a = st.back();
          st.pop_back();
          switch (n.op) {
            case ExprOp::kAdd: st.push_back(a + b); break;
            case ExprOp::kSub: st.push_back(a - b); break;
            case ExprOp::kMul: st.push_back(a * b); break;
            default: st.push_back(a / b); break;
          }
          break;
        }
        case ExprOp::kSin: st.back() = sin(st.back()); break;
        case ExprOp::kCos: st.back() = cos(st.back()); break;
        case ExprOp::kTan: st.back() = tan(st.back()); break;
        case ExprOp::kExp: st.back() = exp(st.back()); break;
        case ExprOp::kLog: st.back() = log(st.back()); break;
        case ExprOp::kSqrt: st.back() = sqrt(st.back()); break;
        case ExprOp::kSinh: st.back() = sinh(st.back()); break;
        case ExprOp::kCosh: st.back() = cosh(st.back()); break;
        case ExprOp::kTanh: st.back() = tanh(st.back()); break;
        case ExprOp::kAtan: st.back() = atan(st.back()); break;
      }
    }
    return st.back();
  }

  const std::string& text() const { return text_; }

 private:
  std::vector<ExprNode> nodes_;  // postorder
  std::string text_;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(const std::string& s, std::vector<ExprNode>& out)
      : s_(s), out_(out) {}

  void run() {
    expression();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
  }

 private:
  const std::string& s_;
  std::vector<ExprNode>& out_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void emit(ExprNode n) { out_.push_back(n); }

  void expression() {
    term();
    for (;;) {
      if (eat('+')) {
        term();
        emit({ExprOp::kAdd});
      } else if (eat('-')) {
        term();
        emit({ExprOp::kSub});
      } else {
        return;
      }
    }
  }

  void term() {
    factor();
    for (;;) {
      if (eat('*')) {
        factor();
        emit({ExprOp::kMul});
      } else if (eat('/')) {
        factor();
        emit({ExprOp::kDiv});
      } else {
        return;
      }
    }
  }

  void factor() {
    if (eat('-')) {
      factor();
      emit({ExprOp::kNeg});
      return;
    }
    if (eat('+')) {
      factor();
      return;
    }
    power();
  }

  void power() {
    primary();
    while (eat('^')) {
      skip_ws();
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        neg = s_[pos_] == '-';
        ++pos_;
      }
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected integer exponent after '^'");
      long long e = 0;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_] - '0');
        if (e > 64) fail("exponent too large");
        ++pos_;
      }
      ExprNode n{ExprOp::kPow};
      n.ivalue = neg ? -e : e;
      emit(n);
    }
  }

  void primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      number();
      return;
    }
    if (c == '(') {
      ++pos_;
      expression();
      if (!eat(')')) fail("expected ')'");
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      identifier();
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    ExprNode n{ExprOp::kConst};
    n.value = v;
    emit(n);
  }

  void identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string id = s_.substr(start, pos_ - start);

    if (id.size() == 2 && id[0] == 'x' && id[1] >= '1' && id[1] <= '4') {
      ExprNode n{ExprOp::kVar};
      n.var = id[1] - '1';
      emit(n);
      return;
    }
    if (id == "pi") {
      ExprNode n{ExprOp::kConst};
      n.value = kPi;
      emit(n);
      return;
    }
    if (id == "e") {
      ExprNode n{ExprOp::kConst};
      n.value = 2.71828182845904523536028747135266250;
      emit(n);
      return;
    }

    ExprOp fn;
    if (id == "sin") fn = ExprOp::kSin;
    else if (id == "cos") fn = ExprOp::kCos;
    else if (id == "tan") fn = ExprOp::kTan;
    else if (id == "exp") fn = ExprOp::kExp;
    else if (id == "log") fn = ExprOp::kLog;
    else if (id == "sqrt") fn = ExprOp::kSqrt;
    else if (id == "sinh") fn = ExprOp::kSinh;
    else if (id == "cosh") fn = ExprOp::kCosh;
    else if (id == "tanh") fn = ExprOp::kTanh;
    else if (id == "atan") fn = ExprOp::kAtan;
    else {
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    if (!eat('(')) fail("expected '(' after function name");
    expression();
    if (!eat(')')) fail("expected ')'");
    emit({fn});
  }
};

}  // namespace detail

inline Expr Expr::parse(const std::string& text) {
  Expr e;
  e.text_ = text;
  detail::ExprParser(text, e.nodes_).run();
  return e;
}

}  // namespace curvlab
