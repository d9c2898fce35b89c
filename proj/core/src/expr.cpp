#include "inflab/expr.hpp"

#include <cmath>
#include <sstream>

namespace inflab {

struct Expr::Node {
  enum class Op { Const, Rho, Zeta, Profile, Add, Mul, Neg, Affine, Sin, Cos, Exp } op = Op::Const;
  double a = 0, b = 0;
  int d = 0;
  std::shared_ptr<const Profile> profile;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expr::Node;
using Op = Node::Op;

std::shared_ptr<const Node> make(Node n) { return std::make_shared<const Node>(std::move(n)); }

RealJet eval(const Node& n, double center, int order) {
  switch (n.op) {
    case Op::Const:
      return RealJet::constant(n.a, order);
    case Op::Rho:
      return RealJet::variable(center, order);
    case Op::Zeta: {
      if (center == 0.0) throw DomainError("zeta is singular at rho = 0");
      return reciprocal(RealJet::variable(center, order)) * n.a;
    }
    case Op::Profile: {
      RealJet inner = eval(*n.lhs, center, order);
      return compose(n.profile->jet(inner.value(), n.d, order), inner);
    }
    case Op::Add:
      return eval(*n.lhs, center, order) + eval(*n.rhs, center, order);
    case Op::Mul:
      return eval(*n.lhs, center, order) * eval(*n.rhs, center, order);
    case Op::Neg:
      return -eval(*n.lhs, center, order);
    case Op::Affine:
      return eval(*n.lhs, center, order) * n.a + n.b;
    case Op::Sin:
      return sin(eval(*n.lhs, center, order));
    case Op::Cos:
      return cos(eval(*n.lhs, center, order));
    case Op::Exp:
      return exp(eval(*n.lhs, center, order));
  }
  return RealJet(order);
}

void print(const Node& n, std::ostream& out) {
  switch (n.op) {
    case Op::Const: out << n.a; return;
    case Op::Rho: out << "rho"; return;
    case Op::Zeta: out << "zeta"; return;
    case Op::Profile:
      out << (n.profile->kind() == Profile::Kind::F ? "f" : "g");
      if (n.d != 0) out << "^(" << n.d << ")";
      out << "(";
      print(*n.lhs, out);
      out << ")";
      return;
    case Op::Add:
    case Op::Mul:
      out << "(";
      print(*n.lhs, out);
      out << (n.op == Op::Add ? " + " : " * ");
      print(*n.rhs, out);
      out << ")";
      return;
    case Op::Neg:
      out << "-";
      print(*n.lhs, out);
      return;
    case Op::Affine:
      out << "(" << n.a << "*";
      print(*n.lhs, out);
      out << " + " << n.b << ")";
      return;
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
      out << (n.op == Op::Sin ? "sin(" : n.op == Op::Cos ? "cos(" : "exp(");
      print(*n.lhs, out);
      out << ")";
      return;
  }
}

Expr::Node unary(Op op, const Expr& x) {
  Node n;
  n.op = op;
  n.lhs = x.node();
  return n;
}

}  // namespace

Expr Expr::constant(double v) {
  Node n;
  n.op = Op::Const;
  n.a = v;
  return Expr(make(n));
}

Expr Expr::rho() { return Expr(make([] { Node n; n.op = Op::Rho; return n; }())); }

Expr Expr::zeta(double eps, int N, double mu) {
  Node n;
  n.op = Op::Zeta;
  n.a = std::pow(eps, -N) / mu;
  return Expr(make(n));
}

Expr Expr::profile(const Profile& p, const Expr& arg, int d) {
  Node n;
  n.op = Op::Profile;
  n.profile = std::make_shared<const Profile>(p);
  n.d = d;
  n.lhs = arg.node();
  return Expr(make(n));
}

Expr operator+(const Expr& a, const Expr& b) {
  Node n;
  n.op = Op::Add;
  n.lhs = a.node();
  n.rhs = b.node();
  return Expr(make(n));
}

Expr operator*(const Expr& a, const Expr& b) {
  Node n;
  n.op = Op::Mul;
  n.lhs = a.node();
  n.rhs = b.node();
  return Expr(make(n));
}

Expr operator-(const Expr& a) { return Expr(make(unary(Op::Neg, a))); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr affine(double a, const Expr& x, double b) {
  Node n = unary(Op::Affine, x);
  n.a = a;
  n.b = b;
  return Expr(make(n));
}

Expr sin(const Expr& a) { return Expr(make(unary(Op::Sin, a))); }
Expr cos(const Expr& a) { return Expr(make(unary(Op::Cos, a))); }
Expr exp(const Expr& a) { return Expr(make(unary(Op::Exp, a))); }

std::string Expr::str() const {
  std::ostringstream out;
  print(*node_, out);
  return out.str();
}

RealJet taylor_eval(const Expr& fn, double center, int order) { return eval(*fn.node(), center, order); }

}  // namespace inflab
