#include "cgeom/field.hpp"

#include <cmath>
#include <sstream>

#include "cgeom/error.hpp"

namespace cgeom {

struct Field::Node {
  Kind kind = Kind::constant;
  double c = 0.0;
  int n = 0;
  std::vector<Monomial> monomials;
  std::vector<Field> args;
};

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int m = 1; m <= k; ++m) r = r * (n - k + m) / m;
  return r;
}

}  // namespace

Jet2 polynomial_jet(const std::vector<Monomial>& monomials, const Vec2& base) {
  Jet2 jet(base);
  std::array<double, Jet2::kSize> c{};
  for (const auto& m : monomials) {
    if (m.i < 0 || m.j < 0) throw GeometryError(ErrorKind::contract, "negative monomial exponent");
    for (int a = 0; a <= std::min(m.i, kJet2MaxOrder); ++a) {
      for (int b = 0; a + b <= kJet2MaxOrder && b <= m.j; ++b) {
        c[Jet2::index(a, b)] += m.value * binomial(m.i, a) * std::pow(base.x(), m.i - a) *
                                binomial(m.j, b) * std::pow(base.y(), m.j - b);
      }
    }
  }
  for (int d = 0; d <= kJet2MaxOrder; ++d) {
    for (int j = 0; j <= d; ++j) jet.set_coeff(d - j, j, c[Jet2::index(d - j, j)]);
  }
  return jet;
}

Field::Field() : Field(constant(0.0)) {}

Field::Field(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Field Field::make(Kind kind, std::vector<Field> args, double c, int n) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->c = c;
  node->n = n;
  node->args = std::move(args);
  return Field(std::move(node));
}

Field Field::constant(double c) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::constant;
  node->c = c;
  return Field(std::move(node));
}

Field Field::u() { return make(Kind::u, {}); }
Field Field::v() { return make(Kind::v, {}); }

Field Field::polynomial(std::vector<Monomial> monomials) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::polynomial;
  node->monomials = std::move(monomials);
  return Field(std::move(node));
}

Field::Kind Field::kind() const { return node_->kind; }

const std::vector<Monomial>& Field::monomials() const { return node_->monomials; }

bool Field::is_polynomial() const {
  switch (node_->kind) {
    case Kind::sin:
    case Kind::cos:
    case Kind::exp:
    case Kind::sqrt:
    case Kind::div:
      return false;
    default:
      break;
  }
  for (const auto& a : node_->args) {
    if (!a.is_polynomial()) return false;
  }
  return true;
}

Jet2 Field::jet(const Vec2& base) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return Jet2::constant(base, n.c);
    case Kind::u: return Jet2::variable_u(base);
    case Kind::v: return Jet2::variable_v(base);
    case Kind::polynomial: return polynomial_jet(n.monomials, base);
    case Kind::add: return n.args[0].jet(base) + n.args[1].jet(base);
    case Kind::sub: return n.args[0].jet(base) - n.args[1].jet(base);
    case Kind::mul: return n.args[0].jet(base) * n.args[1].jet(base);
    case Kind::div: return n.args[0].jet(base) / n.args[1].jet(base);
    case Kind::neg: return -n.args[0].jet(base);
    case Kind::power: return cgeom::pow(n.args[0].jet(base), n.n);
    case Kind::sin: return cgeom::sin(n.args[0].jet(base));
    case Kind::cos: return cgeom::cos(n.args[0].jet(base));
    case Kind::exp: return cgeom::exp(n.args[0].jet(base));
    case Kind::sqrt: return cgeom::sqrt(n.args[0].jet(base));
  }
  throw GeometryError(ErrorKind::contract, "unknown field node");
}

double Field::value(const Vec2& p) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return n.c;
    case Kind::u: return p.x();
    case Kind::v: return p.y();
    case Kind::polynomial: {
      double s = 0.0;
      for (const auto& m : n.monomials) s += m.value * std::pow(p.x(), m.i) * std::pow(p.y(), m.j);
      return s;
    }
    case Kind::add: return n.args[0].value(p) + n.args[1].value(p);
    case Kind::sub: return n.args[0].value(p) - n.args[1].value(p);
    case Kind::mul: return n.args[0].value(p) * n.args[1].value(p);
    case Kind::div: {
      const double d = n.args[1].value(p);
      if (d == 0.0) throw GeometryError(ErrorKind::domain, "field division by zero");
      return n.args[0].value(p) / d;
    }
    case Kind::neg: return -n.args[0].value(p);
    case Kind::power: return std::pow(n.args[0].value(p), n.n);
    case Kind::sin: return std::sin(n.args[0].value(p));
    case Kind::cos: return std::cos(n.args[0].value(p));
    case Kind::exp: return std::exp(n.args[0].value(p));
    case Kind::sqrt: {
      const double x = n.args[0].value(p);
      if (x < 0.0) throw GeometryError(ErrorKind::domain, "square root of a negative value");
      return std::sqrt(x);
    }
  }
  throw GeometryError(ErrorKind::contract, "unknown field node");
}

Field Field::substitute(const Field& u_repl, const Field& v_repl) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return *this;
    case Kind::u: return u_repl;
    case Kind::v: return v_repl;
    case Kind::polynomial: {
      Field sum = constant(0.0);
      for (const auto& m : n.monomials) {
        sum = sum + m.value * (cgeom::pow(u_repl, m.i) * cgeom::pow(v_repl, m.j));
      }
      return sum;
    }
    default: {
      std::vector<Field> args;
      args.reserve(n.args.size());
      for (const auto& a : n.args) args.push_back(a.substitute(u_repl, v_repl));
      return make(n.kind, std::move(args), n.c, n.n);
    }
  }
}

std::string Field::to_string() const {
  const Node& n = *node_;
  std::ostringstream os;
  os.precision(17);
  switch (n.kind) {
    case Kind::constant: os << n.c; break;
    case Kind::u: os << "u"; break;
    case Kind::v: os << "v"; break;
    case Kind::polynomial: {
      os << "poly[";
      for (std::size_t k = 0; k < n.monomials.size(); ++k) {
        const auto& m = n.monomials[k];
        os << (k ? " " : "") << m.value << "*u^" << m.i << "*v^" << m.j;
      }
      os << "]";
      break;
    }
    case Kind::add: os << "(" << n.args[0].to_string() << " + " << n.args[1].to_string() << ")"; break;
    case Kind::sub: os << "(" << n.args[0].to_string() << " - " << n.args[1].to_string() << ")"; break;
    case Kind::mul: os << "(" << n.args[0].to_string() << " * " << n.args[1].to_string() << ")"; break;
    case Kind::div: os << "(" << n.args[0].to_string() << " / " << n.args[1].to_string() << ")"; break;
    case Kind::neg: os << "-(" << n.args[0].to_string() << ")"; break;
    case Kind::power: os << "(" << n.args[0].to_string() << ")^" << n.n; break;
    case Kind::sin: os << "sin(" << n.args[0].to_string() << ")"; break;
    case Kind::cos: os << "cos(" << n.args[0].to_string() << ")"; break;
    case Kind::exp: os << "exp(" << n.args[0].to_string() << ")"; break;
    case Kind::sqrt: os << "sqrt(" << n.args[0].to_string() << ")"; break;
  }
  return os.str();
}

Field operator+(const Field& a, const Field& b) { return Field::make(Field::Kind::add, {a, b}); }
Field operator-(const Field& a, const Field& b) { return Field::make(Field::Kind::sub, {a, b}); }
Field operator*(const Field& a, const Field& b) { return Field::make(Field::Kind::mul, {a, b}); }
Field operator/(const Field& a, const Field& b) { return Field::make(Field::Kind::div, {a, b}); }
Field operator-(const Field& a) { return Field::make(Field::Kind::neg, {a}); }
Field pow(const Field& a, int n) {
  if (n == 0) return Field::constant(1.0);
  if (n == 1) return a;
  return Field::make(Field::Kind::power, {a}, 0.0, n);
}
Field sin(const Field& a) { return Field::make(Field::Kind::sin, {a}); }
Field cos(const Field& a) { return Field::make(Field::Kind::cos, {a}); }
Field exp(const Field& a) { return Field::make(Field::Kind::exp, {a}); }
Field sqrt(const Field& a) { return Field::make(Field::Kind::sqrt, {a}); }

Field operator+(const Field& a, double b) { return a + Field::constant(b); }
Field operator+(double a, const Field& b) { return Field::constant(a) + b; }
Field operator*(double a, const Field& b) { return Field::constant(a) * b; }
Field operator*(const Field& a, double b) { return a * Field::constant(b); }

}  // namespace cgeom
