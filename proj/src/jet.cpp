#include "cgeom/jet.hpp"

#include <cmath>
#include <string>

#include "cgeom/error.hpp"

namespace cgeom {
namespace {

constexpr double kBaseTol = 1e-10;

bool same_base(const Vec2& a, const Vec2& b) {
  const double scale = 1.0 + std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() <= kBaseTol * scale;
}

void require_same_base(const Jet2& a, const Jet2& b) {
  if (!same_base(a.base(), b.base())) {
    throw GeometryError(ErrorKind::contract, "jet base points differ");
  }
}

void require_same_base(const Jet1& a, const Jet1& b) {
  if (std::abs(a.base() - b.base()) > kBaseTol * (1.0 + std::abs(a.base()))) {
    throw GeometryError(ErrorKind::contract, "jet base parameters differ");
  }
}

constexpr double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Jet2

Jet2::Jet2(const Vec2& base, int order) : base_(base), order_(order) {
  if (order < 0 || order > kJet2MaxOrder) {
    throw GeometryError(ErrorKind::contract, "Jet2 order out of range");
  }
}

Jet2 Jet2::constant(const Vec2& base, double value, int order) {
  Jet2 j(base, order);
  j.c_[0] = value;
  return j;
}

Jet2 Jet2::variable_u(const Vec2& base) {
  Jet2 j(base);
  j.c_[0] = base.x();
  j.c_[index(1, 0)] = 1.0;
  return j;
}

Jet2 Jet2::variable_v(const Vec2& base) {
  Jet2 j(base);
  j.c_[0] = base.y();
  j.c_[index(0, 1)] = 1.0;
  return j;
}

double Jet2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > kJet2MaxOrder) {
    throw GeometryError(ErrorKind::contract, "Jet2 monomial out of range");
  }
  return c_[index(i, j)];
}

void Jet2::set_coeff(int i, int j, double value) {
  if (i < 0 || j < 0 || i + j > order_) {
    throw GeometryError(ErrorKind::contract, "Jet2 monomial beyond validity order");
  }
  c_[index(i, j)] = value;
}

double Jet2::partial(int i, int j) const {
  if (i + j > order_) {
    throw GeometryError(ErrorKind::contract,
                        "partial of order " + std::to_string(i + j) +
                            " requested from a jet valid to order " + std::to_string(order_));
  }
  return coeff(i, j) * factorial(i) * factorial(j);
}

Vec2 Jet2::gradient() const { return {partial(1, 0), partial(0, 1)}; }

Mat2 Jet2::hessian() const {
  Mat2 h;
  h << partial(2, 0), partial(1, 1), partial(1, 1), partial(0, 2);
  return h;
}

double Jet2::evaluate(const Vec2& offset) const {
  double sum = 0.0;
  for (int d = 0; d <= order_; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      sum += c_[index(i, j)] * std::pow(offset.x(), i) * std::pow(offset.y(), j);
    }
  }
  return sum;
}

Jet2 Jet2::derivative_u() const {
  if (order_ == 0) {
    throw GeometryError(ErrorKind::contract, "cannot differentiate an order-0 jet");
  }
  Jet2 r(base_, order_ - 1);
  for (int d = 1; d <= order_; ++d) {
    for (int j = 0; j < d; ++j) {
      const int i = d - j;
      r.c_[index(i - 1, j)] = i * c_[index(i, j)];
    }
  }
  return r;
}

Jet2 Jet2::derivative_v() const {
  if (order_ == 0) {
    throw GeometryError(ErrorKind::contract, "cannot differentiate an order-0 jet");
  }
  Jet2 r(base_, order_ - 1);
  for (int d = 1; d <= order_; ++d) {
    for (int j = 1; j <= d; ++j) {
      const int i = d - j;
      r.c_[index(i, j - 1)] = j * c_[index(i, j)];
    }
  }
  return r;
}

Jet2 Jet2::directional(const Vec2& d) const {
  return derivative_u() * d.x() + derivative_v() * d.y();
}

Jet2 Jet2::truncated(int order) const {
  Jet2 r(base_, std::min(order, order_));
  for (int d = 0; d <= r.order_; ++d) {
    for (int j = 0; j <= d; ++j) r.c_[index(d - j, j)] = c_[index(d - j, j)];
  }
  return r;
}

Jet2& Jet2::operator+=(const Jet2& rhs) {
  require_same_base(*this, rhs);
  *this = truncated(rhs.order_);
  for (std::size_t k = 0; k < kSize; ++k) c_[k] += rhs.c_[k];
  *this = truncated(order_);
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& rhs) { return *this += -rhs; }

Jet2& Jet2::operator*=(const Jet2& rhs) {
  require_same_base(*this, rhs);
  const int order = std::min(order_, rhs.order_);
  Jet2 r(base_, order);
  for (int d1 = 0; d1 <= order; ++d1) {
    for (int j1 = 0; j1 <= d1; ++j1) {
      const double a = c_[index(d1 - j1, j1)];
      if (a == 0.0) continue;
      for (int d2 = 0; d1 + d2 <= order; ++d2) {
        for (int j2 = 0; j2 <= d2; ++j2) {
          r.c_[index(d1 - j1 + d2 - j2, j1 + j2)] += a * rhs.c_[index(d2 - j2, j2)];
        }
      }
    }
  }
  *this = r;
  return *this;
}

Jet2& Jet2::operator+=(double rhs) {
  c_[0] += rhs;
  return *this;
}

Jet2& Jet2::operator*=(double rhs) {
  for (auto& c : c_) c *= rhs;
  return *this;
}

Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  return r *= b;
}
Jet2 operator/(const Jet2& a, const Jet2& b) { return a * (1.0 / b); }
Jet2 operator-(const Jet2& a) { return a * -1.0; }
Jet2 operator+(Jet2 a, double b) { return a += b; }
Jet2 operator+(double a, Jet2 b) { return b += a; }
Jet2 operator-(Jet2 a, double b) { return a += -b; }
Jet2 operator-(double a, const Jet2& b) { return -b + a; }
Jet2 operator*(Jet2 a, double b) { return a *= b; }
Jet2 operator*(double a, Jet2 b) { return b *= a; }
Jet2 operator/(Jet2 a, double b) {
  if (b == 0.0) throw GeometryError(ErrorKind::domain, "jet divided by zero");
  return a *= 1.0 / b;
}
Jet2 operator/(double a, const Jet2& b) {
  const double x = b.value();
  if (x == 0.0) throw GeometryError(ErrorKind::domain, "reciprocal of a jet with zero value");
  return apply_univariate(b, {a / x, -a / (x * x), 2.0 * a / (x * x * x),
                              -6.0 * a / (x * x * x * x)});
}

Jet2 apply_univariate(const Jet2& a, const std::array<double, 4>& derivs) {
  Jet2 delta = a;
  delta.c_[0] = 0.0;
  Jet2 result = Jet2::constant(a.base(), derivs[0], a.order());
  Jet2 power = delta;
  double inv_factorial = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    inv_factorial /= k;
    result += power * (derivs[static_cast<std::size_t>(k)] * inv_factorial);
    if (k < a.order()) power *= delta;
  }
  return result;
}

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return apply_univariate(a, {s, c, -s, -c});
}

Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return apply_univariate(a, {c, -s, -c, s});
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value());
  return apply_univariate(a, {e, e, e, e});
}

Jet2 sqrt(const Jet2& a) {
  const double x = a.value();
  if (!(x > 0.0)) {
    throw GeometryError(ErrorKind::domain, "square root is not smooth at a non-positive value");
  }
  const double r = std::sqrt(x);
  return apply_univariate(a, {r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x)});
}

Jet2 pow(const Jet2& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  Jet2 r = Jet2::constant(a.base(), 1.0, a.order());
  for (int k = 0; k < n; ++k) r *= a;
  return r;
}

double max_abs_diff(const Jet2& a, const Jet2& b) {
  require_same_base(a, b);
  double m = 0.0;
  for (std::size_t k = 0; k < Jet2::kSize; ++k) {
    m = std::max(m, std::abs(a.coeffs()[k] - b.coeffs()[k]));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Jet1

Jet1::Jet1(double base, int order) : base_(base), order_(order) {
  if (order < 0 || order > kJet1MaxOrder) {
    throw GeometryError(ErrorKind::contract, "Jet1 order out of range");
  }
}

Jet1 Jet1::constant(double base, double value, int order) {
  Jet1 j(base, order);
  j.c_[0] = value;
  return j;
}

Jet1 Jet1::variable(double base, int order) {
  Jet1 j(base, order);
  j.c_[0] = base;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet1 Jet1::from_coeffs(double base, std::array<double, kSize> c, int order) {
  Jet1 j(base, order);
  for (int k = 0; k <= order; ++k) j.c_[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)];
  return j;
}

double Jet1::coeff(int k) const {
  if (k < 0 || k > kJet1MaxOrder) throw GeometryError(ErrorKind::contract, "Jet1 index out of range");
  return c_[static_cast<std::size_t>(k)];
}

void Jet1::set_coeff(int k, double value) {
  if (k < 0 || k > order_) throw GeometryError(ErrorKind::contract, "Jet1 index beyond validity order");
  c_[static_cast<std::size_t>(k)] = value;
}

double Jet1::derivative(int k) const {
  if (k > order_) {
    throw GeometryError(ErrorKind::contract,
                        "derivative " + std::to_string(k) + " requested from a jet valid to order " +
                            std::to_string(order_));
  }
  return coeff(k) * factorial(k);
}

Jet1 Jet1::differentiated() const {
  if (order_ == 0) throw GeometryError(ErrorKind::contract, "cannot differentiate an order-0 jet");
  Jet1 r(base_, order_ - 1);
  for (int k = 1; k <= order_; ++k) r.c_[static_cast<std::size_t>(k - 1)] = k * c_[static_cast<std::size_t>(k)];
  return r;
}

Jet1 Jet1::truncated(int order) const {
  Jet1 r(base_, std::min(order, order_));
  for (int k = 0; k <= r.order_; ++k) r.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)];
  return r;
}

Jet1 operator+(Jet1 a, const Jet1& b) {
  require_same_base(a, b);
  a = a.truncated(b.order());
  for (int k = 0; k <= a.order_; ++k) a.c_[static_cast<std::size_t>(k)] += b.c_[static_cast<std::size_t>(k)];
  return a;
}

Jet1 operator-(Jet1 a, const Jet1& b) { return a + (-b); }

Jet1 operator*(const Jet1& a, const Jet1& b) {
  require_same_base(a, b);
  Jet1 r(a.base_, std::min(a.order_, b.order_));
  for (int i = 0; i <= r.order_; ++i) {
    for (int j = 0; i + j <= r.order_; ++j) {
      r.c_[static_cast<std::size_t>(i + j)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
    }
  }
  return r;
}

Jet1 operator*(Jet1 a, double b) {
  for (auto& c : a.c_) c *= b;
  return a;
}

Jet1 operator*(double a, Jet1 b) { return std::move(b) * a; }
Jet1 operator-(const Jet1& a) { return a * -1.0; }

// ---------------------------------------------------------------------------
// JetMap2 and composition

JetMap2::JetMap2(Jet2 first, Jet2 second) : first_(std::move(first)), second_(std::move(second)) {
  require_same_base(first_, second_);
}

JetMap2 JetMap2::identity(const Vec2& base) {
  return {Jet2::variable_u(base), Jet2::variable_v(base)};
}

Mat2 JetMap2::linear_part() const {
  Mat2 m;
  m << first_.coeff(1, 0), first_.coeff(0, 1), second_.coeff(1, 0), second_.coeff(0, 1);
  return m;
}

Jet2 jet_compose(const Jet2& outer, const JetMap2& inner) {
  if (!same_base(inner.value(), outer.base())) {
    throw GeometryError(ErrorKind::contract, "inner map value does not match the outer base point");
  }
  const int order = std::min(outer.order(), inner.order());
  Jet2 du = inner.first().truncated(order);
  Jet2 dv = inner.second().truncated(order);
  du.set_coeff(0, 0, 0.0);
  dv.set_coeff(0, 0, 0.0);

  const Vec2& base = inner.base();
  std::array<Jet2, kJet2MaxOrder + 1> pu;
  std::array<Jet2, kJet2MaxOrder + 1> pv;
  pu[0] = Jet2::constant(base, 1.0, order);
  pv[0] = pu[0];
  for (int k = 1; k <= order; ++k) {
    pu[static_cast<std::size_t>(k)] = pu[static_cast<std::size_t>(k - 1)] * du;
    pv[static_cast<std::size_t>(k)] = pv[static_cast<std::size_t>(k - 1)] * dv;
  }

  Jet2 result(base, order);
  for (int d = 0; d <= order; ++d) {
    for (int j = 0; j <= d; ++j) {
      const double c = outer.coeff(d - j, j);
      if (c == 0.0) continue;
      result += pu[static_cast<std::size_t>(d - j)] * pv[static_cast<std::size_t>(j)] * c;
    }
  }
  return result;
}

JetMap2 jet_compose(const JetMap2& outer, const JetMap2& inner) {
  return {jet_compose(outer.first(), inner), jet_compose(outer.second(), inner)};
}

Jet1 jet_compose(const Jet2& outer, const Jet1& x, const Jet1& y) {
  require_same_base(x, y);
  if (!same_base(Vec2(x.value(), y.value()), outer.base())) {
    throw GeometryError(ErrorKind::contract, "curve germ does not start at the jet base point");
  }
  const int order = std::min({outer.order(), x.order(), y.order()});
  Jet1 dx = x.truncated(order);
  Jet1 dy = y.truncated(order);
  dx.set_coeff(0, 0.0);
  dy.set_coeff(0, 0.0);

  std::array<Jet1, kJet2MaxOrder + 1> px;
  std::array<Jet1, kJet2MaxOrder + 1> py;
  px[0] = Jet1::constant(x.base(), 1.0, order);
  py[0] = px[0];
  for (int k = 1; k <= std::min(order, kJet2MaxOrder); ++k) {
    px[static_cast<std::size_t>(k)] = px[static_cast<std::size_t>(k - 1)] * dx;
    py[static_cast<std::size_t>(k)] = py[static_cast<std::size_t>(k - 1)] * dy;
  }

  Jet1 result(x.base(), order);
  for (int d = 0; d <= std::min(order, kJet2MaxOrder); ++d) {
    for (int j = 0; j <= d; ++j) {
      const double c = outer.coeff(d - j, j);
      if (c == 0.0) continue;
      result = result + px[static_cast<std::size_t>(d - j)] * py[static_cast<std::size_t>(j)] * c;
    }
  }
  return result;
}

JetMap2 jet_invert(const JetMap2& map) {
  const Vec2 value = map.value();
  const Mat2 lin = map.linear_part();
  const double scale = std::max(1.0, lin.cwiseAbs().maxCoeff());
  if (value.cwiseAbs().maxCoeff() > kBaseTol * scale) {
    throw GeometryError(ErrorKind::contract, "jet_invert expects a map germ with value at the origin");
  }
  const double det = lin.determinant();
  if (std::abs(det) <= 1e-14 * lin.cwiseAbs().maxCoeff() * lin.cwiseAbs().maxCoeff() ||
      !std::isfinite(det)) {
    throw GeometryError(ErrorKind::rank, "map germ has a singular linear part");
  }
  const Mat2 inv = lin.inverse();
  const int order = map.order();
  const Vec2 origin = Vec2::Zero();
  const Vec2& p = map.base();

  // Nonlinear remainder of the map at p.
  auto remainder = [&](const Jet2& comp) {
    Jet2 r = comp.truncated(order);
    r.set_coeff(0, 0, 0.0);
    r.set_coeff(1, 0, 0.0);
    r.set_coeff(0, 1, 0.0);
    return r;
  };
  const JetMap2 nonlinear(remainder(map.first()), remainder(map.second()));

  const Jet2 w1 = Jet2::variable_u(origin).truncated(order);
  const Jet2 w2 = Jet2::variable_v(origin).truncated(order);

  auto solve = [&](const Jet2& r1, const Jet2& r2) {
    // p + L^{-1} (r1, r2)
    return JetMap2(inv(0, 0) * r1 + inv(0, 1) * r2 + p.x(), inv(1, 0) * r1 + inv(1, 1) * r2 + p.y());
  };

  JetMap2 phi = solve(w1, w2);
  // Each substitution round fixes one more order.
  for (int round = 1; round < order; ++round) {
    const JetMap2 n = jet_compose(nonlinear, phi);
    phi = solve(w1 - n.first(), w2 - n.second());
  }
  return phi;
}

}  // namespace cgeom
