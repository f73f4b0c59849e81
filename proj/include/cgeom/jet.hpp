#pragma once

// Truncated Taylor arithmetic.
//
// Coefficients are stored in divided form: coeff(i, j) is the coefficient of
// du^i dv^j, i.e. the raw partial derivative divided by i! j!. Each jet also
// carries its validity order; differentiation lowers it by one and binary
// operations keep the minimum, so a jet never claims more accuracy than its
// inputs.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace cgeom {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline constexpr int kJet2MaxOrder = 3;
inline constexpr int kJet1MaxOrder = 4;

/// Bivariate jet of order <= 3 at a base point of the parameter plane.
class Jet2 {
 public:
  static constexpr std::size_t kSize = 10;

  Jet2() = default;
  explicit Jet2(const Vec2& base, int order = kJet2MaxOrder);

  static Jet2 constant(const Vec2& base, double value, int order = kJet2MaxOrder);
  static Jet2 variable_u(const Vec2& base);
  static Jet2 variable_v(const Vec2& base);

  /// Index of the monomial du^i dv^j in the graded storage.
  static constexpr std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }

  const Vec2& base() const { return base_; }
  int order() const { return order_; }

  double coeff(int i, int j) const;
  void set_coeff(int i, int j, double value);
  /// Raw partial derivative d^{i+j} / du^i dv^j at the base point.
  double partial(int i, int j) const;

  double value() const { return c_[0]; }
  Vec2 gradient() const;
  Mat2 hessian() const;

  /// Taylor polynomial evaluated at base + offset.
  double evaluate(const Vec2& offset) const;

  Jet2 derivative_u() const;
  Jet2 derivative_v() const;
  /// Derivative along the constant vector field d.
  Jet2 directional(const Vec2& d) const;
  /// Copy truncated to a lower validity order.
  Jet2 truncated(int order) const;

  Jet2& operator+=(const Jet2& rhs);
  Jet2& operator-=(const Jet2& rhs);
  Jet2& operator*=(const Jet2& rhs);
  Jet2& operator+=(double rhs);
  Jet2& operator*=(double rhs);

  const std::array<double, kSize>& coeffs() const { return c_; }

 private:
  std::array<double, kSize> c_{};
  Vec2 base_ = Vec2::Zero();
  int order_ = kJet2MaxOrder;

  friend Jet2 apply_univariate(const Jet2&, const std::array<double, 4>&);
};

Jet2 operator+(Jet2 a, const Jet2& b);
Jet2 operator-(Jet2 a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator+(Jet2 a, double b);
Jet2 operator+(double a, Jet2 b);
Jet2 operator-(Jet2 a, double b);
Jet2 operator-(double a, const Jet2& b);
Jet2 operator*(Jet2 a, double b);
Jet2 operator*(double a, Jet2 b);
Jet2 operator/(Jet2 a, double b);
Jet2 operator/(double a, const Jet2& b);

/// phi(a) given phi and its first three derivatives at a.value().
Jet2 apply_univariate(const Jet2& a, const std::array<double, 4>& derivs);

Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 exp(const Jet2& a);
/// Throws ErrorKind::domain when a.value() <= 0.
Jet2 sqrt(const Jet2& a);
Jet2 pow(const Jet2& a, int n);

/// Univariate jet of order <= 4.
class Jet1 {
 public:
  static constexpr std::size_t kSize = 5;

  Jet1() = default;
  explicit Jet1(double base, int order = kJet1MaxOrder);

  static Jet1 constant(double base, double value, int order = kJet1MaxOrder);
  static Jet1 variable(double base, int order = kJet1MaxOrder);
  static Jet1 from_coeffs(double base, std::array<double, kSize> c, int order);

  double base() const { return base_; }
  int order() const { return order_; }
  double coeff(int k) const;
  void set_coeff(int k, double value);
  /// k-th derivative at the base.
  double derivative(int k) const;
  double value() const { return c_[0]; }

  Jet1 differentiated() const;
  Jet1 truncated(int order) const;

  const std::array<double, kSize>& coeffs() const { return c_; }

 private:
  std::array<double, kSize> c_{};
  double base_ = 0.0;
  int order_ = kJet1MaxOrder;

  friend Jet1 operator*(const Jet1& a, const Jet1& b);
  friend Jet1 operator+(Jet1 a, const Jet1& b);
  friend Jet1 operator*(Jet1 a, double b);
};

Jet1 operator+(Jet1 a, const Jet1& b);
Jet1 operator-(Jet1 a, const Jet1& b);
Jet1 operator*(const Jet1& a, const Jet1& b);
Jet1 operator*(Jet1 a, double b);
Jet1 operator*(double a, Jet1 b);
Jet1 operator-(const Jet1& a);

/// Pair of jets over a common base, viewed as a planar map germ.
class JetMap2 {
 public:
  JetMap2() = default;
  /// Throws ErrorKind::contract when the bases differ.
  JetMap2(Jet2 first, Jet2 second);

  static JetMap2 identity(const Vec2& base);

  const Jet2& first() const { return first_; }
  const Jet2& second() const { return second_; }
  const Jet2& operator[](int k) const { return k == 0 ? first_ : second_; }
  const Vec2& base() const { return first_.base(); }
  int order() const { return std::min(first_.order(), second_.order()); }

  Vec2 value() const { return {first_.value(), second_.value()}; }
  /// First-order coefficients, rows = components.
  Mat2 linear_part() const;

 private:
  Jet2 first_;
  Jet2 second_;
};

/// outer o inner. inner's value must coincide with outer's base point.
Jet2 jet_compose(const Jet2& outer, const JetMap2& inner);
JetMap2 jet_compose(const JetMap2& outer, const JetMap2& inner);

/// Restriction of a bivariate jet to a curve germ (x(t), y(t)).
Jet1 jet_compose(const Jet2& outer, const Jet1& x, const Jet1& y);

/// Local inverse of a map germ whose value is the origin. The result is based
/// at the origin and takes the value map.base(). Throws ErrorKind::rank when the
/// linear part is singular.
JetMap2 jet_invert(const JetMap2& map);

/// Largest absolute coefficient difference between jets at the same base.
double max_abs_diff(const Jet2& a, const Jet2& b);

}  // namespace cgeom
