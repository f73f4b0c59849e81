#pragma once

// Scalar fields on the parameter plane: polynomial coefficient lists, or
// expression trees over smooth primitives. Fields are immutable and cheap to
// copy (shared nodes).

#include <memory>
#include <string>
#include <vector>

#include "cgeom/jet.hpp"

namespace cgeom {

struct Monomial {
  int i = 0;  // power of u
  int j = 0;  // power of v
  double value = 0.0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

class Field {
 public:
  enum class Kind { constant, u, v, polynomial, add, sub, mul, div, neg, power, sin, cos, exp, sqrt };

  /// The zero field.
  Field();

  static Field constant(double c);
  static Field u();
  static Field v();
  static Field polynomial(std::vector<Monomial> monomials);

  Kind kind() const;
  /// Monomials of a polynomial field, empty otherwise.
  const std::vector<Monomial>& monomials() const;
  /// True when the whole tree is polynomial (no transcendental primitive).
  bool is_polynomial() const;

  /// Taylor jet of order 3 at base. Throws ErrorKind::domain where a primitive
  /// is not smooth.
  Jet2 jet(const Vec2& base) const;
  double value(const Vec2& point) const;

  /// The field with u and v replaced by the given fields.
  Field substitute(const Field& u_repl, const Field& v_repl) const;

  std::string to_string() const;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(const Field& a, const Field& b);
  friend Field operator/(const Field& a, const Field& b);
  friend Field operator-(const Field& a);
  friend Field pow(const Field& a, int n);
  friend Field sin(const Field& a);
  friend Field cos(const Field& a);
  friend Field exp(const Field& a);
  friend Field sqrt(const Field& a);

 private:
  struct Node;
  explicit Field(std::shared_ptr<const Node> node);
  static Field make(Kind kind, std::vector<Field> args, double c = 0.0, int n = 0);

  std::shared_ptr<const Node> node_;
};

Field pow(const Field& a, int n);
Field sin(const Field& a);
Field cos(const Field& a);
Field exp(const Field& a);
Field sqrt(const Field& a);

Field operator+(const Field& a, double b);
Field operator+(double a, const Field& b);
Field operator*(double a, const Field& b);
Field operator*(const Field& a, double b);

/// Convenience constructor for the polynomial jet of a monomial list at base;
/// computed by binomial expansion, exact for integer data.
Jet2 polynomial_jet(const std::vector<Monomial>& monomials, const Vec2& base);

}  // namespace cgeom
