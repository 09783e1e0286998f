#ifndef TWODESCENT_CURVE_HPP
#define TWODESCENT_CURVE_HPP

// Integral Weierstrass models y^2 = x^3 + a2 x^2 + a4 x + a6 (a1 = a3 = 0),
// the chord-tangent group law over Q, point counts mod q and torsion.

#include <string>
#include <vector>

#include "twodescent/arith.hpp"

namespace twodescent {

using Rat = mpq_class;

class Curve {
 public:
  /// Throws DomainError("singular model") when the discriminant vanishes.
  Curve(Int a2, Int a4, Int a6);

  const Int& a2() const { return a2_; }
  const Int& a4() const { return a4_; }
  const Int& a6() const { return a6_; }

  /// x^3 + a2 x^2 + a4 x + a6 at x.
  Rat rhs(const Rat& x) const;
  Int rhs(const Int& x) const;

  /// "y^2 = x^3 + 6x^2 + x" style.
  std::string str() const;

  bool operator==(const Curve&) const = default;

 private:
  Int a2_, a4_, a6_;
};

/// Affine point or the point at infinity O.
class Point {
 public:
  Point() = default;
  Point(Rat x, Rat y) : finite_(true), x_(std::move(x)), y_(std::move(y)) {}

  static Point infinity() { return Point(); }

  bool is_infinity() const { return !finite_; }
  const Rat& x() const { return x_; }
  const Rat& y() const { return y_; }

  /// "(x, y)" or "O".
  std::string str() const;

  friend bool operator==(const Point& a, const Point& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || (a.x_ == b.x_ && a.y_ == b.y_);
  }

 private:
  bool finite_ = false;
  Rat x_, y_;
};

/// Abelian invariants [n1, n2] with n1 | n2; empty means trivial.
struct TorsionGroup {
  std::vector<unsigned> invariants;
  std::vector<Point> generators;

  unsigned order() const;
  /// "trivial", "Z/6", "Z/2 x Z/4".
  std::string name() const;
  /// True when the invariants are one of the fifteen groups Mazur allows.
  bool is_mazur() const;

  bool operator==(const TorsionGroup&) const = default;
};

TorsionGroup make_torsion(std::vector<unsigned> invariants, std::vector<Point> generators = {});

Int discriminant(const Curve& E);

/// j-invariant of a model with a2 = 0: -1728 (4A)^3 / Delta.
Rat j_invariant(const Curve& E);

bool on_curve(const Curve& E, const Point& P);

Point neg(const Curve& E, const Point& P);
Point add(const Curve& E, const Point& P, const Point& Q);
Point mul(const Curve& E, const Int& m, const Point& P);

/// Order of P if it is at most `limit`, else 0.
unsigned point_order(const Curve& E, const Point& P, unsigned limit = 12);

/// #E(F_q) including O, for an odd prime q of good reduction.
Int count_points_mod(const Curve& E, const Int& q);

/// gcd of #E(F_q) over the first k odd primes of good reduction; a multiple
/// of the torsion order since torsion injects under good reduction.
Int torsion_order_bound(const Curve& E, unsigned k);

/// Exact torsion subgroup. Candidates are the integral points with y = 0 or
/// y^2 | Delta; each is kept iff its multiples stay integral and reach O
/// within 12 steps.
TorsionGroup torsion_subgroup(const Curve& E);

/// Integral roots of the monic cubic x^3 + b x^2 + c x + d, ascending.
std::vector<Int> integer_roots_monic_cubic(const Int& b, const Int& c, const Int& d);

/// y^2 = x^3 + c^3 shifted by x -> x - c, i.e. (-3c, 3c^2, 0).
Curve from_cubic_const(const Int& c);

}  // namespace twodescent

#endif  // TWODESCENT_CURVE_HPP
