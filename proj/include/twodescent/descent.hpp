#ifndef TWODESCENT_DESCENT_HPP
#define TWODESCENT_DESCENT_HPP

// Descent via 2-isogeny for E: y^2 = x^3 + a x^2 + b x.
//
//   E  --phi-->  E': y^2 = x^3 - 2a x^2 + (a^2 - 4b) x  --phi_hat-->  E'' = (4a, 16b, 0) ~ E
//
// A square class d lies in the phi-Selmer set iff the quartic
//   C_d: d w^2 = d^2 - 2 a d z^2 + (a^2 - 4b) z^4
// has points over R and every Q_p with p in S = {2} u {p | b (a^2 - 4b)}.
// A rational point (z, w) with z != 0 lifts to (d/z^2, -d w/z^3) on E',
// whose x-coordinate has square class d.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twodescent/curve.hpp"
#include "twodescent/localsolve.hpp"

namespace twodescent {

struct IsogenyPair {
  Curve E;
  Curve Eprime;

  /// E'' = (4a, 16b, 0), isomorphic to E through (x, y) -> (x/4, y/8).
  Curve second() const;
};

/// Throws DomainError unless a6 = 0 and both E and E' are nonsingular.
IsogenyPair isogenous_curve(const Curve& E);

/// (x, y) -> (y^2/x^2, y (b - x^2)/x^2); O and (0,0) go to O.
Point phi_map(const IsogenyPair& pair, const Point& P);

/// The isomorphism E'' -> E, (x, y) -> (x/4, y/8).
Point from_second(const Point& P);

/// Connecting map on a curve C = (alpha, beta, 0): (x, y) -> x,
/// O -> 1, (0, 0) -> beta.
SquareClass delta_class(const Curve& C, const Point& P);

struct BadSet {
  std::vector<Int> primes;  // ascending, always contains 2
  bool includes_infinity = true;
};

BadSet bad_set(const Curve& E);

/// All 2^(1 + #primes) classes of Q(S, 2), sorted by AbsThenSign.
std::vector<SquareClass> qs2(const BadSet& S);

using SelmerSet = std::set<SquareClass, AbsThenSign>;

/// F_2-dimension of a subgroup given as a set (log2 of its size).
unsigned dim2(const SelmerSet& set);
bool is_subgroup(const SelmerSet& set);
/// Subgroup generated by the given classes.
SelmerSet span(const SelmerSet& generators);

/// Cleared homogeneous space Y^2 = d (a^2-4b) z^4 - 2 a d^2 z^2 + d^3, Y = d w.
QuarticForm hom_space(const Curve& E, const SquareClass& d);

/// Per-class record of a local test: where it failed, if it did.
struct LocalTest {
  SquareClass d;
  QuarticForm quartic;
  bool everywhere_locally_soluble = false;
  std::string failing_place;  // "R", "2", "17", ... when not soluble
};

std::vector<LocalTest> local_tests(const Curve& E);

/// Classes of Q(S,2) whose homogeneous space is everywhere locally soluble.
SelmerSet selmer(const Curve& E);

/// A point of C_d: affine (z, w) or the point at infinity.
struct HomPoint {
  bool at_infinity = false;
  Rat z;
  Rat w;
};

/// Height-ordered enumeration of z = m/n, gcd(m, n) = 1, |m|, n <= H, accepting
/// when n^4 f(m/n) is a perfect square. Falls back to the point at infinity
/// when d (a^2 - 4b) is a square and no affine point was found.
std::optional<HomPoint> search_point(const Curve& E, const SquareClass& d, const Int& H);

/// First (m, n) in the same enumeration with n^4 f(m/n) a square.
std::optional<std::pair<Int, Int>> search_quartic(const QuarticForm& f, const Int& H);

/// (z, w) -> (d/z^2, -d w/z^3) on E'. Throws DomainError("torsion image ...")
/// for z = 0 or the point at infinity, which map to O / (0, 0).
Point lift_point(const IsogenyPair& pair, const SquareClass& d, const HomPoint& pt);

enum class ClassStatus { global_point, locally_soluble_no_point, not_locally_soluble };

struct ClassRecord {
  SquareClass d;
  QuarticForm quartic;
  ClassStatus status;
  std::string detail;
};

struct DescentReport {
  Curve curve;
  Curve isogenous;
  SelmerSet selmer_phi;
  SelmerSet selmer_phi_hat;
  SelmerSet image_phi;
  SelmerSet image_phi_hat;
  int rank_lower = 0;
  int rank_upper = 0;
  unsigned sha_phi_dim_upper = 0;
  unsigned sha_phi_hat_dim_upper = 0;
  TorsionGroup torsion;
  std::vector<Point> generators;  // on `curve`, infinite order
  Int search_height;
  bool parity_flag = false;
  std::string parity_note;
  std::vector<ClassRecord> phi_classes;
  std::vector<ClassRecord> phi_hat_classes;

  bool rank_exact() const { return rank_lower == rank_upper; }
};

DescentReport descent_report(const Curve& E, const Int& H);

}  // namespace twodescent

#endif  // TWODESCENT_DESCENT_HPP
